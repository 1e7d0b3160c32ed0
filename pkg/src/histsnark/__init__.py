"""Snarks from 1,3-trees: construction, verification, enumeration."""

from histsnark.canon import (
    CanonicalForm,
    are_isomorphic,
    automorphism_count,
    canonical_form,
)
from histsnark.catalog import CATALOG, CatalogEntry, check_all, check_entry, get_entry
from histsnark.codec import (
    OuterCycleSpec,
    build_graph,
    canonical_cycles,
    check_rotation_property,
    emit_outer_cycles,
    export_graph6,
    graph_record,
    import_graph6,
    parse_outer_cycles,
    spec_from_graph,
)
from histsnark.coloring import (
    EdgeColoring,
    TreeCompletionColorer,
    color_tree_end_edge_counts,
    is_three_edge_colorable,
    tree_colorings,
)
from histsnark.graph import (
    CubicGraph,
    EdgeCut,
    cyclic_edge_connectivity,
    girth,
    is_connected,
    is_cyclically_k_connected,
)
from histsnark.search import (
    EnumerationReport,
    TwoFactorSearchSpace,
    check_girth6_colorability,
    classify_by_oc,
    enumerate_rotation_t4,
    enumerate_two_factors,
)
from histsnark.svg import render_svg
from histsnark.trees import (
    HistSearchResult,
    HistWitness,
    TiTree,
    build_ti,
    find_hists,
    find_ti_hists,
    is_ti_hist,
    oc_of_hist,
)

__all__ = [
    "CATALOG",
    "CanonicalForm",
    "CatalogEntry",
    "CubicGraph",
    "EdgeColoring",
    "EdgeCut",
    "EnumerationReport",
    "HistSearchResult",
    "HistWitness",
    "OuterCycleSpec",
    "TiTree",
    "TreeCompletionColorer",
    "TwoFactorSearchSpace",
    "are_isomorphic",
    "automorphism_count",
    "build_graph",
    "build_ti",
    "canonical_cycles",
    "canonical_form",
    "check_all",
    "check_entry",
    "check_girth6_colorability",
    "check_rotation_property",
    "classify_by_oc",
    "color_tree_end_edge_counts",
    "cyclic_edge_connectivity",
    "emit_outer_cycles",
    "enumerate_rotation_t4",
    "enumerate_two_factors",
    "export_graph6",
    "find_hists",
    "find_ti_hists",
    "get_entry",
    "girth",
    "graph_record",
    "import_graph6",
    "is_connected",
    "is_cyclically_k_connected",
    "is_three_edge_colorable",
    "is_ti_hist",
    "oc_of_hist",
    "parse_outer_cycles",
    "render_svg",
    "spec_from_graph",
    "tree_colorings",
]
