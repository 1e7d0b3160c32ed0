"""Tests for outer-cycle parsing, graph assembly and graph6 export."""

import networkx as nx
import pytest

from histsnark.canon import are_isomorphic
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
)
from tests.corpus import named_small, random_cubic

PETERSEN_LINE = "Petersen graph = [0,3,4,1,2,5]"


def test_parse_name_variants():
    spec = parse_outer_cycles(PETERSEN_LINE)
    assert spec.name == "Petersen graph"
    assert spec.cycles == ((0, 3, 4, 1, 2, 5),)
    spec = parse_outer_cycles("H(12,12):=[0,1,2,3,4,5][6,7,8,9,10,11]")
    assert spec.name == "H(12,12)"
    assert len(spec.cycles) == 2
    spec = parse_outer_cycles("  [0,2,4] [1,3,5]  ")
    assert spec.name is None


def test_parse_tolerates_spacing():
    a = parse_outer_cycles("[0,8,7 ][ 3,2,5, 1, 4,6]")
    b = parse_outer_cycles("[0,8,7][3,2,5,1,4,6]")
    assert a.cycles == b.cycles


def test_parse_errors_carry_positions():
    with pytest.raises(ValueError, match="duplicate label 0 at position 9"):
        parse_outer_cycles("[0,1,2] [0,3,4]")
    with pytest.raises(ValueError, match="out of range"):
        parse_outer_cycles("[0,1,2][3,4,9]")
    with pytest.raises(ValueError, match="length 2"):
        parse_outer_cycles("[0,1]")
    with pytest.raises(ValueError, match="no bracket group"):
        parse_outer_cycles("just words")
    with pytest.raises(ValueError, match="expected ':=' or '='"):
        parse_outer_cycles("name [0,1,2]")
    with pytest.raises(ValueError, match="unclosed"):
        parse_outer_cycles("[0,1,2")
    with pytest.raises(ValueError, match="unexpected"):
        parse_outer_cycles("[0,1,2] x [3,4,5]")
    with pytest.raises(ValueError, match="expected a label at position 3"):
        parse_outer_cycles("[0,a,2]")


def test_depth_inference():
    assert parse_outer_cycles("[0,1,2]").depth == 1
    assert parse_outer_cycles("[0,3,4,1,2,5]").depth == 2
    assert parse_outer_cycles("[0,1,2,3,4,5,6,7,8,9,10,11]").depth == 3
    twenty_four = "[" + ",".join(str(k) for k in range(24)) + "]"
    assert parse_outer_cycles(twenty_four).depth == 4
    nine = "[" + ",".join(str(k) for k in range(9)) + "]"
    assert parse_outer_cycles(nine).depth is None


def test_build_graph_petersen():
    spec = parse_outer_cycles(PETERSEN_LINE)
    g = build_graph(2, spec)
    assert g.n == 10
    assert are_isomorphic(g, dict(named_small())["petersen"])


def test_build_graph_leaf_count_mismatch():
    spec = parse_outer_cycles("[" + ",".join(str(k) for k in range(24)) + "]")
    with pytest.raises(ValueError, match="12 leaves"):
        build_graph(3, spec)


def test_rotation_property():
    assert check_rotation_property(parse_outer_cycles(PETERSEN_LINE))
    y = parse_outer_cycles(
        "[0,4,8,1,5,10][2,6,12,3,7,14][9,16,20,11,17,21][13,18,22,15,19,23]"
    )
    assert not check_rotation_property(y)
    h2 = parse_outer_cycles(
        "[0,21,22,19,20,23,17,10][8,5,6,3,4,7,1,18][16,13,14,11,12,15,9,2]"
    )
    assert check_rotation_property(h2)
    with pytest.raises(ValueError, match="divisible by 3"):
        check_rotation_property(OuterCycleSpec(cycles=((0, 1, 2, 3),)))


def test_emit_canonical_form():
    spec = parse_outer_cycles("X:=[5,0,2][4,1,3]")
    # each cycle starts at its minimum, second label is the smaller
    # neighbour, cycles ordered by first label
    assert emit_outer_cycles(spec) == "X:=[0,2,5][1,3,4]"
    assert canonical_cycles(spec) == ((0, 2, 5), (1, 3, 4))
    bare = parse_outer_cycles("[0,3,4,1,2,5]")
    assert emit_outer_cycles(bare) == "[0,3,4,1,2,5]"
    reversed_cycle = parse_outer_cycles("[0,5,2,1,4,3]")
    assert emit_outer_cycles(reversed_cycle) == "[0,3,4,1,2,5]"


def test_parse_emit_parse_identity():
    lines = [
        PETERSEN_LINE,
        "H(18,6):=[0,18,17,22,20,19,16,10,9,14,12,11,8,2,1,6,4,3 ][13,23,5,15,21,7]",
        "[0,9,10,7,4,1,2,11,8,5,6,3]",
    ]
    for line in lines:
        first = parse_outer_cycles(line)
        second = parse_outer_cycles(emit_outer_cycles(first))
        assert canonical_cycles(first) == canonical_cycles(second)
        assert first.name == second.name
        assert emit_outer_cycles(first) == emit_outer_cycles(second)


def test_graph_record_fields():
    record = graph_record(parse_outer_cycles(PETERSEN_LINE), "catalog")
    assert record["n"] == 10
    assert record["depth"] == 2
    assert record["name"] == "Petersen graph"
    assert record["provenance"] == "catalog"
    assert len(record["edges"]) == 15
    assert record["cycles"] == [[0, 3, 4, 1, 2, 5]]
    nine = parse_outer_cycles("[" + ",".join(str(k) for k in range(9)) + "]")
    with pytest.raises(ValueError, match="fits no tree depth"):
        graph_record(nine, "catalog")


def test_graph6_against_networkx():
    for name, g in named_small().items():
        if name == "two_k4s":
            continue
        mine = export_graph6(g)
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges)
        theirs = nx.to_graph6_bytes(h, header=False).decode().strip()
        assert mine == theirs, name


def test_graph6_round_trip():
    for seed in (1, 7, 42):
        g = random_cubic(16, seed)
        back = import_graph6(export_graph6(g))
        assert back.n == g.n
        assert back.edges == g.edges


def test_graph6_limits_and_errors():
    g62 = random_cubic(62, 5)
    assert import_graph6(export_graph6(g62)).edges == g62.edges
    with pytest.raises(ValueError, match="n <= 62"):
        export_graph6(random_cubic(64, 5))
    with pytest.raises(ValueError):
        import_graph6("")
    with pytest.raises(ValueError, match="truncated"):
        import_graph6(export_graph6(random_cubic(16, 1))[:-1])
