"""Tests for the bundled reference catalog."""

import pytest

from histsnark.canon import are_isomorphic, automorphism_count
from histsnark.catalog import (
    AUX_L3_ISOMORPH,
    CATALOG,
    check_all,
    check_entry,
    get_entry,
)
from histsnark.codec import build_graph, parse_outer_cycles
from histsnark.trees import find_ti_hists


def test_catalog_has_twenty_unique_entries():
    assert len(CATALOG) == 20
    names = [e.name for e in CATALOG]
    assert len(set(names)) == 20


def test_expected_oc_multisets():
    by_name = {e.name: e for e in CATALOG}
    assert by_name["H0(24)"].expected_oc == (24,)
    assert by_name["H(12,12)"].expected_oc == (12, 12)
    assert by_name["H(18,6)"].expected_oc == (18, 6)
    assert by_name["H3(8,8,8)"].expected_oc == (8, 8, 8)
    assert by_name["H1(6,6,6,6)"].expected_oc == (6, 6, 6, 6)
    assert by_name["Loupekine1"].expected_oc == (6, 6)
    assert by_name["Loupekine2"].expected_oc == (12,)
    assert by_name["L_3"].expected_oc == (12,)
    assert by_name["Petersen"].expected_oc == (6,)
    assert by_name["Y"].expected_oc == (6, 6, 6, 6)


def test_rotation_flags_and_figures():
    rotation_false = {e.name for e in CATALOG if not e.expected_rotation}
    assert rotation_false == {"L_3", "Y"}
    by_name = {e.name: e for e in CATALOG}
    assert by_name["Petersen"].figure == 1
    assert by_name["Loupekine1"].figure == by_name["Loupekine2"].figure == 2
    assert by_name["H(12,12)"].figure == 6
    assert by_name["H2(6,6,6,6)"].figure == 17
    assert by_name["L_3"].figure is None
    assert by_name["Y"].figure is None


def test_renamed_entries_keep_source_names():
    renamed = [e for e in CATALOG if e.name != e.source_name]
    four_cycle_entries = [e for e in renamed if "(6,6,6,6)" in e.name]
    assert {e.source_name for e in four_cycle_entries} == {
        "H0(6,6,6)",
        "H1(6,6,6)",
        "H2(6,6,6)",
    }
    for e in four_cycle_entries:
        assert len(e.spec.cycles) == 4
        assert "four 6-cycles" in e.note


def test_get_entry_by_either_name():
    assert get_entry("H0(6,6,6,6)") is get_entry("H0(6,6,6)")
    assert get_entry("Petersen").name == "Petersen"
    assert get_entry("Petersen graph").name == "Petersen"
    with pytest.raises(KeyError):
        get_entry("H9(24)")


def test_check_all_passes():
    report = check_all()
    assert report["total"] == 20
    assert report["passed"]
    assert report["l3_isomorph_confirmed"]
    for r in report["entries"]:
        assert r["passed"], r["name"]
        assert r["girth"] >= 5


def test_check_entry_reports_mismatch():
    from dataclasses import replace

    entry = replace(get_entry("Petersen"), expected_oc=(3, 3))
    result = check_entry(entry)
    assert not result["passed"]
    assert not result["checks"]["oc_matches"]
    assert result["checks"]["girth_at_least_5"]


def test_y_has_128_automorphisms():
    y = get_entry("Y").build()
    assert automorphism_count(y) == 128


def test_petersen_entry_matches_standard_petersen():
    from tests.corpus import petersen

    assert are_isomorphic(get_entry("Petersen").build(), petersen())


def test_l3_has_hists_with_both_oc_multisets():
    l3 = get_entry("L_3").build()
    ocs = sorted(set(w.oc for w in find_ti_hists(l3, 3)))
    assert ocs == [(6, 6), (12,)]
    aux = build_graph(3, parse_outer_cycles(AUX_L3_ISOMORPH))
    assert are_isomorphic(l3, aux)


def test_entry_lines_parse_back():
    for entry in CATALOG:
        spec = parse_outer_cycles(entry.line)
        assert spec.name == entry.name
        assert spec.cycles == entry.spec.cycles
