"""Tests for the command line front end."""

import json

import pytest

from histsnark.cli import main
from histsnark.codec import export_graph6
from tests.corpus import k33


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, (json.loads(out) if out else None)


def canonical_json(text: str) -> str:
    data = json.loads(text)
    data.pop("meta", None)
    return json.dumps(data, sort_keys=True)


def test_verify_catalog_entry(capsys):
    code, data = run_json(capsys, "verify", "--catalog", "Petersen")
    assert code == 0
    (item,) = data["graphs"]
    assert item["is_snark"]
    assert item["n"] == 10
    assert item["oc"] == [6]
    assert item["rotation"]
    assert item["aut_order"] == 120
    assert item["ti_hist_ocs"] == [[6]]
    assert "meta" in data


def test_verify_file_mixes_line_formats(capsys, tmp_path):
    path = tmp_path / "graphs.txt"
    path.write_text(
        "# two formats\n"
        "P = [0, 3, 4, 1, 2, 5]\n"
        + export_graph6(k33()) + "\n"
    )
    code, data = run_json(capsys, "verify", str(path))
    assert code == 0
    first, second = data["graphs"]
    assert first["name"] == "P"
    assert first["is_snark"]
    assert first["line"].startswith("P")
    assert second["n"] == 6
    assert not second["is_snark"]
    assert second["three_edge_colorable"]
    assert "recovered_line" not in second


def test_verify_without_input_is_usage_error(capsys):
    code, _ = run(capsys, "verify")
    assert code == 2


def test_verify_unknown_entry_is_usage_error(capsys):
    code, _ = run(capsys, "verify", "--catalog", "H9(24)")
    assert code == 2


def test_enumerate_depth2_snarks(capsys, monkeypatch):
    monkeypatch.setenv("HISTSNARK_JOBS", "1")
    code, data = run_json(capsys, "enumerate", "--depth", "2")
    assert code == 0
    assert data["labeled_total"] == 4
    assert data["class_total"] == 1
    assert data["classes"][0]["oc"] == [6]
    assert data["complete"]
    assert data["space"]["snark_filter"]


def test_enumerate_reports_are_stable_across_runs(capsys, monkeypatch):
    monkeypatch.setenv("HISTSNARK_JOBS", "1")
    _, first = run(capsys, "enumerate", "--depth", "2", "--rotation")
    _, second = run(capsys, "enumerate", "--depth", "2", "--rotation")
    assert first != second
    assert canonical_json(first) == canonical_json(second)


def test_enumerate_target_oc_without_filter(capsys, monkeypatch):
    monkeypatch.setenv("HISTSNARK_JOBS", "1")
    code, data = run_json(
        capsys, "enumerate", "--depth", "2", "--girth-min", "3",
        "--oc", "3,3", "--no-snark-filter",
    )
    assert code == 0
    assert data["labeled_total"] == 10


def test_enumerate_long_run_needs_force(capsys, monkeypatch):
    monkeypatch.setenv("HISTSNARK_JOBS", "1")
    code, _ = run(capsys, "enumerate", "--depth", "4")
    assert code == 4


def test_enumerate_sampling_argument_checks(capsys, monkeypatch):
    monkeypatch.setenv("HISTSNARK_JOBS", "1")
    code, _ = run(capsys, "enumerate", "--depth", "4", "--sample", "3")
    assert code == 2
    code, _ = run(
        capsys, "enumerate", "--depth", "4", "--sample", "3", "--seed", "7"
    )
    assert code == 2
    code, data = run_json(
        capsys, "enumerate", "--depth", "4", "--girth-min", "6",
        "--sample", "3", "--seed", "7",
    )
    assert code == 0
    assert data["counterexamples"] == []
    assert data["candidates_girth6"] == 3


def test_enumerate_bad_oc_is_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("HISTSNARK_JOBS", "1")
    code, _ = run(capsys, "enumerate", "--depth", "2", "--oc", "3,x")
    assert code == 2


def test_bad_jobs_env_is_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("HISTSNARK_JOBS", "six")
    code, _ = run(capsys, "enumerate", "--depth", "2")
    assert code == 2


def test_catalog_list(capsys):
    code, data = run_json(capsys, "catalog", "list")
    assert code == 0
    entries = data["entries"]
    assert len(entries) == 20
    sizes = {e["n"] for e in entries}
    assert sizes == {10, 22, 46}
    names = [e["name"] for e in entries]
    assert "Petersen" in names and "Y" in names


def test_config_file(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("HISTSNARK_JOBS", "1")
    path = tmp_path / "conf"
    path.write_text("node_budget = 40  # tiny\n")
    code, data = run_json(
        capsys, "--config", str(path), "enumerate", "--depth", "3",
        "--rotation",
    )
    assert code == 0
    assert not data["complete"]

    path.write_text("walltime = 3\n")
    code, _ = run(capsys, "--config", str(path), "enumerate", "--depth", "2")
    assert code == 2
    path.write_text("node_budget isnt a pair\n")
    code, _ = run(capsys, "--config", str(path), "enumerate", "--depth", "2")
    assert code == 2


def test_draw_catalog_to_file(capsys, tmp_path):
    out = tmp_path / "p.svg"
    code, _ = run(capsys, "draw", "--catalog", "Petersen", "--out", str(out))
    assert code == 0
    text = out.read_text()
    assert text.startswith("<svg ")
    assert text.endswith("</svg>\n")


def test_draw_stdout_and_missing_input(capsys):
    code, out = run(capsys, "draw", "--catalog", "Petersen")
    assert code == 0
    assert out.startswith("<svg ")
    code, _ = run(capsys, "draw")
    assert code == 2


def test_draw_graph_without_tree_hist_is_precondition_error(capsys, tmp_path):
    path = tmp_path / "g.g6"
    path.write_text(export_graph6(k33()) + "\n")
    code, _ = run(capsys, "draw", str(path))
    assert code == 4


def test_emitted_json_is_key_sorted(capsys, monkeypatch):
    monkeypatch.setenv("HISTSNARK_JOBS", "1")
    _, out = run(capsys, "enumerate", "--depth", "2")
    data = json.loads(out)
    assert out == json.dumps(data, sort_keys=True, indent=2) + "\n"
