"""CLI behavior: output documents, file side effects, exit codes."""

import json
import subprocess
import sys

import pytest

from spaving import __version__
from spaving.census import census_read
from spaving.cli import main
from spaving.constructions import vamos
from spaving.matroids import from_json, sp_new, to_json


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def run_json(capsys, *argv):
    rc, out, err = run(capsys, *argv)
    return rc, json.loads(out), err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exit_info:
        main(["--version"])
    assert exit_info.value.code == 0
    out = capsys.readouterr().out
    assert f"spaving {__version__}" in out
    assert "census file format 1" in out


def test_banner_lists_effective_config(capsys):
    _, _, err = run(capsys, "check", "--named", "vamos")
    line = err.splitlines()[0]
    assert line.startswith(f"# spaving {__version__} check ")
    assert "named=vamos" in line and "seed=0" in line and "jobs=1" in line


def test_check_vamos(capsys):
    rc, doc, _ = run_json(capsys, "check", "--named", "vamos")
    assert rc == 0
    assert doc["sparse_paving"] and doc["checker"] == "fast"
    assert doc["ingleton"] is False
    assert doc["witness"]["K"] == "0"
    assert doc["quadruple"]["lhs"] == 15 and doc["quadruple"]["rhs"] == 16
    assert doc["minor"]["n"] == 8


def test_check_brute_cross(capsys):
    rc, doc, _ = run_json(capsys, "check", "--named", "vamos", "--brute")
    assert rc == 0
    assert doc["brute_ingleton"] is False
    assert doc["checkers_agree"] is True
    assert "cross_quadruple" in doc


def test_check_gs_class(capsys):
    rc, doc, _ = run_json(capsys, "check", "--gs", "8,4,0", "--brute")
    assert rc == 0
    assert doc["ingleton"] is True and doc["checkers_agree"] is True


def test_check_matroid_file(capsys, tmp_path):
    path = tmp_path / "v8.json"
    path.write_text(to_json(vamos()))
    rc, doc, _ = run_json(capsys, "check", "--matroid", str(path))
    assert rc == 0
    assert doc["source"] == str(path)
    assert doc["ingleton"] is False


def test_check_scale_refusal_and_sampled_fallback(capsys):
    rc, _, err = run(capsys, "check", "--named", "uniform:4,9", "--brute")
    assert rc == 3
    assert "--sampled" in err
    rc, doc, _ = run_json(
        capsys, "check", "--named", "uniform:4,9", "--brute", "--sampled", "200"
    )
    assert rc == 0
    assert doc["sampled_ingleton"] is True and doc["checkers_agree"] is True


def test_check_unknown_name(capsys):
    rc, _, err = run(capsys, "check", "--named", "vamox")
    assert rc == 2
    assert "unknown matroid name" in err


def test_check_rejects_csv(capsys):
    rc, _, err = run(capsys, "check", "--named", "vamos", "--format", "csv")
    assert rc == 2
    assert "flat statistics" in err


def test_witness_command(capsys):
    rc, doc, _ = run_json(capsys, "witness", "--named", "vamos", "--minor")
    assert rc == 0
    assert doc["count"] == 1
    entry = doc["witnesses"][0]
    assert entry["witness"]["P"] == ["3", "c", "30", "c0"]
    assert entry["quadruple"]["lhs"] == 15
    assert doc["minor"]["n"] == 8 and len(doc["minor"]["bases"]) == 65


def test_census_small(capsys):
    rc, doc, _ = run_json(capsys, "census", "--n", "7", "--r", "3", "--classify")
    assert rc == 0
    assert doc["classes"] == 14
    assert doc["ingleton_classes"] == 14 and doc["non_ingleton_classes"] == 0
    assert doc["census_format_version"] == 1


def test_census_out_holds_records(capsys, tmp_path):
    path = tmp_path / "c63.jsonl"
    rc, doc, _ = run_json(capsys, "census", "--n", "6", "--r", "3", "--out", str(path))
    assert rc == 0
    assert doc["out"] == str(path)  # summary stays on stdout
    records = census_read(str(path))
    assert len(records) == doc["classes"]


def test_census_runs_are_byte_identical(capsys):
    _, first, _ = run(capsys, "census", "--n", "6", "--r", "3", "--classify")
    _, second, _ = run(capsys, "census", "--n", "6", "--r", "3", "--classify")
    assert first == second


def test_census_minor_check_needs_84(capsys):
    rc, _, err = run(capsys, "census", "--n", "7", "--r", "3", "--verify-excluded-minors")
    assert rc == 2
    assert "n=8, r=4" in err


def test_construct_named(capsys):
    rc, doc, _ = run_json(capsys, "construct", "--named", "vamos")
    assert rc == 0
    assert doc["n"] == 8 and doc["r"] == 4 and len(doc["ch"]) == 5
    assert from_json(json.dumps(doc)) == vamos()


def test_construct_gs_best(capsys):
    rc, doc, _ = run_json(capsys, "construct", "--gs-best", "8,4")
    assert rc == 0
    assert 0 <= doc["gamma"] < 8
    assert len(doc["class_sizes"]) == 8 and sum(doc["class_sizes"]) == 70
    assert len(doc["ch"]) == max(doc["class_sizes"])


def test_construct_gs_single_class(capsys):
    rc, doc, _ = run_json(capsys, "construct", "--gs", "6,3,0")
    assert rc == 0
    assert doc["gamma"] == 0 and len(doc["ch"]) == 4


def test_sample_json(capsys):
    rc, doc, _ = run_json(
        capsys, "sample", "--n", "8", "--r", "4", "--trials", "5", "--seed", "1"
    )
    assert rc == 0
    assert doc["k"] == 4 and doc["trials"] == 5
    assert doc["all_good"] and doc["pruning_bound_ok"]


def test_sample_csv(capsys):
    rc, out, _ = run(
        capsys,
        "sample", "--n", "8", "--r", "4", "--trials", "5", "--format", "csv",
    )
    assert rc == 0
    header, row = out.splitlines()
    assert "mean_edges" in header.split(",")
    assert len(header.split(",")) == len(row.split(","))


def test_sample_out_file(capsys, tmp_path):
    path = tmp_path / "summary.json"
    rc, out, _ = run(
        capsys,
        "sample", "--n", "8", "--r", "4", "--trials", "3", "--out", str(path),
    )
    assert rc == 0
    assert out == ""
    doc = json.loads(path.read_text())
    assert doc["trials"] == 3


def test_sample_emit_matroids(capsys, tmp_path):
    outdir = tmp_path / "matroids"
    rc, _, _ = run(
        capsys,
        "sample", "--n", "8", "--r", "4", "--trials", "3",
        "--emit-matroids", str(outdir),
    )
    assert rc == 0
    files = sorted(outdir.iterdir())
    assert [f.name for f in files] == ["sample-0.json", "sample-1.json", "sample-2.json"]
    for f in files:
        m = from_json(f.read_text())
        assert (m.n, m.r) == (8, 4)


def test_represent_verified(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(to_json(sp_new(6, 3, [0b000111])))
    rc, doc, _ = run_json(capsys, "represent", "--matroid", str(path))
    assert rc == 0
    assert doc["hall"] and doc["verified"] and doc["attempts"] == 1
    matrix = doc["matrix"]
    assert len(matrix) == 3 and all(len(row) == 6 for row in matrix)
    assert matrix[0][:3] == [0, 0, 0]
    assert all(matrix[0][j] != 0 for j in range(3, 6))


def test_represent_uniform(capsys):
    rc, doc, _ = run_json(capsys, "represent", "--named", "uniform:3,6")
    assert rc == 0
    assert doc["verified"] is True


def test_represent_hall_failure(capsys):
    rc, doc, _ = run_json(capsys, "represent", "--named", "vamos")
    assert rc == 1
    assert doc["hall"] is False and doc["verified"] is False


def test_usage_errors_exit_2():
    for argv in [[], ["frobnicate"], ["check"]]:
        with pytest.raises(SystemExit) as exit_info:
            main(argv)
        assert exit_info.value.code == 2


def test_console_script_version():
    proc = subprocess.run(
        [sys.executable, "-m", "spaving.cli", "--version"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert f"spaving {__version__}" in proc.stdout
