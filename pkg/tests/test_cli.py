from __future__ import annotations

import io
import json
from pathlib import Path

import pytest

from bei.cli import main

ROOT = Path(__file__).resolve().parent.parent
GRAPHS = ROOT / "data" / "graphs"
GOLDEN = Path(__file__).resolve().parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, golden, code",
    [
        (["classify", GRAPHS / "t5_g1.json"], "classify_t5_g1.json", 0),
        (["dseq", GRAPHS / "h4_g2.json"], "dseq_h4_g2.json", 0),
        (["dseq", GRAPHS / "spider_two_centers.json"], "dseq_two_centers.json", 1),
        (["reg", GRAPHS / "h3.json"], "reg_h3.json", 0),
        (["reg", GRAPHS / "k13.json", "--power", "2"], "reg_k13_sq.json", 0),
        (["product", "--paths", "2@1,1", "--m", "3"], "product_2at1_1_m3.json", 0),
    ],
)
def test_json_goldens(capsys, argv, golden, code):
    rc, out, _ = run(capsys, *argv)
    assert rc == code
    assert json.loads(out) == json.loads((GOLDEN / golden).read_text())


def test_table_golden(capsys):
    rc, out, _ = run(capsys, "reg", GRAPHS / "h3.json", "--format", "table")
    assert rc == 0
    assert out == (GOLDEN / "reg_h3.txt").read_text()


def test_parse_errors_exit_2(capsys, tmp_path, monkeypatch):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3, "edges": [[1, 2], [2, 1]]}')
    rc, _, err = run(capsys, "classify", bad)
    assert rc == 2 and "duplicate edge [2, 1]" in err
    rc, _, err = run(capsys, "classify", tmp_path / "missing.json")
    assert rc == 2
    monkeypatch.setattr("sys.stdin", io.StringIO('{"n": 2, "edges": [[1, 2]]}'))
    rc, out, _ = run(capsys, "classify", "-")
    assert rc == 0 and json.loads(out)["variant"] == "P2"
    rc, _, _ = run(capsys, "dseq", GRAPHS / "p4.json", "--order", "explicit", "--edges", "1-2,2+3")
    assert rc == 2


def test_precondition_errors_exit_3(capsys):
    rc, out, _ = run(capsys, "reg", GRAPHS / "c32.json", "--power", "2")
    assert rc == 3 and json.loads(out)["error"] == "NoRuleApplies"
    rc, _, _ = run(capsys, "dseq", GRAPHS / "h4_g2.json", "--order", "explicit", "--edges", "1-2,1-3")
    assert rc == 3
    rc, _, _ = run(capsys, "dseq", GRAPHS / "spider_two_centers.json", "--order", "canonical")
    assert rc == 3
    rc, _, _ = run(capsys, "product", "--paths", "1@1,1@1", "--m", "3")
    assert rc == 3
    rc, _, _ = run(capsys, "sweep", "--max-n", "40")
    assert rc == 3


def test_partial_tables_are_inconclusive(capsys):
    rc, out, _ = run(capsys, "reg", GRAPHS / "p4.json", "--imax", "2", "--jmax", "4")
    data = json.loads(out)
    assert rc == 4 and not data["certified"] and data["matches"] is None


def test_budget_exhaustion_exit_4(capsys):
    rc, out, _ = run(capsys, "dseq", GRAPHS / "spider_two_centers.json", "--budget", "3")
    assert rc == 4 and json.loads(out)["exhaustive"] is False


def test_dseq_orders(capsys):
    rc, out, _ = run(capsys, "dseq", GRAPHS / "h4_g2.json", "--order", "canonical")
    assert rc == 0 and json.loads(out)["ordering"][-1] == [1, 5]
    rc, out, _ = run(capsys, "dseq", GRAPHS / "p4.json", "--order", "explicit", "--edges", "3-4,1-2,2-3")
    assert rc == 0 and json.loads(out)["holds"]


def test_predict_only_and_compute(capsys):
    rc, out, _ = run(capsys, "reg", GRAPHS / "k13.json", "--power", "3", "--predict-only")
    assert rc == 0 and json.loads(out) == {"value": 6, "rule": "StarPower"}
    rc, out, _ = run(capsys, "reg", GRAPHS / "c32.json", "--compute")
    assert rc == 0 and json.loads(out)["reg"] == 2


def test_rational_field_flag(capsys):
    rc, out, _ = run(capsys, "reg", GRAPHS / "p4.json", "--field", "q")
    assert rc == 0 and json.loads(out)["field"] == "Q"


@pytest.mark.parametrize("mode, n", [("dseq", 6), ("reg", 5), ("colon", 5)])
def test_sweeps(capsys, tmp_path, mode, n):
    out_file = tmp_path / "sweep.jsonl"
    rc, _, err = run(capsys, "sweep", "--max-n", n, "--mode", mode, "--out", out_file)
    assert rc == 0
    records = [json.loads(line) for line in out_file.read_text().splitlines()]
    assert records and all(r["status"] == "ok" for r in records)
    summary = json.loads(err.strip().splitlines()[-1])["summary"]
    assert summary["mismatch"] == 0 and summary["ok"] == len(records)


def test_sampled_sweep_is_seeded(capsys):
    a = run(capsys, "sweep", "--max-n", "7", "--sample", "4", "--seed", "3")[1]
    b = run(capsys, "sweep", "--max-n", "7", "--sample", "4", "--seed", "3")[1]
    assert a == b and len(a.splitlines()) == 4


def test_parallel_sweep_matches_serial(capsys):
    serial = run(capsys, "sweep", "--max-n", "6")[1]
    parallel = run(capsys, "sweep", "--max-n", "6", "--workers", "2")[1]
    assert serial == parallel
