import io
import json
import subprocess
import sys
import time
from pathlib import Path

import pytest

from starpir import cli
from starpir.report import Report, parse_report, report_emit

GOLDEN = Path(__file__).parent / "golden"

TOY = {
    "storage": {"family": "repetition", "params": {"q": 2, "n": 3}},
    "retrieval": {"family": "cyclic", "params": {"q": 2, "n": 3, "g": [1, 1]}},
    "files": {"m": 2},
    "adversary": {"t": 2},
}
RM = {
    "storage": {"family": "rm", "params": {"m": 7, "r": 0}},
    "retrieval": {"family": "rm", "params": {"m": 7, "r": 3}},
}


def run(argv, cfg=None, tmp_path=None):
    if cfg is not None:
        p = tmp_path / "cfg.json"
        p.write_text(json.dumps(cfg))
        argv = argv + ["--config", str(p)]
    out = io.BytesIO()
    code = cli.run(argv, out=out)
    return code, out.getvalue()


def test_rates_rm_row(tmp_path):
    code, out = run(["rates"], RM, tmp_path)
    row = json.loads(out)["rows"][0]
    assert code == 0 and row["t"] == 15 and row["rate"] == "64/128"
    assert row["d_perp_D"]["lo_source"].startswith("family-formula")


def test_length128_golden(tmp_path):
    code, out = run(["rates", "--length128"])
    assert code == 0
    assert out == (GOLDEN / "length128.json").read_bytes()


def test_simulate_toy_seed7(tmp_path):
    code, out = run(["simulate", "--seed", "7"], TOY, tmp_path)
    doc = json.loads(out)
    assert code == 0 and all(r["correct"] for r in doc["rows"])
    assert doc["meta"]["privacy"]["passed"]


def test_same_config_same_bytes(tmp_path):
    a = run(["simulate", "--seed", "3", "--output", "csv"], TOY, tmp_path)
    b = run(["simulate", "--seed", "3", "--output", "csv"], TOY, tmp_path)
    assert a == b


def test_audit_exit_codes(tmp_path):
    cfg = {
        "storage": {"family": "repetition", "params": {"q": 2, "n": 6}},
        "retrieval": {"family": "repetition", "params": {"q": 2, "n": 6}},
    }
    assert run(["audit-bound"], cfg, tmp_path)[0] == 0
    cfg["overrides"] = {"d_perp_D": {"lo": 3, "hi": 3}}
    code, out = run(["audit-bound"], cfg, tmp_path)
    assert code == 1 and json.loads(out)["rows"][0]["case2_status"] == "violated"


@pytest.mark.parametrize(
    "cfg,loc",
    [
        ({"storage": {"family": "rm", "params": {"m": 3}}, "retrieval": {"family": "rm", "params": {"m": 3, "r": 1}}},
         "storage.params.r"),
        ({"storage": {"family": "rm", "params": {"m": 3, "r": 0}}}, "retrieval"),
        ({**TOY, "files": {"m": -1}}, "files.m"),
        ({**TOY, "adversary": {"b_byz": "x"}}, "adversary.b_byz"),
        ({**TOY, "output": "xml"}, "output"),
    ],
)
def test_config_errors_exit_2(cfg, loc, tmp_path, capsys):
    code, _ = run(["simulate"], cfg, tmp_path)
    assert code == 2
    assert loc in capsys.readouterr().err


def test_bad_json_reports_location(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{\n  \"storage\": ,\n}")
    assert cli.run(["rates", "--config", str(p)], out=io.BytesIO()) == 2
    assert "--config:2:" in capsys.readouterr().err


def test_bch_table_and_ag_params(tmp_path):
    code, out = run(["bch-table", "--q", "2", "--m", "4", "--output", "csv"])
    lines = out.decode().splitlines()
    assert code == 0 and lines[0].startswith("table,q,m,param")
    assert lines[1].split(",")[5] == "7"  # k_2(4)
    code, out = run(["bch-table"], {"bch": {"q": 2, "m": 4, "params": [], "delta": [3]}}, tmp_path)
    row = json.loads(out)["rows"][-1]
    assert row["t"] == 3 and row["rate"] == "8/17"
    code, out = run(["ag-params", "--n", "8", "--g", "1", "--degG1", "1", "--degG2", "3"])
    row = json.loads(out)["rows"][0]
    assert row["R_retrieval_basic"] == "3/8" and row["R_retrieval_simplified"] == "1/2"
    assert run(["ag-params", "--n", "8", "--g", "1", "--degG1", "5", "--degG2", "5"])[0] == 2


def test_families_list():
    code, out = run(["families", "list", "--output", "csv"])
    names = [l.split(",")[0] for l in out.decode().splitlines()[1:]]
    assert code == 0 and {"grs", "rm", "cyclic", "bch", "elliptic"} <= set(names)


def test_report_emit_contract():
    assert report_emit(Report("x", columns=["a", "b"]), "csv") == b"a,b\n"
    assert report_emit(Report("x"), "csv") == b"\n"
    from fractions import Fraction

    rep = Report("ledger", [{"t": 15, "rate": Fraction(1, 2), "cert": {"lo": 3, "hi": 4}}])
    data = report_emit(rep, "json")
    back = parse_report(data)
    assert back.rows == [{"t": 15, "rate": "1/2", "cert": {"lo": 3, "hi": 4}}]
    csv_back = parse_report(report_emit(rep, "csv"), "csv")
    assert csv_back.columns == ["t", "rate", "cert.lo", "cert.hi"]
    assert csv_back.rows == [{"t": "15", "rate": "1/2", "cert.lo": "3", "cert.hi": "4"}]
    with pytest.raises(ValueError):
        report_emit(rep, "xml")


def test_serve_and_retrieve_processes(tmp_path):
    p = tmp_path / "toy.json"
    p.write_text(json.dumps(TOY))
    procs, eps = [], []
    try:
        for j in range(3):
            pr = subprocess.Popen(
                [sys.executable, "-m", "starpir.cli", "serve", "--config", str(p), "--seed", "7", "--index", str(j)],
                stdout=subprocess.PIPE,
                text=True,
            )
            procs.append(pr)
            eps.append(pr.stdout.readline().split()[1])
        args = ["retrieve", "--config", str(p), "--seed", "7", "--output", "csv"]
        for e in eps:
            args += ["--endpoint", e]
        code, out = run(args)
        lines = out.decode().splitlines()
        assert code == 0 and lines[1].split(",")[1] == "true"
    finally:
        for pr in procs:
            pr.terminate()
            pr.wait(timeout=5)
