import csv
import io
import json

import pytest

from ncchains.cli import expand_sweep, main, parse_quantity


@pytest.fixture(autouse=True)
def _cache(tmp_path, monkeypatch):
    monkeypatch.setenv("NCP_CACHE_DIR", str(tmp_path))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_h3_mc(capsys):
    code, out, _ = run(capsys, "count", "H3", "mc")
    rec = json.loads(out)
    assert code == 0 and rec["value"] == "50" and rec["source"] == "brute-force"


def test_count_a3_edges(capsys):
    code, out, _ = run(capsys, "count", "A3", "edges")
    assert json.loads(out)["value"] == "28"


def test_count_e8_closed_form(capsys):
    code, out, _ = run(capsys, "count", "E8", "mc", "--closed-form")
    rec = json.loads(out)
    assert code == 0 and rec["value"] == "37968750" and rec["source"] == "closed-form"


def test_count_e8_without_closed_form_hits_bound(capsys):
    code, _, err = run(capsys, "count", "E8", "mc")
    assert code == 3 and "resource bound" in err


@pytest.mark.parametrize("quantity,value", [
    ("nc", "14"), ("mc", "16"), ("tw:2", "16"), ("sc:2", "32"), ("rank-jump:1,0,2", "6"), ("zeta:2", "55"),
])
def test_count_quantities(capsys, quantity, value):
    code, out, _ = run(capsys, "count", "A3", quantity, "--closed-form")
    rec = json.loads(out)
    assert rec["value"] == value
    assert rec.get("match", True) is True and code == 0


def test_count_m_divisible(capsys):
    code, out, _ = run(capsys, "count", "A2", "nc", "--m", "2", "--closed-form")
    rec = json.loads(out)
    assert rec["value"] == "12" and rec["match"] is True


def test_count_matrix_backend(capsys):
    code, out, _ = run(capsys, "count", "H4", "mc", "--backend", "matrix", "--closed-form")
    rec = json.loads(out)
    assert rec["value"] == "1350" and rec["match"] is True


@pytest.mark.parametrize("argv", [
    ("count", "Q7", "mc"),
    ("count", "A3", "bogus"),
    ("count", "A3", "tw:9"),
    ("count", "A2", "nc", "--m", "0"),
    ("verify", "A3", "jump", "--j", "2,1", "--i", "1"),
    ("count", "I2(8)", "mc", "--backend", "matrix"),
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_verify_jump(capsys):
    code, out, _ = run(capsys, "verify", "A3", "jump", "--j", "1,1,1", "--i", "1")
    rec = json.loads(out)
    assert code == 0 and rec["pass"] is True and rec["identity"] == "jump"


def test_verify_steinberg(capsys):
    code, out, _ = run(capsys, "verify", "B3", "steinberg")
    assert code == 0 and all(json.loads(line)["pass"] for line in out.splitlines())


def test_verify_sweep_emits_many_lines(capsys):
    code, out, _ = run(capsys, "verify", "B3", "jump")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and len(lines) > 10 and all(x["ok"] for x in lines)


@pytest.mark.parametrize("identity", ["one-formula", "zeta", "nc-recursion", "edge-pairs", "corollaries", "m-jump", "tw-f"])
def test_verify_identities(capsys, identity):
    code, out, _ = run(capsys, "verify", "A3", identity)
    assert code == 0 and out.strip()


def test_verify_reducible(capsys):
    code, out, _ = run(capsys, "verify", "A2xA1", "reducible")
    assert code == 0 and out.strip()


def test_verify_obvious_is_informational(capsys):
    code, out, _ = run(capsys, "verify", "D4", "obvious", "--k", "2")
    rec = json.loads(out)
    assert code == 0 and rec["pass"] is False and rec["expected"] is False
    # the A4 instance agrees with brute force, which the note flags
    code, out, _ = run(capsys, "verify", "A4", "obvious", "--k", "2")
    rec = json.loads(out)
    assert code == 0 and rec["pass"] is True and "contrary" in rec["note"]


def test_table(capsys, tmp_path):
    code, out, _ = run(capsys, "table", "A1..A5")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["MC"] for r in rows] == ["1", "3", "16", "125", "1296"]
    target = tmp_path / "t.csv"
    code, _, _ = run(capsys, "table", "I2(3..6)", "-o", str(target), "--jobs", "2")
    rows = list(csv.DictReader(target.open()))
    assert code == 0 and [r["MC"] for r in rows] == ["3", "4", "5", "6"]


def test_table_exceptional(capsys):
    code, out, _ = run(capsys, "table", "exceptional")
    rows = {r["type"]: r for r in csv.DictReader(io.StringIO(out))}
    assert {k: rows[k]["MC"] for k in rows} == {
        "E6": "41472", "E7": "1062882", "E8": "37968750", "F4": "432", "H3": "50", "H4": "1350",
    }
    assert rows["E8"]["source"] == "closed-form" and rows["H3"]["source"] == "brute-force"


def test_helpers():
    assert parse_quantity("rank-jump:1,0,2") == ("rank-jump", (1, 0, 2))
    assert expand_sweep(["A1..A3", "H3"]) == ["A1", "A2", "A3", "H3"]
