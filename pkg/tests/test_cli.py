import csv
import io
import json
import subprocess
import sys

import pytest

from symedge.cli import first_flags, main, run_scan


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


class TestEhrhart:
    def test_binomial(self, capsys):
        code, doc = run_json(capsys, "ehrhart", "--d", "3", "--basis", "binomial")
        assert code == 0
        assert doc["payload"]["coeffs"] == ["1", "6", "6"]
        assert doc["d"] == 3 and doc["dim"] == 2
        assert set(doc["meta"]) == {"version", "digits", "wall_time_ms"}

    def test_monomial(self, capsys):
        _, doc = run_json(capsys, "ehrhart", "--d", "3", "--basis", "monomial")
        assert doc["payload"]["coeffs"] == ["1", "3", "3"]

    def test_rationals_are_strings(self, capsys):
        _, doc = run_json(capsys, "ehrhart", "--d", "6", "--basis", "monomial")
        assert all(isinstance(c, str) for c in doc["payload"]["coeffs"])
        assert any("/" in c for c in doc["payload"]["coeffs"])

    def test_csv(self, capsys):
        _, out, _ = run(capsys, "ehrhart", "--d", "4", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows == [["index", "coefficient"], ["0", "1"], ["1", "8"], ["2", "18"], ["3", "12"]]

    def test_text(self, capsys):
        _, out, _ = run(capsys, "ehrhart", "--d", "3", "--format", "text")
        assert out.strip() == "L_3(m) = 1*C(m,0) + 6*C(m,1) + 6*C(m,2)"

    def test_below_domain(self, capsys):
        code, _, err = run(capsys, "ehrhart", "--d", "2")
        assert code == 2 and "error" in err

    def test_bad_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["ehrhart", "--d", "3", "--basis", "nope"])
        assert exc.value.code == 2


class TestHVector:
    def test_all(self, capsys):
        code, doc = run_json(capsys, "hvector", "--d", "5", "--method", "all")
        assert code == 0
        p = doc["payload"]
        assert p["consistent"] is True
        assert all(v == ["1", "6", "16", "6", "1"] for v in p["vectors"].values())
        assert len(p["vectors"]) == 4

    def test_default(self, capsys):
        _, doc = run_json(capsys, "hvector", "--d", "3")
        assert next(iter(doc["payload"]["vectors"].values())) == ["1", "4", "1"]

    def test_middle_d35(self, capsys):
        _, doc = run_json(capsys, "hvector", "--d", "35", "--method", "closed")
        assert doc["payload"]["entries"][17] == str(2**34)


class TestRoots:
    def test_d3(self, capsys):
        code, doc = run_json(capsys, "roots", "--d", "3")
        assert code == 0
        rows = doc["payload"]["roots"]
        assert len(rows) == 2
        for r in rows:
            assert abs(float(r["re"]) + 0.5) < 1e-12
            assert abs(abs(float(r["im"])) - 0.28867513459481287) < 1e-12

    def test_d35_summary(self, capsys, tmp_path):
        out = tmp_path / "r.csv"
        code, doc = run_json(capsys, "roots", "--d", "35", "--out", str(out), "--format", "csv")
        assert code == 0
        s = doc["payload"]
        assert abs(float(s["max_re"]["mid"]) - 16.35734046) < 1e-6
        assert s["flags"]["violates_fano_upper"] and all(s["checks"].values())
        assert "roots" not in s
        rows = list(csv.DictReader(out.open()))
        assert len(rows) == 34 and list(rows[0]) == ["re", "im", "radius"]

    def test_escalation_exit(self, capsys, monkeypatch):
        monkeypatch.setenv("SYMEDGE_MAX_BITS", "64")
        code, _, err = run(capsys, "roots", "--d", "9")
        assert code == 3 and "escalation" in err

    def test_bad_digits(self):
        with pytest.raises(SystemExit) as exc:
            main(["roots", "--d", "5", "--digits", "0"])
        assert exc.value.code == 2


class TestVerify:
    @pytest.mark.parametrize("argv,count", [
        (["lattice", "--d-min", "3", "--d-max", "6", "--m-max", "5"], 24),
        (["groebner", "--d-min", "3", "--d-max", "6"], 4),
        (["reciprocity", "--d-min", "3", "--d-max", "40"], 38),
        (["hvector", "--d-min", "3", "--d-max", "12"], 10),
    ])
    def test_case_counts(self, capsys, argv, count):
        code, doc = run_json(capsys, "verify", *argv, "--format", "json")
        assert code == 0
        p = doc["payload"]
        assert p["passed"] == count and p["failed"] == 0 and p["skipped"] == 0

    def test_guard_is_skip(self, capsys):
        code, out, err = run(capsys, "verify", "groebner", "--d-min", "7", "--d-max", "8")
        assert code == 0
        assert "1 passed, 0 failed, 1 skipped" in out
        assert "warning" in err

    def test_bad_range(self, capsys):
        code, _, _ = run(capsys, "verify", "lattice", "--d-min", "6", "--d-max", "3")
        assert code == 2


class TestScan:
    def test_small_no_flags(self):
        recs = run_scan(3, 9, "all", 10)
        assert [r.d for r in recs] == list(range(3, 10))
        assert all(v is None for v in first_flags(recs).values())
        assert all(r.D == r.d - 1 and not r.error for r in recs)

    def test_parity(self):
        assert [r.d for r in run_scan(3, 10, "even", 10)] == [4, 6, 8, 10]

    def test_csv_reproducible(self, capsys):
        argv = ["scan", "--d-min", "3", "--d-max", "15", "--no-timing"]
        _, a, _ = run(capsys, *argv)
        _, b, _ = run(capsys, *argv, "--jobs", "2")
        assert a == b
        rows = list(csv.DictReader(io.StringIO(a)))
        assert rows[0]["wall_time_ms"] == "0"
        assert list(rows[0])[:4] == ["d", "D", "parity", "max_re"]

    def test_json_out(self, capsys, tmp_path):
        out = tmp_path / "s.json"
        code, summary = run_json(capsys, "scan", "--d-min", "3", "--d-max", "7",
                                 "--format", "json", "--out", str(out))
        assert code == 0 and summary["rows"] == 5
        doc = json.loads(out.read_text())
        assert doc["d"] is None and len(doc["payload"]["records"]) == 5


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "symedge", "hvector", "--d", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["consistent"] is True
