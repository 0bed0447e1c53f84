import json

import numpy as np
import pytest

from entbound import PureState, family_state, save_state, werner_state
from entbound.cli import FAMILY_COLUMNS, main


def read_csv(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:] if not line.startswith("#")]
    return header, rows


class TestFamilyCommand:
    def test_sweep_values(self, tmp_path):
        out = tmp_path / "fig.csv"
        assert main(["family", "--n", "4", "--steps", "101", "--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header == list(FAMILY_COLUMNS)
        assert len(rows) == 101
        table = {float(r[0]): dict(zip(header, map(float, r))) for r in rows}
        mid = table[0.5]
        assert mid["bound_witness"] == pytest.approx(mid["bound_ppt"], abs=1e-9)
        assert mid["bound_witness"] == pytest.approx(0.4082482904638630, abs=1e-9)
        assert table[1.0]["eof_new"] == pytest.approx(2.0, abs=1e-9)
        start = table[0.0]
        for col in ("bound_witness", "bound_ppt", "bound_realign", "eof_new", "eof_old"):
            assert start[col] == pytest.approx(0.0, abs=1e-9)

    def test_round_trip_floats(self, tmp_path):
        out = tmp_path / "fig.csv"
        main(["family", "--n", "4", "--steps", "11", "--out", str(out)])
        _, rows = read_csv(out)
        for row in rows:
            for cell in row:
                assert repr(float(cell)) == cell

    def test_rejects_bad_usage(self, tmp_path):
        assert main(["family", "--steps", "1"]) == 1
        assert main(["family", "--n", "5"]) == 1
        assert main(["family", "--lambda-min", "0.9", "--lambda-max", "0.1"]) == 1

    def test_unwritable_path(self):
        assert main(["family", "--steps", "2", "--out", "/nonexistent/dir/x.csv"]) == 1


class TestBoundsCommand:
    def test_ppt_window_state(self, tmp_path, sys4, capsys):
        path = tmp_path / "rho.json"
        save_state(path, family_state(sys4, 0.1))
        assert main(["bounds", str(path)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["witness_detects"] is True
        assert report["ppt_violated"] is False
        assert report["f_witness"] == pytest.approx(0.2, abs=1e-10)

    def test_werner_state(self, tmp_path, sys4, capsys):
        path = tmp_path / "werner.json"
        save_state(path, werner_state(sys4))
        assert main(["bounds", str(path)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["concurrence_lower"] == pytest.approx(0.0, abs=1e-9)
        assert report["eof_lower"] == pytest.approx(0.0, abs=1e-9)

    def test_pure_singlet_file(self, tmp_path, sys4, capsys):
        path = tmp_path / "singlet.json"
        save_state(path, PureState(4, sys4.singlet))
        assert main(["bounds", str(path)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["concurrence_lower"] == pytest.approx(1.224744871391589, abs=1e-9)

    def test_optimize_requires_seed(self, tmp_path, sys4):
        path = tmp_path / "rho.json"
        save_state(path, family_state(sys4, 0.3))
        assert main(["bounds", str(path), "--optimize"]) == 1

    def test_optimize_reports_field(self, tmp_path, sys4, capsys):
        path = tmp_path / "rho.json"
        save_state(path, family_state(sys4, 0.3))
        code = main(["bounds", str(path), "--optimize", "--seed", "5",
                     "--restarts", "1", "--iterations", "20"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["f_witness_optimized"] >= report["f_witness"] - 1e-12

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        assert main(["bounds", str(path)]) == 1

    def test_invalid_state_rejected(self, tmp_path):
        path = tmp_path / "invalid.json"
        entries = [[[0.5 if i == j and i < 4 else 0.0, 0.0] for j in range(16)]
                   for i in range(16)]
        path.write_text(json.dumps({"n_local": 4, "matrix": entries}))
        assert main(["bounds", str(path)]) == 1

    def test_missing_file(self):
        assert main(["bounds", "/no/such/file.json"]) == 1


class TestVerifyCommand:
    def test_witness_suite(self, capsys):
        assert main(["verify", "witness", "--n", "4"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "FAIL" not in out

    def test_appendix_b_suite_n6(self, capsys):
        assert main(["verify", "appendixB", "--n", "6"]) == 0
        assert "FAIL" not in capsys.readouterr().out

    def test_appendix_a_suite(self, capsys):
        assert main(["verify", "appendixA", "--n", "4", "--samples", "500",
                     "--seed", "3"]) == 0
        assert "FAIL" not in capsys.readouterr().out

    def test_appendix_a_requires_seed(self):
        assert main(["verify", "appendixA", "--n", "4"]) == 1

    def test_figures_suite(self, capsys):
        assert main(["verify", "figures", "--n", "4"]) == 0
        assert "FAIL" not in capsys.readouterr().out


class TestSurveyCommand:
    def test_rejects_zero_samples(self, tmp_path):
        assert main(["survey", "--samples", "0", "--seed", "1",
                     "--out", str(tmp_path / "s.csv")]) == 1

    def test_deterministic_bytes(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        for out in (a, b):
            assert main(["survey", "--samples", "10", "--rank", "2",
                         "--seed", "9", "--out", str(out)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_include_family_counts_witness_only(self, tmp_path):
        out = tmp_path / "s.csv"
        assert main(["survey", "--samples", "3", "--seed", "4",
                     "--include-family", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        family_rows = [l.split(",") for l in lines if l.startswith("family")]
        assert len(family_rows) == 5
        for row in family_rows:
            assert row[1] == "False"      # ppt_violated
            assert row[2] == "False"      # realignment_violated
            assert row[4] == "True"       # witness_detects
        summary = lines[-1]
        assert summary.startswith("# summary")
        counts = dict(kv.split("=") for kv in summary.split()[2:])
        assert int(counts["witness_only"]) >= 5


class TestWitnessCommand:
    def test_csv_output(self, tmp_path):
        out = tmp_path / "w.csv"
        assert main(["witness", "--n", "4", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "eigenvalue"
        evals = [float(x) for x in lines[1:17]]
        assert evals[0] == pytest.approx(-2.0, abs=1e-9)
        assert evals[-1] == pytest.approx(2.0, abs=1e-9)

    def test_json_output(self, capsys):
        assert main(["witness", "--n", "6", "--format", "json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["trace"] == pytest.approx(24.0, abs=1e-9)
        assert min(obj["eigenvalues"]) == pytest.approx(-4.0, abs=1e-9)
        assert len(obj["matrix"]) == 36


class TestUsageErrors:
    def test_unknown_command(self):
        assert main(["frobnicate"]) == 1

    def test_no_command(self):
        assert main([]) == 1
