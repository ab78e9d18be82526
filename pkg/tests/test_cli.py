"""CLI surface: formats, reproducibility, exit codes."""

import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "sphmeans.cli"]


def run(*args):
    return subprocess.run(CLI + list(args), capture_output=True, text=True)


class TestKernelCommand:
    def test_csv_shape_and_header(self):
        r = run("kernel", "--alpha", "1/2", "--beta", "0",
                "--grid-t", "0.5:4:4", "--grid-x", "1:1:1", "--grid-z", "1.5:1.5:1",
                "--closed", "--envelope")
        assert r.returncode == 0
        lines = r.stdout.strip().split("\n")
        assert lines[0].startswith("t,x,z,regime,K_legendre,K_closed")
        assert len(lines) == 5
        # explicit line: every interior row carries the closed-form path tag
        for line in lines[1:]:
            cells = line.split(",")
            assert cells[-1] == "closed"

    def test_explicit_ratio_constant(self):
        r = run("kernel", "--alpha", "1/2", "--beta", "0",
                "--grid-t", "0.9:1.9:5", "--grid-x", "1:1:1", "--grid-z", "1.2:1.2:1",
                "--envelope", "--format", "json")
        data = json.loads(r.stdout)
        ratios = {row["ratio"] for row in data["rows"]
                  if row["regime"] == "Interior"}
        assert len({f"{float(v):.9g}" for v in ratios}) == 1

    def test_vanishing_rows(self):
        r = run("kernel", "--alpha", "0.3", "--beta", "0.6",
                "--grid-t", "0.05:0.05:1", "--grid-x", "1:1:1", "--grid-z", "2:2:1",
                "--envelope", "--format", "json")
        data = json.loads(r.stdout)
        row = data["rows"][0]
        assert row["regime"] == "Vanishing"
        assert float(row["K_legendre"]) == 0.0 and float(row["envelope"]) == 0.0

    def test_oracle_summary(self):
        r = run("kernel", "--alpha", "0.3", "--beta", "0.6",
                "--grid-t", "1.7:4:2", "--grid-x", "1:1:1", "--grid-z", "1.2:1.2:1",
                "--oracle", "--format", "json", "--tol", "1e-9")
        data = json.loads(r.stdout)
        assert float(data["summary"]["max_legendre_oracle_deviation"]) < 1e-7

    def test_config_error_exit_code(self):
        r = run("kernel", "--alpha", "1/2", "--beta", "0",
                "--grid-t", "nonsense", "--grid-x", "1:1:1", "--grid-z", "1:1:1")
        assert r.returncode == 2


class TestReproducibility:
    def test_byte_identical_csv(self):
        args = ("kernel", "--alpha", "1/2", "--beta", "0", "--grid-t", "0.5:4:5",
                "--grid-x", "0.8:1.5:2", "--grid-z", "0.9:1.7:2", "--closed",
                "--seed", "7")
        assert run(*args).stdout == run(*args).stdout

    def test_byte_identical_json(self):
        args = ("regions", "--alpha", "0", "--beta", "1", "--r", "2", "--rho", "1",
                "--A", "0", "--B", "0", "--grid-denominator", "8",
                "--format", "json", "--seed", "3")
        assert run(*args).stdout == run(*args).stdout

    def test_seventeen_digit_serialization(self):
        r = run("kernel", "--alpha", "0.3", "--beta", "0.6",
                "--grid-t", "1.7:1.7:1", "--grid-x", "1:1:1", "--grid-z", "1.2:1.2:1")
        value = r.stdout.strip().split("\n")[1].split(",")[4]
        assert float(value) == float(f"{float(value):.17g}")
        assert len(value.replace(".", "").replace("-", "").lstrip("0")) >= 16


class TestRegionsCommand:
    def test_summary_fields(self):
        r = run("regions", "--alpha", "0", "--beta", "1", "--r", "2", "--rho", "1",
                "--A", "0", "--B", "0", "--grid-denominator", "6", "--format", "json")
        data = json.loads(r.stdout)
        s = data["summary"]
        assert s["shape"] == "S2"
        assert s["norm_finite"] is True
        assert s["zeros_Q"]["observed"] == s["zeros_Q"]["predicted"] == 0

    def test_float_params_rejected(self):
        r = run("regions", "--alpha", "0.3", "--beta", "0.6", "--r", "2",
                "--rho", "1", "--A", "0", "--B", "0")
        assert r.returncode == 2


class TestTnormCommand:
    def test_divergent_run_monotone(self):
        r = run("tnorm", "--alpha", "1/5", "--beta", "1/5", "--r", "10", "--rho", "0",
                "--grid-x", "1:1:1", "--grid-z", "0.7:0.7:1", "--format", "json")
        data = json.loads(r.stdout)
        row = data["rows"][0]
        assert row["finite"] is False
        assert row["monotone_growth"] is True

    def test_finite_run_ratio(self):
        r = run("tnorm", "--alpha=-1/2", "--beta", "1", "--r", "2", "--rho", "0",
                "--grid-x", "0.5:0.5:1", "--grid-z", "1:1:1", "--format", "json")
        data = json.loads(r.stdout)
        row = data["rows"][0]
        assert row["finite"] is True
        assert float(row["numeric"]) == pytest.approx(1.0, rel=1e-7)


class TestVerifyCommand:
    def test_passing_subset(self, tmp_path):
        out = tmp_path / "report.json"
        r = run("verify", "--checks", "3,9", "--out", str(out))
        assert r.returncode == 0
        data = json.loads(out.read_text())
        assert data["summary"]["all_passed"] is True
        assert {x["criterion"] for x in data["summary"]["results"]} == {3, 9}

    def test_tightened_tolerances_fail_with_report(self, tmp_path):
        out = tmp_path / "report.json"
        r = run("verify", "--checks", "3", "--tol-scale", "1e-12", "--out", str(out))
        assert r.returncode == 4
        data = json.loads(out.read_text())
        ff = data["summary"]["first_failure"]
        assert ff["criterion"] == 3
        assert float(ff["achieved"]) > float(ff["tolerance"])

    def test_seed_stability(self):
        a = run("verify", "--checks", "3", "--seed", "0")
        b = run("verify", "--checks", "3", "--seed", "42")
        assert a.returncode == 0 and b.returncode == 0
