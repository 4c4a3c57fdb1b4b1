import json
import subprocess
import sys

import pytest

from meanlab.cli import run_command


def run(argv, capsys=None):
    return run_command(list(argv))


class TestCatalog:
    def test_lists_builtins(self, capsys):
        code, _ = run(["catalog"])
        out = capsys.readouterr().out
        assert code == 0
        for name in ("arithmetic", "gini", "probabilistic_sum"):
            assert name in out


class TestVerify:
    def test_arithmetic_passes(self, tmp_path):
        out = tmp_path / "r.json"
        code, report = run([
            "verify", "--mean", "catalog:arithmetic", "--interval", "0,1",
            "--checks", "refl,sym,bisym", "--out", str(out),
        ])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["verdict"] == "pass"
        assert [r["property"] for r in doc["results"]] == [
            "reflexive", "symmetric", "bisymmetric",
        ]
        assert all(r["passed"] for r in doc["results"])

    def test_gini_bisymmetry_fails(self, tmp_path):
        out = tmp_path / "r.json"
        code, report = run([
            "verify", "--mean", "catalog:gini", "--param", "p=2",
            "--param", "q=1", "--interval", "1,2", "--checks", "bisym",
            "--seed", "42", "--out", str(out),
        ])
        assert code == 1
        doc = json.loads(out.read_text())
        result = doc["results"][0]
        assert result["passed"] is False
        assert len(result["witness"]["points"]) == 4
        assert result["max_violation"] > 1e-6

    def test_expression_mean_matches_catalog(self, tmp_path):
        outs = []
        for mean in ("catalog:arithmetic", "expr:(x+y)/2"):
            out = tmp_path / f"{mean.split(':')[0]}.json"
            code, _ = run([
                "verify", "--mean", mean, "--interval", "0,1",
                "--checks", "refl,sym,bisym,assoc", "--out", str(out),
            ])
            doc = json.loads(out.read_text())
            outs.append([(r["property"], r["passed"]) for r in doc["results"]])
            assert code == 1  # associativity fails for the arithmetic mean
        assert outs[0] == outs[1]

    def test_neutral_check_reports_value(self, tmp_path):
        out = tmp_path / "r.json"
        code, _ = run([
            "verify", "--mean", "catalog:min", "--interval", "0,1",
            "--checks", "neutral", "--out", str(out),
        ])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["results"][0]["neutral"] == pytest.approx(1.0, abs=1e-9)

    def test_unknown_check_is_usage_error(self):
        code, _ = run([
            "verify", "--mean", "catalog:arithmetic", "--interval", "0,1",
            "--checks", "refl,frobnicate",
        ])
        assert code == 2

    def test_closure_violation_is_an_error(self):
        code, _ = run([
            "verify", "--mean", "expr:x+y", "--interval", "0,1",
            "--checks", "refl",
        ])
        assert code == 2

    def test_parse_error_reported(self):
        code, _ = run([
            "verify", "--mean", "expr:x +* y", "--interval", "0,1",
            "--checks", "refl",
        ])
        assert code == 2


class TestExtract:
    def test_geometric_table(self, tmp_path):
        table = tmp_path / "t.csv"
        out = tmp_path / "r.json"
        code, _ = run([
            "extract", "--mean", "catalog:geometric", "--interval", "1,16",
            "--depth", "2", "--table", str(table), "--out", str(out),
        ])
        assert code == 0
        assert table.read_text() == (
            "num,exp,t,value\n"
            "0,0,0,1\n"
            "1,2,0.25,2\n"
            "1,1,0.5,4\n"
            "3,2,0.75,8\n"
            "1,0,1,16\n"
        )
        doc = json.loads(out.read_text())
        kinds = [r["kind"] for r in doc["results"]]
        assert kinds == ["property", "gap"]
        gap = doc["results"][1]
        assert {"X", "Y", "max_gap", "jump_detected"} <= set(gap)

    def test_cross_check_flag(self, tmp_path):
        out = tmp_path / "r.json"
        code, _ = run([
            "extract", "--mean", "catalog:geometric", "--interval", "1,16",
            "--depth", "4", "--cross-check", "--out", str(out),
        ])
        assert code == 0
        doc = json.loads(out.read_text())
        cons = doc["results"][-1]
        assert cons["kind"] == "consistency"
        assert cons["max_discrepancy"] <= 1e-9

    def test_gini_cross_check_fails(self, tmp_path):
        out = tmp_path / "r.json"
        code, _ = run([
            "extract", "--mean", "catalog:gini", "--param", "p=2",
            "--param", "q=1", "--interval", "1,2", "--depth", "4",
            "--cross-check", "--out", str(out),
        ])
        assert code == 1
        doc = json.loads(out.read_text())
        assert "path dependence" in doc["verdict"]

    def test_non_monotone_flagged(self, tmp_path):
        out = tmp_path / "r.json"
        code, _ = run([
            "extract", "--mean", "catalog:projection_x", "--interval", "0,1",
            "--depth", "3", "--out", str(out),
        ])
        assert code == 1
        doc = json.loads(out.read_text())
        assert "hypotheses unverified" in doc["verdict"]


class TestReconstruct:
    def test_arithmetic(self, tmp_path):
        out = tmp_path / "r.json"
        code, _ = run([
            "reconstruct", "--mean", "catalog:arithmetic", "--interval", "0,1",
            "--depth", "6", "--grid", "21", "--out", str(out),
        ])
        assert code == 0
        doc = json.loads(out.read_text())
        rec = doc["results"][-1]
        assert rec["kind"] == "reconstruction"
        assert rec["sup_error"] <= 1e-12
        assert rec["depth"] == 6


class TestFalsify:
    def test_max_refuted(self, tmp_path):
        out = tmp_path / "r.json"
        code, _ = run([
            "falsify", "--mean", "catalog:max", "--interval", "0,1",
            "--pair", "0.25,0.75", "--out", str(out),
        ])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["results"][0]["refutation"] == "strict_mean"

    def test_arithmetic_not_refuted(self, tmp_path):
        code, _ = run([
            "falsify", "--mean", "catalog:arithmetic", "--interval", "0,1",
            "--pair", "0.25,0.75", "--out", str(tmp_path / "r.json"),
        ])
        assert code == 1

    def test_bad_pair(self):
        code, _ = run([
            "falsify", "--mean", "catalog:max", "--interval", "0,1",
            "--pair", "0.75,0.25",
        ])
        assert code == 2


class TestUsageErrors:
    def test_unknown_subcommand(self):
        assert run(["frobnicate"])[0] == 2

    def test_bad_mean_prefix(self):
        code, _ = run([
            "verify", "--mean", "arithmetic", "--interval", "0,1",
            "--checks", "refl",
        ])
        assert code == 2

    def test_bad_interval(self):
        code, _ = run([
            "verify", "--mean", "catalog:arithmetic", "--interval", "1",
            "--checks", "refl",
        ])
        assert code == 2

    def test_unknown_catalog_parameter(self):
        code, _ = run([
            "verify", "--mean", "catalog:arithmetic", "--param", "p=1",
            "--interval", "0,1", "--checks", "refl",
        ])
        assert code == 2


class TestByteDeterminism:
    COMMANDS = [
        ["verify", "--mean", "catalog:gini", "--param", "p=2", "--param",
         "q=1", "--interval", "1,2", "--checks", "refl,sym,bisym",
         "--samples", "500", "--seed", "11"],
        ["extract", "--mean", "catalog:geometric", "--interval", "1,16",
         "--depth", "6", "--cross-check"],
        ["reconstruct", "--mean", "catalog:harmonic", "--interval", "1,2",
         "--depth", "8", "--grid", "51"],
        ["falsify", "--mean", "catalog:probabilistic_sum", "--interval",
         "0,1", "--pair", "0.25,0.75"],
    ]

    @pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
    def test_repeat_runs_identical(self, argv, tmp_path):
        blobs = []
        for tag in ("first", "second"):
            out = tmp_path / f"{tag}.json"
            extra = ["--out", str(out)]
            if argv[0] == "extract":
                extra += ["--table", str(tmp_path / f"{tag}.csv")]
            code, _ = run(argv + extra)
            payload = out.read_bytes()
            if argv[0] == "extract":
                payload += (tmp_path / f"{tag}.csv").read_bytes()
            # the --out path differs between runs; normalize the echo
            payload = payload.replace(tag.encode(), b"RUN")
            blobs.append((code, payload))
        assert blobs[0] == blobs[1]

    def test_cross_process_determinism(self, tmp_path):
        argv = [
            sys.executable, "-m", "meanlab", "verify", "--mean",
            "catalog:gini", "--param", "p=2", "--param", "q=1",
            "--interval", "1,2", "--checks", "sym,bisym",
            "--samples", "300", "--seed", "5",
        ]
        first = subprocess.run(argv, capture_output=True, check=False)
        second = subprocess.run(argv, capture_output=True, check=False)
        assert first.returncode == second.returncode == 1
        assert first.stdout == second.stdout
        assert first.stdout  # JSON went to stdout
