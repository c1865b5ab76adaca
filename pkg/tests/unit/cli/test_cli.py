import json

import pytest
from click.testing import CliRunner

from hl_prover.cli import cli


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def invoke(runner, tmp_path):
    def run(*args):
        return runner.invoke(cli, ["-c", str(tmp_path / "missing.yaml"), *args])

    return run


class TestCheckCommand:
    """Test the check command"""

    def test_hierarchy(self, invoke, fixtures_dir):
        """Test a passing file exits 0"""
        result = invoke("check", str(fixtures_dir / "structures.hl"))

        assert result.exit_code == 0
        assert "4/4 goal(s) proved" in result.output

    def test_cycle(self, invoke, fixtures_dir):
        """Test an instance cycle exits 1"""
        result = invoke("check", str(fixtures_dir / "cycle.hl"))

        assert result.exit_code == 1
        assert "[cycle]" in result.output

    def test_json(self, invoke, fixtures_dir):
        """Test the JSON report"""
        result = invoke("check", str(fixtures_dir / "goals.hl"), "--json")
        report = json.loads(result.output)

        assert result.exit_code == 0
        assert len(report["goals"]) == 9

    def test_parse_error(self, invoke, tmp_path):
        """Test a malformed file exits 2"""
        source = tmp_path / "broken.hl"
        source.write_text("instance : monoid(", encoding="utf-8")

        assert invoke("check", str(source)).exit_code == 2


class TestProveCommand:
    """Test the prove command"""

    def test_class_goal(self, invoke, fixtures_dir):
        """Test resolving a class atom"""
        result = invoke("prove", str(fixtures_dir / "structures.hl"), "--class", "monoid(Z)")

        assert result.exit_code == 0
        assert "proved by resolve" in result.output

    def test_missing_instance(self, invoke, fixtures_dir):
        """Test an underivable atom exits 1"""
        result = invoke("prove", str(fixtures_dir / "structures.hl"), "--class", "field(Z)")

        assert result.exit_code == 1
        assert "not proved" in result.output

    def test_term(self, invoke):
        """Test a term with an explicit tactic and sort"""
        result = invoke("prove", "--tactic", "ring", "--sort", "int", "(a + b)^2 = a^2 + 2*a*b + b^2")

        assert result.exit_code == 0
        assert "proved by ring" in result.output

    def test_hypotheses(self, invoke):
        """Test named and unnamed hypotheses"""
        result = invoke(
            "prove", "--tactic", "linarith", "--sort", "rat", "--hyp", "h: a < b", "--hyp", "b < c", "a < c", "--json"
        )

        assert result.exit_code == 0
        assert json.loads(result.output)["proved"]

    def test_stats(self, invoke, fixtures_dir):
        """Test search metrics are printed"""
        result = invoke("prove", str(fixtures_dir / "structures.hl"), "--class", "semiring(Z)", "--stats", "json")

        assert result.exit_code == 0
        assert '"outcome": "success"' in result.output

    def test_needs_a_goal(self, invoke):
        """Test a missing goal is a usage error"""
        assert invoke("prove").exit_code == 2


class TestVerifyCommand:
    """Test writing and re-checking traces"""

    def test_round_trip(self, invoke, fixtures_dir, tmp_path):
        """Test a written trace is accepted"""
        trace = tmp_path / "trace.json"
        hierarchy = str(fixtures_dir / "structures.hl")

        assert invoke("prove", hierarchy, "--class", "ring(Z)", "--trace", str(trace)).exit_code == 0
        result = invoke("verify", str(trace), hierarchy)

        assert result.exit_code == 0
        assert result.output.strip() == "accepted"

    def test_other_environment(self, invoke, fixtures_dir, tmp_path):
        """Test a derivation is rejected against an environment without its rules"""
        trace = tmp_path / "trace.json"
        invoke("prove", str(fixtures_dir / "structures.hl"), "--class", "monoid(Z)", "--trace", str(trace))
        result = invoke("verify", str(trace), str(fixtures_dir / "cycle.hl"))

        assert result.exit_code == 1
        assert result.output.startswith("rejected")

    def test_malformed(self, invoke, fixtures_dir, tmp_path):
        """Test a malformed trace exits 2"""
        trace = tmp_path / "trace.json"
        trace.write_text("{", encoding="utf-8")

        assert invoke("verify", str(trace), str(fixtures_dir / "structures.hl")).exit_code == 2


class TestOtherCommands:
    """Test lint, gen, bench, stats and version"""

    def test_version(self, invoke):
        """Test the version banner"""
        result = invoke("version")

        assert result.exit_code == 0
        assert "hl-prover v0.1.0" in result.output
        assert "resolve" in result.output

    def test_lint(self, invoke, tmp_path):
        """Test loop risks fail only with --strict"""
        source = tmp_path / "loop.hl"
        source.write_text("/-- Swap. -/\nsimp lemma add_comm (x y : a) : x + y = y + x\n", encoding="utf-8")

        assert invoke("lint", str(source)).exit_code == 0
        assert invoke("lint", str(source), "--strict").exit_code == 1

    def test_lint_json(self, invoke, tmp_path):
        """Test findings as JSON"""
        source = tmp_path / "names.hl"
        source.write_text("class Bad_Name (a)\n", encoding="utf-8")
        findings = json.loads(invoke("lint", str(source), "--json").output)

        assert {f["check"] for f in findings} == {"malformed_name", "missing_doc"}
        assert all(f["severity"] == "warning" for f in findings)

    def test_gen_then_stats(self, invoke, tmp_path):
        """Test a generated hierarchy can be inspected"""
        out = tmp_path / "chain.hl"

        assert invoke("gen", "--shape", "chain", "--n", "3", "--out", str(out)).exit_code == 0
        result = invoke("stats", str(out))

        assert result.exit_code == 0
        assert "classes:              4" in result.output

    def test_gen_stdout(self, invoke):
        """Test generation without --out prints the source"""
        result = invoke("gen", "--shape", "diamond-ladder", "--n", "1")

        assert "class b1 (a)" in result.output

    def test_bench(self, invoke):
        """Test CSV rows for every size"""
        result = invoke("bench", "--shape", "chain", "--n", "2", "--strategy", "backward")
        lines = result.output.strip().splitlines()

        assert result.exit_code == 0
        assert lines[0].startswith("shape,n,strategy")
        assert len(lines) == 3

    def test_stats_json(self, invoke, fixtures_dir):
        """Test statistics as JSON"""
        report = json.loads(invoke("stats", str(fixtures_dir / "structures.hl"), "--json").output)

        assert report["class_count"] == 66
        assert report["acyclic"]
