import json
import subprocess
import sys

import pytest

from gradval import scalars as sc
from gradval.bounds import NEG_INF, POS_INF
from gradval.checks import REPRODUCE, expect_positives_bounds, reproduce, run_checks
from gradval.cli import main
from gradval.errors import ParseError, UnknownExample, ValidationError
from gradval.scenario import (
    build_scenario,
    corpus_names,
    load_corpus_scenario,
    load_scenario,
)

CORPUS = sorted(REPRODUCE)


class TestScenarioLoading:
    def test_gvalex_fields(self):
        s = load_corpus_scenario("gvalex")
        assert s.ring.spec.valuation == sc.PADIC and s.ring.spec.prime == 5
        assert len(s.ring.groupoid) == 4
        assert s.subring.bound(s.ring.groupoid.index("e12")) == NEG_INF
        assert s.subring.bound(s.ring.groupoid.index("e21")) == POS_INF
        assert set(s.ideals) == {"I", "J"}

    def test_quaternion_twist_loaded(self):
        s = load_corpus_scenario("quaternion")
        g = s.ring.groupoid
        assert s.ring.twist.a(g.index("j"), g.index("i")) == sc.scalar(s.ring.spec, -1)
        assert s.ring.unit("i") * s.ring.unit("j") == s.ring.unit("k")

    def test_all_corpus_files_load(self):
        for name in corpus_names():
            s = load_corpus_scenario(name)
            assert s.id == name

    def test_unknown_example(self):
        with pytest.raises(UnknownExample):
            load_corpus_scenario("no-such-thing")
        with pytest.raises(UnknownExample):
            reproduce("m4-full")

    def test_zero_twist_value_rejected(self):
        data = {
            "field": {"kind": "rationals", "valuation": "trivial"},
            "groupoid": {"kind": "delta", "n": 2},
            "twist": {"alpha": [["e12", "e21", "0"]]},
        }
        with pytest.raises(ValidationError, match="nonzero"):
            build_scenario(data)

    def test_invalid_cocycle_rejected(self):
        data = {
            "field": {"kind": "rationals", "valuation": "trivial"},
            "groupoid": {"kind": "delta", "n": 2},
            "twist": {"alpha": [["e12", "e21", "2"]]},  # missing the mirror entry
        }
        with pytest.raises(ValidationError, match="twist conditions"):
            build_scenario(data)

    def test_missing_sections(self):
        with pytest.raises(ValidationError, match="field"):
            build_scenario({"groupoid": {"kind": "delta", "n": 2}})

    def test_bad_bounds_key(self):
        data = {
            "field": {"kind": "rationals", "valuation": "trivial"},
            "groupoid": {"kind": "delta", "n": 2},
            "subring": {"e11": 0, "e12": 0, "e21": 0, "e99": 0},
        }
        with pytest.raises(ValidationError, match="e99"):
            build_scenario(data)

    def test_ideal_without_subring(self):
        data = {
            "field": {"kind": "rationals", "valuation": "trivial"},
            "groupoid": {"kind": "delta", "n": 1},
            "ideals": {"I": {"kind": "two_sided", "e11": 0}},
        }
        with pytest.raises(ValidationError, match="subring"):
            build_scenario(data)

    def test_missing_file(self):
        with pytest.raises(ParseError):
            load_scenario("/nonexistent/path.toml")

    def test_bad_toml(self, tmp_path):
        target = tmp_path / "broken.toml"
        target.write_text("id = [unterminated")
        with pytest.raises(ParseError):
            load_scenario(target)


class TestRunChecks:
    @pytest.mark.parametrize("name", CORPUS)
    def test_reproductions_pass(self, name):
        report = reproduce(name, seed=0, radius=4)
        counts = report.counts()
        assert counts["fail"] == 0 and counts["error"] == 0, report.to_text()

    def test_seed_changes_keep_verdicts(self):
        a = reproduce("m2-full", seed=0, radius=4)
        b = reproduce("m2-full", seed=12345, radius=4)
        verdict_a = {(c.name, c.status) for c in a.checks}
        verdict_b = {(c.name, c.status) for c in b.checks}
        assert verdict_a == verdict_b

    def test_failing_expectation_yields_exit_2(self):
        scenario = load_corpus_scenario("gvalex")
        wrong = expect_positives_bounds({"e11": 3, "e12": 0, "e21": 0, "e22": 3})
        report = run_checks(scenario, seed=0, radius=3, extra=[wrong])
        assert not report.ok()
        assert report.exit_code() == 2


class TestCli:
    def test_list(self, capsys):
        assert main(["list"]) == 0
        out = capsys.readouterr().out
        for name in corpus_names():
            assert name in out

    def test_reproduce_exit_codes(self, capsys):
        assert main(["reproduce", "gvalex", "--window", "4"]) == 0
        assert main(["reproduce", "not-a-name"]) == 3
        err = capsys.readouterr().err
        assert "unknown example" in err

    def test_check_corpus_name(self, capsys):
        assert main(["check", "m2-full", "--window", "3"]) == 0

    def test_check_missing_file(self, capsys):
        assert main(["check", "/does/not/exist.toml"]) == 3

    def test_check_failure_exit_code(self, tmp_path, capsys):
        target = tmp_path / "badorder.toml"
        target.write_text(
            "\n".join(
                [
                    'id = "badorder"',
                    "[field]",
                    'kind = "rationals"',
                    'valuation = "trivial"',
                    "[groupoid]",
                    'kind = "delta"',
                    "n = 2",
                    "[order]",
                    'pairs = [["e12", "e11"]]',
                ]
            )
        )
        assert main(["check", str(target)]) == 2
        out = capsys.readouterr().out
        assert "order-validation" in out

    def test_json_reports_are_byte_stable(self, capsys):
        main(["reproduce", "m2-full", "--report", "json", "--window", "3"])
        first = capsys.readouterr().out
        main(["reproduce", "m2-full", "--report", "json", "--window", "3"])
        second = capsys.readouterr().out
        assert first == second
        payload = json.loads(first)
        assert payload["schema"] == 1
        assert payload["scenario"] == "m2-full"
        assert "timing_seconds" not in payload
        assert set(payload["summary"]) == {"pass", "fail", "skipped", "error"}

    def test_eval_named_and_literal(self, capsys):
        assert main(["eval", "m2-full", "sample"]) == 0
        out = capsys.readouterr().out
        assert "v(x) = [e11: (e11, -1)]" in out
        assert main(["eval", "gvalex", "1*e11 + 25*e12 + 1/5*e22"]) == 0
        out = capsys.readouterr().out
        assert "[e11: (e11, 0)] + [e22: (e22, -1)]" in out

    def test_eval_needs_valuation_ring(self, capsys):
        assert main(["eval", "delta2-order", "1*e11"]) == 3

    def test_gamma(self, capsys):
        assert main(["gamma", "gvalex"]) == 0
        out = capsys.readouterr().out
        assert "value structure is a group: False" in out
        assert "e21 < e11" in out
        assert main(["gamma", "m2-full"]) == 0
        out = capsys.readouterr().out
        assert "value structure is a group: True" in out

    def test_console_script_entry(self):
        proc = subprocess.run(
            [sys.executable, "-m", "gradval.cli", "list"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "gvalex" in proc.stdout
