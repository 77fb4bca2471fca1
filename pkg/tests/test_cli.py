import json
from pathlib import Path

import pytest

from afcurves.cli import main

BUNDLED = str(Path(__file__).resolve().parent.parent / "data" / "cm_corpus.json")


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out else None, err


class TestSnfCommand:
    def test_reduction(self, capsys):
        code, payload, _ = run_json(capsys, "snf", "4,2;2,0")
        assert code == 0
        assert payload["diagonal"] == [2, 2]
        assert payload["verified"] is True

    def test_identity(self, capsys):
        code, payload, _ = run_json(capsys, "snf", "1,0;0,1")
        assert code == 0
        assert payload["diagonal"] == [1, 1]

    def test_divisor_chain(self, capsys):
        code, payload, _ = run_json(capsys, "snf", "6,2;2,2")
        assert payload["diagonal"] == [2, 4]

    def test_parse_error_has_position(self, capsys):
        code, out, err = run_cli(capsys, "snf", "1,x;2,3")
        assert code == 1
        assert "row 1, column 2" in err


class TestAbelianizeCommand:
    def test_bowen_franks_case(self, capsys):
        code, payload, _ = run_json(
            capsys, "abelianize", "5,2;2,1", "--poly", "-1,1"
        )
        assert code == 0
        assert payload["group"] == {"torsion": [2, 2], "free_rank": 0}

    def test_trivial(self, capsys):
        code, out, _ = run_cli(capsys, "abelianize", "2,1;1,1", "--poly", "-1,1")
        assert code == 0
        assert "trivial" in out

    def test_x_plus_one(self, capsys):
        code, payload, _ = run_json(
            capsys, "abelianize", "5,2;2,1", "--poly", "1,1"
        )
        assert payload["group"] == {"torsion": [2, 4], "free_rank": 0}

    def test_bad_constant_term(self, capsys):
        code, out, err = run_cli(capsys, "abelianize", "5,2;2,1", "--poly", "0,1")
        assert code == 1
        assert "BadConstantTerm" in err

    def test_not_unimodular(self, capsys):
        code, out, err = run_cli(capsys, "abelianize", "2,2;1,1", "--poly", "-1,1")
        assert code == 1
        assert "NotUnimodular" in err


class TestBowenFranksCommand:
    def test_standard(self, capsys):
        code, payload, _ = run_json(capsys, "bowen-franks", "5,2;2,1")
        assert code == 0
        assert payload["group"] == {"torsion": [2, 2], "free_rank": 0}
        assert payload["order"] == 4
        assert payload["det_a_minus_i"] == -4


class TestProbeCommand:
    def test_report_fields(self, capsys):
        code, payload, _ = run_json(
            capsys, "probe", "5,2;2,1", "--poly", "-1,1", "--trials", "25"
        )
        assert code == 0
        assert payload["matrix"] == "5,2;2,1"
        assert payload["polynomial"] == "-1,1"
        assert payload["trials"] == 25
        assert payload["failures"] == 0
        assert payload["group"] == {"torsion": [2, 2], "free_rank": 0}
        assert payload["seed"] == 1729  # default seed is printed

    def test_byte_stable(self, capsys):
        _, out1, _ = run_cli(
            capsys, "probe", "5,2;2,1", "--poly", "-1,1", "--format", "json"
        )
        _, out2, _ = run_cli(
            capsys, "probe", "5,2;2,1", "--poly", "-1,1", "--format", "json"
        )
        assert out1 == out2


class TestCfCommand:
    def test_silver_with_matrix(self, capsys):
        code, payload, _ = run_json(capsys, "cf", "(1+sqrt(2))/1", "--matrix")
        assert code == 0
        assert payload["preperiod"] == []
        assert payload["period"] == [2]
        assert payload["matrix"] == "5,2;2,1"

    def test_golden(self, capsys):
        code, payload, _ = run_json(capsys, "cf", "(1+sqrt(5))/2")
        assert payload["period"] == [1]

    def test_perfect_square(self, capsys):
        code, out, err = run_cli(capsys, "cf", "sqrt(4)")
        assert code == 1
        assert "NotIrrational" in err


class TestTorsionCommand:
    def test_lambda_spec(self, capsys):
        code, payload, _ = run_json(capsys, "torsion", "lambda=-1")
        assert code == 0
        assert payload["group"] == {"torsion": [2, 2], "free_rank": 0}
        assert payload["includes_infinity"] is True
        assert payload["points"] == [["-1", "0"], ["0", "0"], ["1", "0"]]
        assert payload["j"] == "1728"

    def test_ab_spec(self, capsys):
        code, payload, _ = run_json(capsys, "torsion", "a=-4,b=0")
        assert payload["group"] == {"torsion": [2, 2], "free_rank": 0}

    def test_singular(self, capsys):
        code, out, err = run_cli(capsys, "torsion", "lambda=1")
        assert code == 1
        assert "SingularLambda" in err


class TestJmapCommand:
    def test_lambda_branch(self, capsys):
        code, payload, _ = run_json(capsys, "jmap", "lambda=-1")
        assert code == 0
        assert payload["j"] == "1728"
        assert payload["orbit"] == ["-1", "1/2", "2"]

    def test_j_branch(self, capsys):
        code, payload, _ = run_json(capsys, "jmap", "j=1728")
        assert payload["lambdas"] == ["-1", "1/2", "2"]

    def test_j_zero(self, capsys):
        code, payload, _ = run_json(capsys, "jmap", "j=0")
        assert payload["lambdas"] == []


class TestZetaCommand:
    def test_two_primes(self, capsys):
        code, payload, _ = run_json(
            capsys,
            "zeta", "lambda=-1", "5,2;2,1", "--primes", "5,3", "--order", "3",
        )
        assert code == 0
        assert [r["prime"] for r in payload] == [3, 5]  # ascending
        by_prime = {r["prime"]: r for r in payload}
        assert by_prime[3]["a_p"] == 0
        assert by_prime[5]["a_p"] == -2
        assert by_prime[5]["curve_counts"][0] == 8
        assert by_prime[5]["operator_counts"][0] == 6720
        assert by_prime[5]["match_flags"] == [False, False, False]
        assert by_prime[5]["curve_factor"] == {
            "numerator": [1, 2, 5],
            "denominator": [1, -6, 5],
        }
        assert by_prime[5]["operator_params"] == {
            "trace_power": 6726,
            "branch": "good",
            "alpha": None,
        }

    def test_prime_two_flagged(self, capsys):
        code, payload, _ = run_json(
            capsys, "zeta", "lambda=-1", "5,2;2,1", "--primes", "2", "--order", "2"
        )
        assert code == 0
        assert payload[0]["prime"] == 2
        assert payload[0]["error"] == "UnsupportedCharacteristic"

    def test_order_zero(self, capsys):
        code, payload, _ = run_json(
            capsys, "zeta", "lambda=-1", "5,2;2,1", "--primes", "3", "--order", "0"
        )
        assert payload[0]["curve_counts"] == []
        assert payload[0]["operator_counts"] == []

    def test_bad_reduction_flagged_per_prime(self, capsys):
        code, payload, _ = run_json(
            capsys,
            "zeta", "a=-1,b=1", "5,2;2,1", "--primes", "23,3", "--order", "2",
        )
        assert code == 0
        by_prime = {r["prime"]: r for r in payload}
        assert by_prime[23]["error"] == "BadReduction"
        assert "error" not in by_prime[3]

    def test_non_prime_flagged(self, capsys):
        code, payload, _ = run_json(
            capsys, "zeta", "lambda=-1", "5,2;2,1", "--primes", "9", "--order", "1"
        )
        assert code == 0
        assert payload[0]["error"] == "ValueError"

    def test_bad_branch_odd_prime_needs_alpha(self, capsys):
        # tr([[3,2],[1,1]])^2 - 4 = 12: p = 3 takes the degenerate branch
        code, payload, _ = run_json(
            capsys, "zeta", "lambda=-1", "3,2;1,1", "--primes", "3", "--order", "2"
        )
        assert payload[0]["error"] == "AlphaRequired"
        code, payload, _ = run_json(
            capsys,
            "zeta", "lambda=-1", "3,2;1,1",
            "--primes", "3", "--order", "2", "--alpha", "-1",
        )
        assert payload[0]["operator_params"]["branch"] == "bad"
        assert payload[0]["operator_params"]["alpha"] == -1
        assert payload[0]["operator_counts"] == [2, 0]


class TestConjectureCommand:
    def test_bundled_corpus(self, capsys):
        code, payload, _ = run_json(capsys, "conjecture", BUNDLED)
        assert code == 0
        (report,) = payload
        assert report["lambda"] == "-1"
        assert report["j"] == "1728"
        assert report["theta"] == "(1+sqrt(2))/1"
        assert report["incidence"] == "5,2;2,1"
        assert report["computed_torsion"] == {"torsion": [2, 2], "free_rank": 0}
        assert report["expected_match"] is True
        assert report["invariants"][0]["verdict"] == "match"

    def test_env_var_default(self, capsys, monkeypatch):
        monkeypatch.setenv("AFCURVES_CORPUS", BUNDLED)
        code, payload, _ = run_json(capsys, "conjecture")
        assert code == 0
        assert payload[0]["expected_match"] is True

    def test_no_corpus_anywhere(self, capsys, monkeypatch):
        monkeypatch.delenv("AFCURVES_CORPUS", raising=False)
        code, out, err = run_cli(capsys, "conjecture")
        assert code == 1

    def test_empty_corpus(self, capsys, tmp_path):
        path = tmp_path / "empty.json"
        path.write_text("[]")
        code, payload, _ = run_json(capsys, "conjecture", str(path))
        assert code == 0
        assert payload == []

    def test_expected_mismatch_fails_run(self, capsys, tmp_path):
        path = tmp_path / "wrong.json"
        path.write_text(
            json.dumps(
                [
                    {
                        "label": "wrong expectation",
                        "lambda": "-1",
                        "matrix": "5,2;2,1",
                        "polynomials": ["-1,1"],
                        "expected_torsion": {"torsion": [4], "free_rank": 0},
                    }
                ]
            )
        )
        code, payload, _ = run_json(capsys, "conjecture", str(path))
        assert code == 1
        assert payload[0]["expected_match"] is False

    def test_conjecture_verdicts_do_not_affect_exit(self, capsys, tmp_path):
        # a Bowen-Franks mismatch is a finding, not a failure, as long as no
        # expected_torsion contradicts the computed group
        path = tmp_path / "finding.json"
        path.write_text(
            json.dumps(
                [
                    {
                        "label": "mismatching pair",
                        "lambda": "-1",
                        "matrix": "2,1;1,1",
                        "polynomials": ["-1,1"],
                    }
                ]
            )
        )
        code, payload, _ = run_json(capsys, "conjecture", str(path))
        assert code == 0
        assert payload[0]["invariants"][0]["verdict"] == "mismatch"

    def test_entry_error_collected_and_run_continues(self, capsys, tmp_path):
        path = tmp_path / "mixed.json"
        path.write_text(
            json.dumps(
                [
                    {
                        "label": "p(0)=0",
                        "lambda": "-1",
                        "matrix": "5,2;2,1",
                        "polynomials": ["0,1"],
                    },
                    {
                        "label": "good",
                        "lambda": "-1",
                        "matrix": "5,2;2,1",
                        "polynomials": ["-1,1"],
                    },
                ]
            )
        )
        code, payload, _ = run_json(capsys, "conjecture", str(path))
        assert code == 0
        assert "error" in payload[0]
        assert payload[1]["invariants"][0]["verdict"] == "match"


def test_json_outputs_are_byte_stable(capsys):
    for argv in (
        ["snf", "4,2;2,0"],
        ["torsion", "lambda=-1"],
        ["zeta", "lambda=-1", "5,2;2,1", "--primes", "3,5", "--order", "2"],
        ["conjecture", BUNDLED],
    ):
        _, out1, _ = run_cli(capsys, *argv, "--format", "json")
        _, out2, _ = run_cli(capsys, *argv, "--format", "json")
        assert out1 == out2
