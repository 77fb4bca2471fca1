import json
from fractions import Fraction
from pathlib import Path

import pytest

from afcurves.af_invariant import AbelianGroup
from afcurves.contfrac import QuadraticIrrational
from afcurves.corpus import (
    CorpusEntry,
    CorpusError,
    InvalidEntry,
    load_corpus,
    run_corpus,
    run_entry,
)
from afcurves.exact_linalg import IntMatrix, IntPolynomial, parse_poly

BUNDLED = Path(__file__).resolve().parent.parent / "data" / "cm_corpus.json"


def gaussian_entry(**overrides):
    fields = dict(
        label="gaussian",
        lam=Fraction(-1),
        theta=QuadraticIrrational(1, 2, 1),
        polynomials=(IntPolynomial([-1, 1]),),
        expected_torsion=AbelianGroup((2, 2)),
    )
    fields.update(overrides)
    return CorpusEntry(**fields)


class TestCorpusEntry:
    def test_requires_exactly_one_curve_spec(self):
        with pytest.raises(CorpusError):
            gaussian_entry(ab=(-1, 0))
        with pytest.raises(CorpusError):
            gaussian_entry(lam=None)

    def test_requires_exactly_one_incidence_spec(self):
        with pytest.raises(CorpusError):
            gaussian_entry(matrix=IntMatrix([[5, 2], [2, 1]]))
        with pytest.raises(CorpusError):
            gaussian_entry(theta=None)

    def test_rejects_bad_polynomial(self):
        with pytest.raises(CorpusError):
            gaussian_entry(polynomials=(IntPolynomial([0, 1]),))


class TestRunEntry:
    def test_gaussian_row(self):
        report = run_entry(gaussian_entry())
        assert report.error is None
        assert report.j_invariant == 1728
        assert report.incidence.m == IntMatrix([[5, 2], [2, 1]])
        assert report.computed_torsion == AbelianGroup((2, 2))
        assert report.expected_match is True
        assert len(report.verdicts) == 1
        assert report.verdicts[0].verdict == "match"
        assert report.verdicts[0].group == AbelianGroup((2, 2))

    def test_non_bowen_franks_polynomials_are_not_compared(self):
        entry = gaussian_entry(
            polynomials=(IntPolynomial([-1, 1]), IntPolynomial([1, 1]))
        )
        report = run_entry(entry)
        verdicts = {str(v.polynomial): v.verdict for v in report.verdicts}
        assert verdicts == {"x - 1": "match", "x + 1": "not_computed"}

    def test_expected_mismatch_detected(self):
        report = run_entry(gaussian_entry(expected_torsion=AbelianGroup((4,))))
        assert report.expected_match is False

    def test_singular_lambda_becomes_error(self):
        report = run_entry(gaussian_entry(lam=Fraction(1)))
        assert report.error is not None
        assert "SingularLambda" in report.error

    def test_invalid_entry_passthrough(self):
        report = run_entry(InvalidEntry("broken", "BadConstantTerm: 0"))
        assert report.error == "BadConstantTerm: 0"
        assert report.computed_torsion is None


class TestLoadCorpus:
    def test_bundled_corpus(self):
        entries = load_corpus(str(BUNDLED))
        assert len(entries) == 1
        entry = entries[0]
        assert entry.lam == -1
        assert (entry.theta.p_num, entry.theta.d_rad, entry.theta.q_den) == (1, 2, 1)
        assert entry.polynomials == (IntPolynomial([-1, 1]),)
        assert entry.expected_torsion == AbelianGroup((2, 2))

    def test_bad_polynomial_row_becomes_invalid_entry(self, tmp_path):
        path = tmp_path / "corpus.json"
        path.write_text(
            json.dumps(
                [
                    {
                        "label": "bad poly",
                        "lambda": "-1",
                        "theta": "(1+sqrt(2))/1",
                        "polynomials": ["0,1"],
                    },
                    {
                        "label": "fine",
                        "lambda": "-1",
                        "matrix": "5,2;2,1",
                        "polynomials": ["-1,1"],
                    },
                ]
            )
        )
        entries = load_corpus(str(path))
        assert isinstance(entries[0], InvalidEntry)
        assert isinstance(entries[1], CorpusEntry)
        reports = run_corpus(entries)
        assert reports[0].error is not None
        assert reports[1].error is None

    def test_csv_ingestion_matches_json(self, tmp_path):
        csv_path = tmp_path / "corpus.csv"
        csv_path.write_text(
            "label,lambda,theta,poly,expected\n"
            'gaussian,-1,(1+sqrt(2))/1,"-1,1","2,2"\n'
        )
        json_path = tmp_path / "corpus.json"
        json_path.write_text(
            json.dumps(
                [
                    {
                        "label": "gaussian",
                        "lambda": "-1",
                        "theta": "(1+sqrt(2))/1",
                        "polynomials": ["-1,1"],
                        "expected_torsion": {"torsion": [2, 2], "free_rank": 0},
                    }
                ]
            )
        )
        assert load_corpus(str(csv_path)) == load_corpus(str(json_path))

    def test_expected_trivial_keyword(self, tmp_path):
        path = tmp_path / "corpus.csv"
        path.write_text(
            "label,lambda,matrix,poly,expected\n"
            'silver-fiber,2,"2,1;1,1","-1,1",trivial\n'
        )
        (entry,) = load_corpus(str(path))
        assert entry.expected_torsion == AbelianGroup(())
        report = run_entry(entry)
        # E_2 maps to y^2 = x^3 - x whose torsion is Z_2 + Z_2, while the
        # golden-period matrix has trivial Bowen-Franks group
        assert report.expected_match is False
        assert report.verdicts[0].verdict == "mismatch"

    def test_direct_ab_and_matrix_specs(self, tmp_path):
        path = tmp_path / "corpus.json"
        path.write_text(
            json.dumps(
                [
                    {
                        "label": "direct",
                        "a": -1,
                        "b": 0,
                        "matrix": "5,2;2,1",
                        "polynomials": ["-1,1"],
                    }
                ]
            )
        )
        (entry,) = load_corpus(str(path))
        report = run_entry(entry)
        assert report.computed_torsion == AbelianGroup((2, 2))
        assert report.verdicts[0].verdict == "match"

    def test_non_array_json_rejected(self, tmp_path):
        path = tmp_path / "corpus.json"
        path.write_text(json.dumps({"label": "x"}))
        with pytest.raises(CorpusError):
            load_corpus(str(path))

    def test_parse_poly_is_what_corpus_uses(self):
        assert parse_poly("-1,1") == IntPolynomial([-1, 1])
