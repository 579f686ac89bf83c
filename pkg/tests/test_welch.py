import math

import pytest

from utils.characters import MultCharIndex
from utils.codebook import CodebookError, build_c1, build_codebook
from utils.welch import (
    EvalReport,
    allowed_amplitudes,
    codebook_size,
    evaluate,
    ratio_error,
    ratio_formula_c1,
    ratio_formula_c2,
    welch_bound,
    welch_bound_c1,
    welch_bound_c2,
)
from conftest import field

TABLE_Q = [3, 4, 5, 7, 8, 9, 16, 64, 256]


# ---------------------------------------------------------
# Bounds and ratios
# ---------------------------------------------------------
def test_welch_bound_values():
    assert welch_bound(6, 6) == 0
    assert welch_bound(64, 12) == pytest.approx(math.sqrt(52 / 756))
    assert welch_bound(64, 12) == pytest.approx(0.262265, abs=1e-6)
    assert welch_bound(27, 6) == pytest.approx(math.sqrt(21 / 156))


@pytest.mark.parametrize("n,k", [(5, 6), (1, 1), (10, 0)])
def test_welch_bound_rejects(n, k):
    with pytest.raises(CodebookError):
        welch_bound(n, k)


@pytest.mark.parametrize("q", TABLE_Q)
def test_construction_bounds_match_general_formula(q):
    assert welch_bound_c1(q) == pytest.approx(welch_bound(q ** 3, q * (q - 1)), rel=1e-12)
    assert welch_bound_c2(q) == pytest.approx(welch_bound(q * q * (q - 1), q * (q - 1)), rel=1e-12)


@pytest.mark.parametrize("formula", [ratio_formula_c1, ratio_formula_c2])
def test_ratios_decrease_towards_one(formula):
    values = [formula(q) for q in TABLE_Q]
    assert all(x > y for x, y in zip(values, values[1:]))
    assert all(v > 1 for v in values)


def test_ratio_c1_at_64():
    assert ratio_formula_c1(64) < 1.02
    assert ratio_formula_c1(64) == pytest.approx(1.01575, abs=1e-5)


def test_ratio_rejects_small_q():
    with pytest.raises(CodebookError):
        ratio_formula_c2(1)


def test_sizes_and_amplitudes():
    assert codebook_size("C1", 4) == (64, 12)
    assert codebook_size("C2", 4) == (48, 12)
    assert codebook_size("C0", 3) == (54, 6)
    assert allowed_amplitudes("C1", 5) == [0.0, 0.25]
    assert allowed_amplitudes("C0", 5) == pytest.approx([0.0, 0.25, math.sqrt(5) / 4])
    with pytest.raises(CodebookError):
        codebook_size("C9", 3)


# ---------------------------------------------------------
# Evaluation
# ---------------------------------------------------------
@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
@pytest.mark.parametrize("construction", ["C1", "C2"])
def test_evaluation_matches_closed_form(construction, q):
    cb = build_codebook(field(q), construction)
    report = evaluate(cb, allow_large=True)
    assert report.N == cb.N and report.K == cb.K
    assert report.pairs == cb.N * (cb.N - 1) // 2
    assert report.i_max == pytest.approx(1 / (q - 1), abs=1e-9)
    assert report.i_max > report.i_w
    assert report.passed
    assert sum(count for _, count in report.spectrum) == report.pairs
    assert ratio_error(report) < 1e-9


@pytest.mark.parametrize("construction", ["C1", "C2"])
def test_fixed_parameter_does_not_matter(construction):
    spec = field(5)
    reports = [
        evaluate(build_codebook(spec, construction, fixed_j=v, fixed_b=v))
        for v in range(4)
    ]
    assert all(r.i_max == pytest.approx(reports[0].i_max, abs=1e-12) for r in reports)
    assert all([c for _, c in r.spectrum] == [c for _, c in reports[0].spectrum] for r in reports)


def test_exhaustive_is_independent_of_workers():
    cb = build_c1(field(5), MultCharIndex(1))
    one = evaluate(cb, workers=1, block_rows=16)
    four = evaluate(cb, workers=4, block_rows=16)
    assert one == four


def test_sampled_is_seeded():
    cb = build_c1(field(7), MultCharIndex(2))
    first = evaluate(cb, mode="sampled", samples=20_000, seed=11, workers=1)
    second = evaluate(cb, mode="sampled", samples=20_000, seed=11, workers=3)
    assert first == second
    assert first.pairs == 20_000
    assert first.mode == "sampled"
    assert first.i_max == pytest.approx(1 / 6, abs=1e-9)


def test_exhaustive_guard():
    cb = build_c1(field(5), MultCharIndex(1))
    with pytest.raises(CodebookError):
        evaluate(cb, exhaustive_max_n=100)
    assert evaluate(cb, exhaustive_max_n=100, allow_large=True).passed


def test_unknown_mode():
    with pytest.raises(CodebookError):
        evaluate(build_c1(field(3), MultCharIndex(1)), mode="partial")


@pytest.mark.parametrize("samples", [0, -5])
def test_sampled_needs_positive_sample_count(samples):
    cb = build_c1(field(3), MultCharIndex(1))
    with pytest.raises(CodebookError):
        evaluate(cb, mode="sampled", samples=samples)


def test_q2_is_degenerate():
    report = evaluate(build_codebook(field(2), "C1"))
    assert report.degenerate
    assert report.i_max == pytest.approx(1.0)


def test_c0_spectrum():
    report = evaluate(build_codebook(field(3), "C0"))
    assert report.passed
    assert report.i_max == pytest.approx(math.sqrt(3) / 2, abs=1e-9)
    assert ratio_error(report) is None


def test_report_dict_round_trip():
    report = evaluate(build_codebook(field(4), "C2"))
    assert EvalReport.from_dict(report.to_dict()) == report
    assert report.csv_row()[:3] == [4, 48, 12]
