"""Tests for seeded sampling, summand statistics and concentration."""

import math
from fractions import Fraction

import pytest

from zeckbenford.benford import SetPredicate
from zeckbenford.counting import coefficient_distribution
from zeckbenford.errors import DegenerateSample, IncompleteSpec, OutOfRange
from zeckbenford.recurrence import generate_sequence
from zeckbenford.stochastic import (
    PLAN_EXACT,
    PLAN_SAMPLED,
    chi_square_self_test,
    concentration,
    estimate_summand_constant,
    position_mask,
    sample_uniform,
    summand_digit_report,
    xy_stats,
)

SUMMAND_CONSTANT = (5 - math.sqrt(5)) / 10


def test_samples_in_range(fib_table):
    upper = fib_table.g(31)
    samples = sample_uniform(fib_table, 30, seed=5, count=1000)
    assert len(samples) == 1000
    assert all(0 <= m < upper for m in samples)
    assert len(set(samples)) > 990


def test_samples_deterministic(fib_table):
    first = sample_uniform(fib_table, 30, seed=123, count=600)
    assert first == sample_uniform(fib_table, 30, seed=123, count=600)
    assert first == sample_uniform(fib_table, 30, seed=123, count=600, workers=2)
    assert first[:100] == sample_uniform(fib_table, 30, seed=123, count=100)
    assert first != sample_uniform(fib_table, 30, seed=124, count=600)


def test_samples_big_range(fibonacci):
    table = generate_sequence(fibonacci, 500)
    samples = sample_uniform(table, 499, seed=1, count=50)
    assert all(0 <= m < table.g(500) for m in samples)
    assert max(samples).bit_length() > table.g(500).bit_length() - 8


@pytest.mark.slow
def test_chi_square_self_test(fib_table):
    report = chi_square_self_test(fib_table, 19, seed=42, count=10**5)
    assert report.buckets == 20
    assert report.p_value > 0.001


def test_chi_square_degenerate(fib_table):
    with pytest.raises(DegenerateSample):
        chi_square_self_test(fib_table, 5, seed=1, count=1)


def test_position_mask(fib_table):
    # T_n holds j with G_{n+1-j} even: G_2 = 2, G_5 = 8
    assert position_mask(fib_table, 5, SetPredicate.even()) == (True, False, False, True, False)


def test_exact_x_mean_fibonacci_16(fib_table):
    report = xy_stats(fib_table, 16, SetPredicate.universal(), PLAN_EXACT)
    x_mean = report.stats["x_mean"]
    assert x_mean == Fraction(5911, 1292)
    assert abs(x_mean / 16 - SUMMAND_CONSTANT) < 0.2 / 16
    assert report.sample_count == 2584

    dist = coefficient_distribution(fib_table, 16)
    assert x_mean == sum(k * dist.p(j, k) for j in range(1, 17) for k in dist.digits())


def test_exact_universal_predicate(fib_table):
    stats = xy_stats(fib_table, 12, SetPredicate.universal()).stats
    assert stats["y_mean"] == stats["x_mean"]
    assert stats["y_var"] == stats["x_var"]
    assert stats["ratio_mean"] == 1
    assert stats["zero_count"] == 1


def test_exact_empty_predicate(fib_table):
    stats = xy_stats(fib_table, 12, SetPredicate.explicit_index_set([])).stats
    assert stats["y_mean"] == 0
    assert stats["y_var"] == 0


def test_exact_variance_trend(fib_table):
    ratios = [xy_stats(fib_table, n, SetPredicate.universal()).stats["x_var"] / n**2 for n in (10, 12, 14, 16)]
    assert all(v > 0 for v in ratios)
    assert all(a > b for a, b in zip(ratios, ratios[1:]))


def test_summand_constant_slope(fib_table):
    slope, reports = estimate_summand_constant(fib_table, [10, 12, 14, 16])
    assert abs(slope - 0.27639) < 0.005
    assert [report.n for report in reports] == [10, 12, 14, 16]
    with pytest.raises(DegenerateSample):
        estimate_summand_constant(fib_table, [10])


def test_sampled_matches_exact(fib_table):
    exact = xy_stats(fib_table, 16, SetPredicate.even())
    sampled = xy_stats(fib_table, 16, SetPredicate.even(), PLAN_SAMPLED, seed=7, count=2000)
    for name in ("x", "y"):
        gap = abs(sampled.stats[f"{name}_mean"] - float(exact.stats[f"{name}_mean"]))
        assert gap < 3 * sampled.stats[f"{name}_se"]


def test_sampled_invariants(fib_table):
    report = xy_stats(fib_table, 30, SetPredicate.even(), PLAN_SAMPLED, seed=3, count=500)
    assert all(0 <= y <= x for x, y in zip(report.x_values, report.y_values))
    assert report.stats["x_var"] >= 0
    assert report.stats["y_var"] >= 0
    payload = report.as_dict(include_samples=True)
    assert payload["count"] == 500
    assert len(payload["x"]) == 500
    assert "x" not in report.as_dict()


def test_sampled_worker_independent(fib_table):
    args = (fib_table, 30, SetPredicate.even(), PLAN_SAMPLED, 11, 700)
    assert xy_stats(*args).as_dict(True) == xy_stats(*args, workers=2).as_dict(True)


def test_sampled_degenerate(fib_table):
    with pytest.raises(DegenerateSample):
        xy_stats(fib_table, 10, SetPredicate.even(), PLAN_SAMPLED, seed=1, count=1)


@pytest.mark.slow
def test_even_ratio_mean(fibonacci):
    table = generate_sequence(fibonacci, 1000)
    report = xy_stats(table, 1000, SetPredicate.even(), PLAN_SAMPLED, seed=42, count=2000)
    assert abs(report.stats["ratio_mean"] - 1 / 3) < 0.02


@pytest.mark.slow
def test_concentration_even(fibonacci):
    table = generate_sequence(fibonacci, 2000)
    report = concentration(table, [500, 1000, 2000], SetPredicate.even(), 0.05, seed=42, count=2000)
    fractions = report.fractions
    assert report.density == pytest.approx(1 / 3, abs=1e-3)
    assert fractions[1] >= 0.9
    assert all(b >= a - 0.02 for a, b in zip(fractions, fractions[1:]))
    assert all(row["excluded_zero"] + row["valid"] == 2000 for row in report.rows)


@pytest.mark.slow
def test_leading_digit_ratio_mean(fibonacci):
    table = generate_sequence(fibonacci, 2000)
    pred = SetPredicate.leading_digit(10, 1)
    report = xy_stats(table, 2000, pred, PLAN_SAMPLED, seed=42, count=500)
    assert abs(report.stats["ratio_mean"] - 0.30103) < 0.02


def test_concentration_trivial_cases(fib_table):
    wide = concentration(fib_table, [20, 30], SetPredicate.even(), 1.0, seed=9, count=200)
    assert wide.fractions == [1.0, 1.0]
    universal = concentration(fib_table, [30], SetPredicate.universal(), 0.01, seed=9, count=200)
    assert universal.density == 1.0
    assert universal.fractions == [1.0]
    given = concentration(fib_table, [30], SetPredicate.even(), 0.5, seed=9, count=50, density=0.25)
    assert given.density_source == "given"


def test_concentration_bad_epsilon(fib_table):
    with pytest.raises(OutOfRange):
        concentration(fib_table, [20], SetPredicate.even(), 0, seed=1, count=10)


@pytest.mark.slow
def test_summand_digit_report(fibonacci):
    histogram = summand_digit_report(generate_sequence(fibonacci, 2000), 2000, 10, seed=42, count=500)
    assert abs(histogram.frequencies[1] - 0.30103) < 0.01
    assert sum(histogram.frequencies.values()) == pytest.approx(1.0)


def test_summand_digit_report_base_2(fib_table):
    histogram = summand_digit_report(fib_table, 30, 2, seed=1, count=100)
    assert histogram.frequencies == {1: 1.0}
    assert histogram.targets[1] == pytest.approx(1.0)
    assert histogram.sup_gap == pytest.approx(0.0, abs=1e-12)


def test_exact_stats_incomplete_spec(example_table):
    with pytest.raises(IncompleteSpec):
        xy_stats(example_table, 5, SetPredicate.universal(), PLAN_EXACT)


def test_summand_constant_on_reports(fib_table):
    slope, reports = estimate_summand_constant(fib_table, [10, 12])
    assert all(report.c_estimate == slope for report in reports)
    assert reports[0].as_dict()["c_estimate"] == slope
    assert xy_stats(fib_table, 10, SetPredicate.universal()).c_estimate is None
