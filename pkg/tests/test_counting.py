"""Tests for enumeration oracles, super-legal counts and coefficient distributions."""

from fractions import Fraction

import pytest

from zeckbenford.const import BUILTIN_SPECS
from zeckbenford.counting import (
    bijection_oracle,
    block_end_distribution,
    block_position_census,
    block_position_count,
    coefficient_distribution,
    conditional_distribution,
    count_super_legal,
    enumerate_legal,
    ensure_h_values,
    hn_gn_ratio,
    is_interior,
    legal_count,
    legal_prefixes,
    limiting_digit_probabilities,
    resolve_budget,
)
from zeckbenford.decomposition import is_super_legal
from zeckbenford.errors import (
    BoundaryRegime,
    BudgetExceeded,
    EmptyCondition,
    IncompleteSpec,
    IndexOutOfRange,
    MissingHValues,
)
from zeckbenford.recurrence import generate_sequence, validate_spec


def _h_table(spec, n):
    return ensure_h_values(generate_sequence(spec, n + 1), n + 1)


def _digit_slots(spec):
    for k in range(spec.max_coeff + 2):
        for ell in range(1, spec.order + 1):
            for r in range(1, ell + 1):
                yield k, ell, r


def _block_keys(spec, n):
    for j in range(1, n + 1):
        for k, ell, r in _digit_slots(spec):
            yield j, k, ell, r


# ---------------------------
#   enumeration
# ---------------------------
def test_enumerate_fibonacci_3(fibonacci):
    assert list(enumerate_legal(fibonacci, 3)) == [
        ((0, 0, 0), 0),
        ((0, 0, 1), 1),
        ((0, 1, 0), 2),
        ((1, 0, 0), 3),
        ((1, 0, 1), 4),
    ]


def test_enumerate_canonical_123_2(canonical_123):
    values = sorted(value for _, value in enumerate_legal(canonical_123, 2))
    assert values == [0, 1, 2, 3, 4]


def test_enumerate_budget(fibonacci, monkeypatch):
    with pytest.raises(BudgetExceeded):
        list(enumerate_legal(fibonacci, 19))
    with pytest.raises(BudgetExceeded):
        list(enumerate_legal(fibonacci, 10, budget=50))

    monkeypatch.setenv("ZECK_BUDGET", "50")
    with pytest.raises(BudgetExceeded):
        list(enumerate_legal(fibonacci, 10))


def test_resolve_budget(monkeypatch):
    monkeypatch.delenv("ZECK_BUDGET", raising=False)
    assert resolve_budget() == 10**7
    assert resolve_budget(12) == 12
    monkeypatch.setenv("ZECK_BUDGET", "1000")
    assert resolve_budget() == 1000
    monkeypatch.setenv("ZECK_BUDGET", "lots")
    assert resolve_budget() == 10**7


def test_legal_prefixes_partition(canonical_21):
    prefixes = legal_prefixes(canonical_21, 6)
    assert prefixes == sorted(prefixes)
    total = sum(1 for _ in enumerate_legal(canonical_21, 6))
    assert total == legal_count(canonical_21, 6)
    assert legal_prefixes(canonical_21, 0) == [()]


def test_example_not_bijective(example):
    report = bijection_oracle(example, 2)
    assert not report.bijective
    assert report.count == 5
    assert report.expected == 8
    assert report.missing[0] == 2
    assert report.missing == (2, 6, 7)
    assert report.decompose_agrees is True


def test_oracle_report_as_dict(fibonacci):
    payload = bijection_oracle(fibonacci, 6).as_dict()
    assert payload["bijective"] is True
    assert payload["count"] == payload["expected"] == "21"
    assert payload["missing"] == []


@pytest.mark.slow
@pytest.mark.parametrize("n", range(1, 16))
def test_bijection_oracle(complete_spec, n):
    report = bijection_oracle(complete_spec, n)
    assert report.bijective
    assert report.count == generate_sequence(complete_spec, n + 1).g(n + 1)
    assert report.decompose_agrees


def test_oracle_worker_independent(canonical_123):
    single = bijection_oracle(canonical_123, 8, workers=1)
    pooled = bijection_oracle(canonical_123, 8, workers=2)
    assert single == pooled


# ---------------------------
#   super-legal counts
# ---------------------------
def test_fibonacci_h_equals_g(fibonacci):
    table = count_super_legal(fibonacci, 15, "enumeration")
    assert table.h_values == generate_sequence(fibonacci, 15).g_values
    assert table.h_values[:5] == (1, 2, 3, 5, 8)


def test_example_h_values(example):
    table = count_super_legal(example, 4)
    assert table.h_values == (1, 3, 8, 17)
    assert table.method == "recurrence"


@pytest.mark.slow
def test_h_recurrence_matches_enumeration(complete_spec):
    enumerated = count_super_legal(complete_spec, 15, "enumeration")
    recurred = count_super_legal(complete_spec, 15, "recurrence")
    assert enumerated.h_values == recurred.h_values


def test_h_counts_super_legal_strings(canonical_21):
    for n in range(1, 7):
        direct = sum(1 for digits, _ in enumerate_legal(canonical_21, n) if is_super_legal(digits, canonical_21))
        assert count_super_legal(canonical_21, n).h_values[-1] == direct


def test_count_super_legal_bad_n(fibonacci):
    with pytest.raises(IndexOutOfRange):
        count_super_legal(fibonacci, 0)


def test_super_legal_table_as_dict(fibonacci):
    payload = count_super_legal(fibonacci, 3).as_dict()
    assert payload["h_values"] == ["1", "2", "3"]
    assert "zero string" in payload["convention"]


# ---------------------------
#   ratio
# ---------------------------
@pytest.mark.parametrize("name", ["fibonacci", "example"])
def test_ratio_identically_one(name):
    spec = validate_spec(*BUILTIN_SPECS[name])
    report = hn_gn_ratio(_h_table(spec, 40))
    assert set(report.ratios) == {Fraction(1)}
    assert report.limit == 1.0


def test_ratio_canonical_123_converges(canonical_123):
    report = hn_gn_ratio(_h_table(canonical_123, 60), (1, 60))
    assert report.limit > 0
    assert report.deltas[-1] < 1e-8
    assert report.burn_in < 60


def test_ratio_missing_h(fib_table):
    with pytest.raises(MissingHValues):
        hn_gn_ratio(fib_table)
    with pytest.raises(MissingHValues):
        hn_gn_ratio(_h_table(fib_table.spec, 10), (1, 50))


# ---------------------------
#   block counts
# ---------------------------
def test_worked_block_count(fibonacci):
    table = _h_table(fibonacci, 5)
    for method in ("formula", "automaton", "enumeration"):
        assert block_position_count(table, 5, 2, 1, 2, 1, method).count == 3

    assert block_position_count(table, 5, 2, 1, 2, 2).count == 0
    assert block_position_count(table, 5, 2, 2, 2, 1).count == 0


def test_block_count_errors(fibonacci):
    table = _h_table(fibonacci, 5)
    with pytest.raises(BoundaryRegime):
        block_position_count(table, 5, 5, 1, 1, 1)
    with pytest.raises(IndexOutOfRange):
        block_position_count(table, 5, 2, 1, 1, 2)
    with pytest.raises(IndexOutOfRange):
        block_position_count(table, 5, 2, 1, 3, 1)
    with pytest.raises(IndexOutOfRange):
        block_position_count(table, 5, 6, 1, 1, 1)


def test_is_interior(canonical_123):
    assert is_interior(canonical_123, 10, 3, 2, 1)
    assert not is_interior(canonical_123, 10, 10, 2, 1)
    assert is_interior(canonical_123, 10, 10, 3, 3)
    assert not is_interior(canonical_123, 10, 1, 2, 2)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["fibonacci", "canonical-123"])
def test_formula_matches_enumeration(name):
    spec = validate_spec(*BUILTIN_SPECS[name])
    table = _h_table(spec, 14)
    for n in range(1, 15):
        census = block_position_census(spec, n)
        for j, k, ell, r in _block_keys(spec, n):
            if is_interior(spec, n, j, ell, r):
                assert block_position_count(table, n, j, k, ell, r).count == census[(j, k, ell, r)]


@pytest.mark.parametrize("name", ["fibonacci", "example", "canonical-123", "canonical-21"])
def test_automaton_matches_enumeration_everywhere(name):
    spec = validate_spec(*BUILTIN_SPECS[name])
    table = generate_sequence(spec, 10)
    for n in range(1, 10):
        census = block_position_census(spec, n)
        for j, k, ell, r in _block_keys(spec, n):
            count = block_position_count(table, n, j, k, ell, r, "automaton").count
            assert count == census[(j, k, ell, r)]


def test_partition_property(complete_spec):
    table = generate_sequence(complete_spec, 30)
    n = 25
    for j in range(1, n + 1):
        total = sum(
            block_position_count(table, n, j, k, ell, r, "automaton").count
            for k, ell, r in _digit_slots(complete_spec)
        )
        assert total == table.g(n + 1)


# ---------------------------
#   coefficient distribution
# ---------------------------
def test_distribution_rows_sum_to_one(fib_table):
    dist = coefficient_distribution(fib_table, 12)
    assert all(dist.row_sum(j) == 1 for j in range(1, 13))
    assert dist.denominator == 377
    assert dist.p(3, 2) == 0


def test_distribution_fibonacci_20(fib_table):
    dist = coefficient_distribution(fib_table, 20)
    assert dist.p(10, 1) == Fraction(4895, 17711)
    assert float(dist.p(10, 1)) == pytest.approx(0.2764, abs=1e-4)


def test_distribution_rows_csv(fib_table):
    dist = coefficient_distribution(fib_table, 4)
    rows = dist.rows()
    assert rows[0] == (4, 1, 0, 5, 8, 0.625)
    assert len(rows) == 8


@pytest.mark.parametrize("name", ["fibonacci", "canonical-123"])
def test_distribution_formula_matches_enumeration(name):
    spec = validate_spec(*BUILTIN_SPECS[name])
    table = generate_sequence(spec, 14)
    formula = coefficient_distribution(table, 14, "formula")
    enumerated = coefficient_distribution(table, 14, "enumeration")
    assert formula.probabilities == enumerated.probabilities


def test_distribution_flat_fibonacci_200(fibonacci):
    dist = coefficient_distribution(generate_sequence(fibonacci, 10), 200)
    assert dist.interior_spread(1) < 0.01
    assert dist.interior_spread(0) < 0.01
    assert dist.marginal[1] == pytest.approx(float(dist.p(100, 1)), rel=1e-6)


def test_distribution_flat_canonical_123_200(canonical_123):
    dist = coefficient_distribution(generate_sequence(canonical_123, 10), 200)
    for k in range(canonical_123.max_coeff + 1):
        assert dist.interior_spread(k, 20, 180) < 0.01
    assert all(dist.row_sum(j) == 1 for j in (1, 2, 100, 199, 200))


def test_distribution_incomplete_spec(example_table):
    with pytest.raises(IncompleteSpec):
        coefficient_distribution(example_table, 5)


def test_limiting_probabilities_fibonacci(fibonacci):
    limits = limiting_digit_probabilities(fibonacci)
    assert limits[1] == pytest.approx((5 - 5**0.5) / 10, rel=1e-9)
    assert sum(limits.values()) == pytest.approx(1.0, rel=1e-9)


# ---------------------------
#   conditional
# ---------------------------
def test_conditional_near_unconditional(fib_table):
    result = conditional_distribution(fib_table, 16, 3, 1, 10, 1)
    assert result.unconditional == Fraction(715, 2584)
    assert abs(result.ratio - 1) < 0.05


def test_conditional_methods_agree(fib_table):
    automaton = conditional_distribution(fib_table, 16, 3, 1, 10, 1)
    enumerated = conditional_distribution(fib_table, 16, 3, 1, 10, 1, method="enumeration")
    assert automaton == enumerated


def test_conditional_zero_cases(fib_table):
    assert conditional_distribution(fib_table, 16, 3, 1, 10, 2).probability == 0
    assert conditional_distribution(fib_table, 16, 3, 1, 4, 1).probability == 0


def test_conditional_errors(fib_table):
    with pytest.raises(EmptyCondition):
        conditional_distribution(fib_table, 16, 3, 2, 10, 1)
    with pytest.raises(IndexOutOfRange):
        conditional_distribution(fib_table, 16, 10, 1, 3, 1)
    with pytest.raises(IndexOutOfRange):
        conditional_distribution(fib_table, 16, 3, 1, 17, 1)


def test_block_end_distribution(complete_spec):
    table = generate_sequence(complete_spec, 20)
    for k in range(complete_spec.max_coeff + 1):
        try:
            ends = block_end_distribution(table, 12, 5, k)
        except EmptyCondition:
            continue
        assert sum(ends.values()) == 1
        assert set(ends) == set(range(complete_spec.order))


def test_block_end_fibonacci(fib_table):
    assert block_end_distribution(fib_table, 12, 5, 1) == {0: 0, 1: 1}
    assert block_end_distribution(fib_table, 12, 5, 0) == {0: 1, 1: 0}
    with pytest.raises(EmptyCondition):
        block_end_distribution(fib_table, 12, 5, 2)
