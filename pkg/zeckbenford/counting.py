"""Exact combinatorics of legal strings.

Two independent routes are kept side by side: brute-force enumeration of
fixed-length legal strings (the oracle) and closed counts, either the
block-position product formula or digit-grammar state counting.
"""

import logging
import math
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, partial
from typing import Dict, Iterator, List, Optional, Tuple

from .const import (
    DEFAULT_BUDGET,
    DEFAULT_ORACLE_BOUND,
    ENV_BUDGET,
    METHOD_AUTOMATON,
    METHOD_ENUMERATION,
    METHOD_FORMULA,
    METHOD_RECURRENCE,
)
from .decomposition import START_STATE, DigitGrammar, decompose, iter_blocks
from .errors import (
    BoundaryRegime,
    BudgetExceeded,
    EmptyCondition,
    IncompleteSpec,
    IndexOutOfRange,
    MissingHValues,
    OutOfRange,
    Unrepresentable,
)
from .parallel import run_chunks
from .recurrence import (
    RecurrenceSpec,
    SequenceTable,
    burn_in_index,
    dominant_root,
    extend_table,
    fit_binet_constant,
    generate_sequence,
)

_LOGGER = logging.getLogger(__name__)

ORACLE_REPORT_LIMIT = 20
PREFIX_DEPTH = 2


# ---------------------------
#   SuperLegalTable
# ---------------------------
@dataclass(frozen=True)
class SuperLegalTable:
    """Counts H_1..H_N of fixed-length super-legal strings."""

    spec: RecurrenceSpec
    h_values: tuple
    method: str
    # All-zero strings are super-legal, so value 0 is counted in every H_n.
    convention: str = "fixed-length strings, zero string included"

    def as_dict(self) -> dict:
        return {
            "spec": self.spec.as_dict(),
            "method": self.method,
            "convention": self.convention,
            "h_values": [str(h) for h in self.h_values],
        }


# ---------------------------
#   BlockPositionCount
# ---------------------------
@dataclass(frozen=True)
class BlockPositionCount:
    """Number of m with a_j = k at position r of a length-ell block."""

    n: int
    j: int
    k: int
    ell: int
    r: int
    count: int
    method: str

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "j": self.j,
            "k": self.k,
            "ell": self.ell,
            "r": self.r,
            "count": str(self.count),
            "method": self.method,
        }


# ---------------------------
#   RatioReport
# ---------------------------
@dataclass(frozen=True)
class RatioReport:
    """H_n/G_n series with its tail estimate of B/A."""

    ns: tuple
    ratios: tuple
    floats: tuple
    deltas: tuple
    limit: float
    burn_in: int

    def as_dict(self) -> dict:
        return {
            "n": list(self.ns),
            "ratio": [f"{r.numerator}/{r.denominator}" for r in self.ratios],
            "ratio_float": list(self.floats),
            "delta": list(self.deltas),
            "limit": self.limit,
            "burn_in": self.burn_in,
        }


# ---------------------------
#   CoefficientDistribution
# ---------------------------
@dataclass(frozen=True)
class CoefficientDistribution:
    """Exact p_{j,k}(n) with denominator G_{n+1}, plus the j-free marginal p_k(n)."""

    n: int
    denominator: int
    probabilities: Dict[Tuple[int, int], Fraction]
    marginal: Dict[int, float] = field(default_factory=dict)
    method: str = METHOD_FORMULA

    def p(self, j: int, k: int) -> Fraction:
        return self.probabilities.get((j, k), Fraction(0))

    def row_sum(self, j: int) -> Fraction:
        return sum((val for (pos, _), val in self.probabilities.items() if pos == j), Fraction(0))

    def digits(self) -> List[int]:
        return sorted({k for _, k in self.probabilities})

    def interior_spread(self, k: int, low: Optional[int] = None, high: Optional[int] = None) -> float:
        """max/min - 1 of p_{j,k} over low < j < high (default log n margins)."""
        margin = math.ceil(math.log(self.n))
        low = margin if low is None else low
        high = self.n - margin if high is None else high
        values = [self.p(j, k) for j in range(low + 1, high)]
        if not values or min(values) == 0:
            return 0.0 if not values or max(values) == 0 else math.inf

        return float(max(values) / min(values) - 1)

    def rows(self) -> List[tuple]:
        """CSV rows n,j,k,numerator,denominator,float_value."""
        ret = []
        for (j, k), val in sorted(self.probabilities.items()):
            scaled = val * self.denominator
            ret.append((self.n, j, k, scaled.numerator, self.denominator, float(val)))

        return ret

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "denominator": str(self.denominator),
            "method": self.method,
            "marginal": {str(k): v for k, v in sorted(self.marginal.items())},
            "rows": [
                {"j": j, "k": k, "numerator": str(num), "float": fl}
                for _, j, k, num, _, fl in self.rows()
            ],
        }


# ---------------------------
#   ConditionalProbability
# ---------------------------
@dataclass(frozen=True)
class ConditionalProbability:
    """P(a_j = ell | a_i = k) with the unconditional p_{j,ell}(n) beside it."""

    probability: Fraction
    unconditional: Fraction
    ratio: Optional[float]

    def as_dict(self) -> dict:
        return {
            "probability": f"{self.probability.numerator}/{self.probability.denominator}",
            "probability_float": float(self.probability),
            "unconditional": f"{self.unconditional.numerator}/{self.unconditional.denominator}",
            "unconditional_float": float(self.unconditional),
            "ratio": self.ratio,
        }


# ---------------------------
#   OracleReport
# ---------------------------
@dataclass(frozen=True)
class OracleReport:
    """Bijection audit of fixed-length legal strings onto [0, G_{n+1})."""

    spec: RecurrenceSpec
    n: int
    count: int
    expected: int
    bijective: bool
    missing: tuple
    missing_count: int
    duplicated: tuple
    duplicated_count: int
    outside: int
    decompose_agrees: Optional[bool]

    def as_dict(self) -> dict:
        return {
            "spec": self.spec.as_dict(),
            "n": self.n,
            "count": str(self.count),
            "expected": str(self.expected),
            "bijective": self.bijective,
            "missing": [str(v) for v in self.missing],
            "missing_count": self.missing_count,
            "duplicated": [str(v) for v in self.duplicated],
            "duplicated_count": self.duplicated_count,
            "outside": self.outside,
            "decompose_agrees": self.decompose_agrees,
        }


# ---------------------------
#   resolve_budget
# ---------------------------
def resolve_budget(budget: Optional[int] = None) -> int:
    """Explicit budget, else ZECK_BUDGET, else the default."""
    if budget is not None:
        return int(budget)

    if env := os.environ.get(ENV_BUDGET):
        try:
            return int(env)
        except ValueError:
            _LOGGER.warning("Ignoring non-integer %s=%s", ENV_BUDGET, env)

    return DEFAULT_BUDGET


# ---------------------------
#   state_counts
# ---------------------------
@lru_cache(maxsize=64)
def state_counts(spec: RecurrenceSpec, length: int) -> tuple:
    """forward[t][r]: strings of length t ending in state r."""
    grammar = DigitGrammar(spec)
    forward = [[0] * (spec.order + 2)]
    forward[0][START_STATE] = 1
    for _ in range(length):
        row = [0] * (spec.order + 2)
        for state in grammar.states:
            if forward[-1][state]:
                for _, nxt in grammar.transitions(state):
                    row[nxt] += forward[-1][state]
        forward.append(row)

    return tuple(tuple(row) for row in forward)


# ---------------------------
#   completion_counts
# ---------------------------
@lru_cache(maxsize=64)
def completion_counts(spec: RecurrenceSpec, length: int) -> tuple:
    """backward[t][r]: legal completions of length t from state r."""
    grammar = DigitGrammar(spec)
    backward = [tuple(1 if state in grammar.states else 0 for state in range(spec.order + 2))]
    for _ in range(length):
        row = [0] * (spec.order + 2)
        for state in grammar.states:
            row[state] = sum(backward[-1][nxt] for _, nxt in grammar.transitions(state))
        backward.append(tuple(row))

    return tuple(backward)


# ---------------------------
#   legal_count
# ---------------------------
def legal_count(spec: RecurrenceSpec, n: int) -> int:
    """Number of fixed-length-n legal strings."""
    return completion_counts(spec, n)[n][START_STATE]


def check_budget(spec: RecurrenceSpec, n: int, budget: Optional[int], oracle_bound: Optional[int]):
    bound = DEFAULT_ORACLE_BOUND if oracle_bound is None else oracle_bound
    if n > bound:
        raise BudgetExceeded(f"n = {n} above oracle bound {bound}")

    budget = resolve_budget(budget)
    if (size := legal_count(spec, n)) > budget:
        raise BudgetExceeded(f"{size} strings above budget {budget}")


# ---------------------------
#   legal_prefixes
# ---------------------------
def legal_prefixes(spec: RecurrenceSpec, n: int, depth: int = PREFIX_DEPTH) -> List[tuple]:
    """Legal prefixes of length min(depth, n), in lexicographic order."""
    grammar = DigitGrammar(spec)
    level = [((), START_STATE)]
    for _ in range(min(depth, n)):
        level = [
            (digits + (digit,), nxt)
            for digits, state in level
            for digit, nxt in sorted(grammar.transitions(state))
        ]

    return [digits for digits, _ in level]


def walk_legal(spec: RecurrenceSpec, n: int, prefix: tuple = ()) -> Iterator[tuple]:
    """DFS over legal strings of length n extending prefix, lexicographic order."""
    grammar = DigitGrammar(spec)
    weights = generate_sequence(spec, max(n, 1)).g_values[:n][::-1]
    state = grammar.run(prefix)
    if state is None:
        return

    value = sum(a * w for a, w in zip(prefix, weights))
    stack = [(prefix, state, value)]
    while stack:
        digits, state, value = stack.pop()
        pos = len(digits)
        if pos == n:
            yield digits, value
            continue

        for digit, nxt in grammar.transitions(state):
            stack.append((digits + (digit,), nxt, value + digit * weights[pos]))


# ---------------------------
#   enumerate_legal
# ---------------------------
def enumerate_legal(
    spec: RecurrenceSpec,
    n: int,
    budget: Optional[int] = None,
    oracle_bound: Optional[int] = None,
) -> Iterator[tuple]:
    """Yield every fixed-length-n legal string once with its value."""
    check_budget(spec, n, budget, oracle_bound)
    _LOGGER.debug("Enumerating legal strings of length %s for %s", n, spec.coeffs)
    yield from walk_legal(spec, n)


def _enumerate_chunks(func, spec, n, budget, oracle_bound, workers):
    check_budget(spec, n, budget, oracle_bound)
    chunks = legal_prefixes(spec, n)
    return run_chunks(partial(func, spec, n), chunks, workers)


# ---------------------------
#   count_super_legal
# ---------------------------
def _super_legal_chunk(spec: RecurrenceSpec, n: int, prefix: tuple) -> int:
    grammar = DigitGrammar(spec)
    return sum(1 for digits, _ in walk_legal(spec, n, prefix) if grammar.run(digits) == START_STATE)


def _super_legal_by_enumeration(spec, n, budget, oracle_bound, workers) -> int:
    return sum(_enumerate_chunks(_super_legal_chunk, spec, n, budget, oracle_bound, workers))


def count_super_legal(
    spec: RecurrenceSpec,
    n: int,
    method: str = METHOD_RECURRENCE,
    budget: Optional[int] = None,
    oracle_bound: Optional[int] = None,
    workers: int = 1,
) -> SuperLegalTable:
    """H_1..H_n by enumeration or by the recurrence seeded from enumeration."""
    if n < 1:
        raise IndexOutOfRange(f"n = {n}")

    seeds = n if method == METHOD_ENUMERATION else min(n, spec.order)
    h_values = [
        _super_legal_by_enumeration(spec, t, budget, oracle_bound, workers)
        for t in range(1, seeds + 1)
    ]
    while len(h_values) < n:
        h_values.append(sum(spec.coeffs[i] * h_values[-1 - i] for i in range(spec.order)))

    return SuperLegalTable(spec, tuple(h_values), method)


# ---------------------------
#   ensure_h_values
# ---------------------------
def ensure_h_values(table: SequenceTable, n: Optional[int] = None) -> SequenceTable:
    """Return a table carrying at least n H values (default: table length)."""
    n = len(table) if n is None else n
    if table.h_values is not None and len(table.h_values) >= n:
        return table

    return table.with_h_values(count_super_legal(table.spec, max(n, 1)).h_values)


# ---------------------------
#   hn_gn_ratio
# ---------------------------
def hn_gn_ratio(table: SequenceTable, window: Optional[Tuple[int, int]] = None) -> RatioReport:
    """H_n/G_n over a window of indices (inclusive)."""
    if table.h_values is None:
        raise MissingHValues()

    start, stop = window if window else (1, min(len(table), len(table.h_values)))
    if start < 1 or stop > len(table.h_values) or stop > len(table) or start > stop:
        raise MissingHValues(f"window {start}..{stop}")

    ns = tuple(range(start, stop + 1))
    ratios = tuple(Fraction(table.h(n), table.g(n)) for n in ns)
    floats = tuple(float(r) for r in ratios)
    deltas = tuple(abs(floats[i + 1] - floats[i]) for i in range(len(floats) - 1))
    return RatioReport(ns, ratios, floats, deltas, floats[-1], burn_in_index(deltas, start=start))


# ---------------------------
#   block counts
# ---------------------------
def _check_block_indices(spec: RecurrenceSpec, n: int, j: int, k: int, ell: int, r: int):
    if not (1 <= r <= ell <= spec.order and 1 <= j <= n and k >= 0):
        raise IndexOutOfRange(f"n={n} j={j} k={k} ell={ell} r={r}")


def is_interior(spec: RecurrenceSpec, n: int, j: int, ell: int, r: int) -> bool:
    """True when no final condition-(1) block can occupy the block's slots."""
    end = j - r + ell
    if j - r < 0 or end > n:
        return False

    return end < n or ell == spec.order


def _block_weight(spec: RecurrenceSpec, k: int, ell: int, r: int) -> int:
    """Number of condition-(2) blocks of length ell with digit k at position r."""
    if r < ell:
        return spec.coeff(ell) if k == spec.coeff(r) else 0

    return 1 if k < spec.coeff(r) else 0


def _formula_count(table: SequenceTable, n: int, j: int, k: int, ell: int, r: int) -> int:
    weight = _block_weight(table.spec, k, ell, r)
    if not weight:
        return 0

    return weight * table.g(n - j - ell + r + 1) * table.h(j - r)


def _automaton_count(spec: RecurrenceSpec, n: int, j: int, k: int, ell: int, r: int) -> int:
    """Exact count in every regime from prefix and completion counts."""
    start = j - r
    end = start + ell
    if start < 0 or end > n:
        return 0

    prefix = state_counts(spec, start)[start][START_STATE]
    count = _block_weight(spec, k, ell, r) * prefix * legal_count(spec, n - end)
    if end == n and ell < spec.order and k == spec.coeff(r):
        count += prefix

    return count


def block_position_count(
    table: SequenceTable,
    n: int,
    j: int,
    k: int,
    ell: int,
    r: int,
    method: str = METHOD_FORMULA,
    budget: Optional[int] = None,
    workers: int = 1,
) -> BlockPositionCount:
    """N_{j,k,ell,r}(n) by formula, digit-grammar counting or enumeration."""
    spec = table.spec
    _check_block_indices(spec, n, j, k, ell, r)

    if method == METHOD_FORMULA:
        if not is_interior(spec, n, j, ell, r):
            raise BoundaryRegime(f"n={n} j={j} ell={ell} r={r}")
        table = ensure_h_values(extend_table(table, n), n)
        count = _formula_count(table, n, j, k, ell, r)
    elif method == METHOD_AUTOMATON:
        count = _automaton_count(spec, n, j, k, ell, r)
    else:
        count = block_position_census(spec, n, budget=budget, workers=workers)[(j, k, ell, r)]

    return BlockPositionCount(n, j, k, ell, r, count, method)


def _census_chunk(spec: RecurrenceSpec, n: int, prefix: tuple) -> Counter:
    grammar = DigitGrammar(spec)
    census = Counter()
    for digits, _ in walk_legal(spec, n, prefix):
        for start, block, _ in iter_blocks(digits, grammar):
            ell = len(block)
            for r, digit in enumerate(block, start=1):
                census[(start + r - 1, digit, ell, r)] += 1

    return census


# ---------------------------
#   block_position_census
# ---------------------------
def block_position_census(
    spec: RecurrenceSpec,
    n: int,
    budget: Optional[int] = None,
    oracle_bound: Optional[int] = None,
    workers: int = 1,
) -> Counter:
    """Enumerated counts keyed by (j, k, ell, r), padding zeros as length-1 blocks."""
    census = Counter()
    for part in _enumerate_chunks(_census_chunk, spec, n, budget, oracle_bound, workers):
        census.update(part)

    return census


# ---------------------------
#   Binet constants for G and H
# ---------------------------
@lru_cache(maxsize=32)
def binet_constants(spec: RecurrenceSpec, horizon: int = 0) -> tuple:
    """Return (lambda1, A, B) fitted on a table long enough for a stable tail."""
    size = max(horizon, 2 * spec.order + 60)
    lambda1 = dominant_root(spec)
    table = generate_sequence(spec, size)
    a_const = fit_binet_constant(table, lambda1).a_const
    h_values = count_super_legal(spec, size).h_values
    b_const = fit_binet_constant(SequenceTable(spec, h_values), lambda1).a_const
    return lambda1, a_const, b_const


# ---------------------------
#   limiting_digit_probabilities
# ---------------------------
def limiting_digit_probabilities(spec: RecurrenceSpec, n: Optional[int] = None) -> Dict[int, float]:
    """p_k from the Binet main terms; at finite n normalised by the exact G_{n+1}."""
    lambda1, a_const, b_const = binet_constants(spec)
    if n is not None:
        log_g_next = math.log(generate_sequence(spec, n + 1).g(n + 1))

    ret = {}
    for k in range(spec.max_coeff + 1):
        total = 0.0
        for ell in range(1, spec.order + 1):
            for r in range(1, ell + 1):
                if not (weight := _block_weight(spec, k, ell, r)):
                    continue

                if n is None:
                    total += weight * b_const * lambda1 ** (-ell)
                else:
                    total += weight * math.exp(
                        math.log(a_const * b_const) + (n - ell + 1) * math.log(lambda1) - log_g_next
                    )
        ret[k] = total

    return ret


# ---------------------------
#   require_complete
# ---------------------------
def require_complete(table: SequenceTable, n: int):
    """Raise IncompleteSpec unless length-n legal strings cover [0, G_{n+1})."""
    if legal_count(table.spec, n) != table.g(n + 1):
        raise IncompleteSpec(f"{legal_count(table.spec, n)} legal strings vs G_{n + 1} = {table.g(n + 1)}")


def _distribution_chunk(spec: RecurrenceSpec, n: int, prefix: tuple) -> Counter:
    tally = Counter()
    for digits, _ in walk_legal(spec, n, prefix):
        tally.update(enumerate(digits, start=1))

    return tally


# ---------------------------
#   coefficient_distribution
# ---------------------------
def coefficient_distribution(
    table: SequenceTable,
    n: int,
    method: str = METHOD_FORMULA,
    budget: Optional[int] = None,
    workers: int = 1,
) -> CoefficientDistribution:
    """Exact p_{j,k}(n) for every position j and digit k."""
    if n < 1:
        raise IndexOutOfRange(f"n = {n}")

    spec = table.spec
    table = ensure_h_values(extend_table(table, n), n)
    require_complete(table, n)
    denominator = table.g(n + 1)

    counts = Counter()
    if method == METHOD_ENUMERATION:
        for part in _enumerate_chunks(_distribution_chunk, spec, n, budget, None, workers):
            counts.update(part)
    else:
        for j in range(1, n + 1):
            for k in range(spec.max_coeff + 1):
                for ell in range(1, spec.order + 1):
                    for r in range(1, ell + 1):
                        if is_interior(spec, n, j, ell, r):
                            counts[(j, k)] += _formula_count(table, n, j, k, ell, r)
                        else:
                            counts[(j, k)] += _automaton_count(spec, n, j, k, ell, r)

    probabilities = {
        (j, k): Fraction(counts[(j, k)], denominator)
        for j in range(1, n + 1)
        for k in range(spec.max_coeff + 1)
    }
    marginal = limiting_digit_probabilities(spec, n) if len(table) >= 2 * spec.order else {}
    return CoefficientDistribution(n, denominator, probabilities, marginal, method)


# ---------------------------
#   conditional counts
# ---------------------------
def _constrained_count(spec: RecurrenceSpec, n: int, fixed: Dict[int, int]) -> int:
    """Legal strings of length n with a_pos = digit for every fixed pos."""
    grammar = DigitGrammar(spec)
    vector = {START_STATE: 1}
    for pos in range(1, n + 1):
        nxt_vector = Counter()
        for state, ways in vector.items():
            if pos in fixed:
                if (nxt := grammar.step(state, fixed[pos])) is not None:
                    nxt_vector[nxt] += ways
            else:
                for _, nxt in grammar.transitions(state):
                    nxt_vector[nxt] += ways
        vector = nxt_vector

    return sum(vector.values())


def _conditional_chunk(spec: RecurrenceSpec, n: int, i: int, j: int, prefix: tuple) -> Counter:
    tally = Counter()
    for digits, _ in walk_legal(spec, n, prefix):
        tally[(digits[i - 1], digits[j - 1])] += 1

    return tally


# ---------------------------
#   conditional_distribution
# ---------------------------
def conditional_distribution(
    table: SequenceTable,
    n: int,
    i: int,
    k: int,
    j: int,
    ell: int,
    method: str = METHOD_AUTOMATON,
    budget: Optional[int] = None,
    workers: int = 1,
) -> ConditionalProbability:
    """P(a_j = ell | a_i = k) for m uniform over fixed-length-n legal strings."""
    spec = table.spec
    if not 1 <= i < j <= n:
        raise IndexOutOfRange(f"i={i} j={j} n={n}")

    if method == METHOD_ENUMERATION:
        check_budget(spec, n, budget, None)
        tally = Counter()
        for part in run_chunks(partial(_conditional_chunk, spec, n, i, j), legal_prefixes(spec, n), workers):
            tally.update(part)
        condition = sum(v for (a_i, _), v in tally.items() if a_i == k)
        joint = tally[(k, ell)]
        marginal = sum(v for (_, a_j), v in tally.items() if a_j == ell)
    else:
        condition = _constrained_count(spec, n, {i: k})
        joint = _constrained_count(spec, n, {i: k, j: ell})
        marginal = _constrained_count(spec, n, {j: ell})

    if not condition:
        raise EmptyCondition(f"no string with a_{i} = {k}")

    probability = Fraction(joint, condition)
    unconditional = Fraction(marginal, legal_count(spec, n))
    ratio = float(probability / unconditional) if unconditional else None
    return ConditionalProbability(probability, unconditional, ratio)


# ---------------------------
#   block_end_distribution
# ---------------------------
def block_end_distribution(table: SequenceTable, n: int, i: int, k: int) -> Dict[int, Fraction]:
    """q_{i,r}(n): P(block containing a_i ends at a_{i+r} | a_i = k)."""
    spec = table.spec
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"i={i} n={n}")

    ends = Counter()
    for ell in range(1, spec.order + 1):
        for r in range(1, ell + 1):
            ends[ell - r] += _automaton_count(spec, n, i, k, ell, r)

    total = sum(ends.values())
    if not total:
        raise EmptyCondition(f"no string with a_{i} = {k}")

    return {offset: Fraction(ends[offset], total) for offset in range(spec.order)}


def _oracle_chunk(check: bool, spec: RecurrenceSpec, n: int, prefix: tuple) -> tuple:
    table = generate_sequence(spec, max(n, spec.order))
    values = []
    agrees = True
    for digits, value in walk_legal(spec, n, prefix):
        values.append(value)
        if check and agrees:
            try:
                agrees = decompose(value, table, width=n).padded(n) == digits
            except (OutOfRange, Unrepresentable):
                agrees = False

    return values, agrees


# ---------------------------
#   bijection_oracle
# ---------------------------
def bijection_oracle(
    spec: RecurrenceSpec,
    n: int,
    budget: Optional[int] = None,
    oracle_bound: Optional[int] = None,
    check_decompose: bool = True,
    workers: int = 1,
) -> OracleReport:
    """Audit that legal strings of length n map bijectively onto [0, G_{n+1})."""
    expected = generate_sequence(spec, max(n, spec.order)).g(n + 1)
    parts = _enumerate_chunks(
        partial(_oracle_chunk, check_decompose), spec, n, budget, oracle_bound, workers
    )

    seen = bytearray(expected)
    outside = 0
    duplicated = []
    duplicated_count = 0
    count = 0
    for values, _ in parts:
        for value in values:
            count += 1
            if not 0 <= value < expected:
                outside += 1
                continue
            if seen[value]:
                duplicated_count += 1
                if len(duplicated) < ORACLE_REPORT_LIMIT:
                    duplicated.append(value)
            seen[value] = 1

    missing_count = seen.count(0)
    missing = []
    pos = seen.find(0)
    while pos != -1 and len(missing) < ORACLE_REPORT_LIMIT:
        missing.append(pos)
        pos = seen.find(0, pos + 1)

    bijective = count == expected and not missing_count and not duplicated_count and not outside
    agrees = all(part[1] for part in parts) if check_decompose else None
    if not bijective:
        _LOGGER.warning(
            "Coeffs %s with initial terms %s are not complete at n = %s (%s missing)",
            spec.coeffs, spec.initial_terms, n, missing_count,
        )

    return OracleReport(
        spec, n, count, expected, bijective, tuple(missing), missing_count,
        tuple(duplicated), duplicated_count, outside, agrees,
    )
