"""Significands, Benford targets, density predicates and equidistribution checks."""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence

import numpy as np

from .const import DEFAULT_BASE, DISCREPANCY_CHECKPOINTS
from .errors import DigitOutOfRange, IndexOutOfRange, InvalidPredicate, NonPositiveInput
from .recurrence import SequenceTable, dominant_root, extend_table

_LOGGER = logging.getLogger(__name__)

KIND_LEADING_DIGIT = "leading_digit"
KIND_SIGNIFICAND = "significand_at_most"
KIND_RESIDUE = "residue"
KIND_INDEX_SET = "explicit_index_set"
KIND_UNIVERSAL = "universal"

LOG_RATIONAL_MAX_DENOMINATOR = 12
LOG_RATIONAL_TOLERANCE = 1e-9


# ---------------------------
#   exponent
# ---------------------------
def _exponent(x, base: int) -> int:
    """Largest k with base**k <= x, exact for integers."""
    k = math.floor(math.log(x) / math.log(base))
    while base ** (k + 1) <= x:
        k += 1
    while base**k > x:
        k -= 1

    return k


def _check_input(x, base: int):
    if base < 2:
        raise DigitOutOfRange(f"base {base}")

    if isinstance(x, bool) or x <= 0:
        raise NonPositiveInput(str(x))


# ---------------------------
#   significand
# ---------------------------
def significand(x, base: int = DEFAULT_BASE) -> float:
    """S_B(x) in [1, B) with x = S_B(x) * B**k."""
    _check_input(x, base)
    k = _exponent(x, base)
    if isinstance(x, int):
        return float(Fraction(x, base**k))

    return x / base**k


# ---------------------------
#   leading_digit
# ---------------------------
def leading_digit(x, base: int = DEFAULT_BASE) -> int:
    """First base-B digit of x."""
    _check_input(x, base)
    if isinstance(x, int):
        return x // base ** _exponent(x, base)

    return min(int(significand(x, base)), base - 1)


# ---------------------------
#   benford_target
# ---------------------------
def benford_target(base: int, digit: int) -> float:
    """log_B(1 + 1/d)."""
    if base < 2 or not 1 <= digit < base:
        raise DigitOutOfRange(f"base {base}, digit {digit}")

    return math.log1p(1 / digit) / math.log(base)


# ---------------------------
#   significand_target
# ---------------------------
def significand_target(base: int, s: float) -> float:
    """log_B(s): Benford probability that the significand is at most s."""
    if base < 2 or not 1 <= s <= base:
        raise DigitOutOfRange(f"base {base}, significand {s}")

    return math.log(s) / math.log(base)


# ---------------------------
#   SetPredicate
# ---------------------------
@dataclass(frozen=True)
class SetPredicate:
    """Membership test for sequence elements, optionally by index."""

    kind: str
    params: tuple = ()

    @classmethod
    def leading_digit(cls, base: int, digit: int) -> "SetPredicate":
        if base < 2 or not 1 <= digit < base:
            raise InvalidPredicate(f"leading digit {digit} in base {base}")
        return cls(KIND_LEADING_DIGIT, (base, digit))

    @classmethod
    def significand_at_most(cls, base: int, s: float) -> "SetPredicate":
        if base < 2 or not 1 <= s <= base:
            raise InvalidPredicate(f"significand {s} in base {base}")
        return cls(KIND_SIGNIFICAND, (base, float(s)))

    @classmethod
    def residue(cls, modulus: int, classes) -> "SetPredicate":
        if modulus < 1 or not classes:
            raise InvalidPredicate(f"residue classes {classes} mod {modulus}")
        return cls(KIND_RESIDUE, (modulus, frozenset(c % modulus for c in classes)))

    @classmethod
    def explicit_index_set(cls, indices) -> "SetPredicate":
        indices = frozenset(int(i) for i in indices)
        if any(i < 1 for i in indices):
            raise InvalidPredicate("indices must be positive")
        return cls(KIND_INDEX_SET, (indices,))

    @classmethod
    def universal(cls) -> "SetPredicate":
        return cls(KIND_UNIVERSAL)

    @classmethod
    def even(cls) -> "SetPredicate":
        return cls.residue(2, (0,))

    def __call__(self, value: int, index: Optional[int] = None) -> bool:
        if self.kind == KIND_UNIVERSAL:
            return True

        if self.kind == KIND_LEADING_DIGIT:
            return leading_digit(value, self.params[0]) == self.params[1]

        if self.kind == KIND_SIGNIFICAND:
            return significand(value, self.params[0]) <= self.params[1]

        if self.kind == KIND_RESIDUE:
            return value % self.params[0] in self.params[1]

        if self.kind == KIND_INDEX_SET:
            if index is None:
                raise InvalidPredicate("index set needs element indices")
            return index in self.params[0]

        raise InvalidPredicate(self.kind)

    @property
    def limit_hint(self) -> Optional[float]:
        """Expected density for Benford sequences, when known a priori."""
        if self.kind == KIND_UNIVERSAL:
            return 1.0

        if self.kind == KIND_LEADING_DIGIT:
            return benford_target(*self.params)

        if self.kind == KIND_SIGNIFICAND:
            return significand_target(*self.params)

        return None

    def as_dict(self) -> dict:
        params = []
        for param in self.params:
            params.append(sorted(param) if isinstance(param, frozenset) else param)

        return {"kind": self.kind, "params": params}


# ---------------------------
#   DensityEstimate
# ---------------------------
@dataclass(frozen=True)
class DensityEstimate:
    n: int
    hits: int
    q_sn: Fraction
    limit_hint: Optional[float] = None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "hits": self.hits,
            "q_sn": self.q_sn,
            "limit_hint": self.limit_hint,
        }


# ---------------------------
#   density_qsn
# ---------------------------
def density_qsn(pred: SetPredicate, table: SequenceTable, n: int) -> DensityEstimate:
    """Exact fraction of G_1..G_n satisfying pred."""
    if n < 1:
        raise IndexOutOfRange(f"n = {n}")

    table = extend_table(table, n)
    hits = sum(1 for i in range(1, n + 1) if pred(table.g(i), i))
    return DensityEstimate(n, hits, Fraction(hits, n), pred.limit_hint)


# ---------------------------
#   star_discrepancy
# ---------------------------
def star_discrepancy(points: Sequence[float]) -> float:
    """D*_N of points in [0, 1)."""
    x = np.sort(np.asarray(points, dtype=float))
    size = len(x)
    if not size:
        return 0.0

    i = np.arange(1, size + 1)
    return float(np.max(np.maximum(i / size - x, x - (i - 1) / size)))


# ---------------------------
#   log_rationality
# ---------------------------
def log_rationality(lambda1: float, base: int) -> Optional[Fraction]:
    """Small-denominator p/q with lambda1**q = B**p, if any."""
    if lambda1 <= 1:
        return Fraction(0)

    value = math.log(lambda1) / math.log(base)
    approx = Fraction(value).limit_denominator(LOG_RATIONAL_MAX_DENOMINATOR)
    if abs(float(approx) - value) < LOG_RATIONAL_TOLERANCE:
        return approx

    return None


# ---------------------------
#   DigitHistogram
# ---------------------------
@dataclass(frozen=True)
class DigitHistogram:
    """Leading-digit counts against Benford targets."""

    base: int
    counts: Dict[int, int]
    total: int

    @property
    def frequencies(self) -> Dict[int, float]:
        if not self.total:
            return {d: 0.0 for d in self.counts}

        return {d: c / self.total for d, c in self.counts.items()}

    @property
    def targets(self) -> Dict[int, float]:
        return {d: benford_target(self.base, d) for d in self.counts}

    @property
    def sup_gap(self) -> float:
        freq = self.frequencies
        return max(abs(freq[d] - t) for d, t in self.targets.items())

    def rows(self) -> list:
        """CSV rows digit,frequency,target."""
        freq = self.frequencies
        return [(d, freq[d], t) for d, t in self.targets.items()]

    def as_dict(self) -> dict:
        return {
            "base": self.base,
            "total": self.total,
            "counts": {str(d): c for d, c in self.counts.items()},
            "frequencies": {str(d): f for d, f in self.frequencies.items()},
            "targets": {str(d): t for d, t in self.targets.items()},
            "sup_gap": self.sup_gap,
        }


def digit_histogram(values, base: int, weights=None) -> DigitHistogram:
    """Histogram of leading digits, each value counted weight times."""
    counts = {d: 0 for d in range(1, base)}
    weights = weights if weights is not None else [1] * len(values)
    for value, weight in zip(values, weights):
        if weight:
            counts[leading_digit(value, base)] += weight

    return DigitHistogram(base, counts, sum(counts.values()))


# ---------------------------
#   SequenceBenfordReport
# ---------------------------
@dataclass(frozen=True)
class SequenceBenfordReport:
    n: int
    histogram: DigitHistogram
    discrepancies: Dict[int, float] = field(default_factory=dict)
    discrepancy_decreasing: bool = True
    log_rational: Optional[Fraction] = None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "histogram": self.histogram.as_dict(),
            "discrepancy": {str(n): d for n, d in self.discrepancies.items()},
            "discrepancy_decreasing": self.discrepancy_decreasing,
            "log_rational": None if self.log_rational is None else str(self.log_rational),
        }


# ---------------------------
#   sequence_benford_report
# ---------------------------
def sequence_benford_report(table: SequenceTable, n: int, base: int = DEFAULT_BASE) -> SequenceBenfordReport:
    """Leading digits of G_1..G_n and discrepancy of log_B G_i mod 1."""
    if base < 2:
        raise DigitOutOfRange(f"base {base}")

    table = extend_table(table, n)
    values = table.g_values[:n]
    histogram = digit_histogram(values, base)

    log_base = math.log(base)
    fractional = np.array([math.log(value) / log_base for value in values]) % 1.0
    checkpoints = [c for c in DISCREPANCY_CHECKPOINTS if c < n] + [n]
    discrepancies = {c: star_discrepancy(fractional[:c]) for c in checkpoints}
    series = list(discrepancies.values())
    decreasing = all(a > b for a, b in zip(series, series[1:]))

    log_rational = log_rationality(dominant_root(table.spec), base)
    if log_rational is not None:
        _LOGGER.warning(
            "log_%s of the dominant root is rational (%s); Benford behaviour not expected",
            base, log_rational,
        )
    elif not decreasing:
        _LOGGER.warning("Discrepancy not decreasing along %s", checkpoints)

    return SequenceBenfordReport(n, histogram, discrepancies, decreasing, log_rational)
