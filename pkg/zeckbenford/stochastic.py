"""Seeded uniform sampling and summand statistics X_n, Y_n."""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import partial
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy import stats as sp_stats

from .benford import DigitHistogram, SetPredicate, density_qsn, leading_digit
from .const import (
    DEFAULT_BASE,
    DEFAULT_CHI_SQUARE_BUCKETS,
    SAMPLE_CHUNK_SIZE,
    SEED_MASK,
)
from .counting import check_budget, legal_prefixes, require_complete, walk_legal
from .decomposition import decompose
from .errors import DegenerateSample, IndexOutOfRange, OutOfRange
from .parallel import run_chunks
from .recurrence import SequenceTable, extend_table

_LOGGER = logging.getLogger(__name__)

PLAN_EXACT = "exact"
PLAN_SAMPLED = "sampled"


# ---------------------------
#   draw
# ---------------------------
def _draw(upper: int, seed: int, index: int) -> int:
    """Sample `index` of the stream for `seed`, uniform on [0, upper)."""
    if upper <= 1:
        return 0

    bits = (upper - 1).bit_length()
    words = -(-bits // 64)
    excess = 64 * words - bits
    bitgen = np.random.Philox(key=(index << 64) | (seed & SEED_MASK))
    while True:
        raw = bitgen.random_raw(words)
        value = int.from_bytes(raw.astype("<u8").tobytes(), "little") >> excess
        if value < upper:
            return value


def _chunk_bounds(count: int) -> List[tuple]:
    return [(start, min(start + SAMPLE_CHUNK_SIZE, count)) for start in range(0, count, SAMPLE_CHUNK_SIZE)]


def _check_sample_range(table: SequenceTable, n: int) -> SequenceTable:
    if n < 1:
        raise IndexOutOfRange(f"n = {n}")

    return extend_table(table, n)


def _draw_chunk(upper: int, seed: int, bounds: tuple) -> list:
    return [_draw(upper, seed, i) for i in range(*bounds)]


# ---------------------------
#   sample_uniform
# ---------------------------
def sample_uniform(table: SequenceTable, n: int, seed: int, count: int, workers: int = 1) -> List[int]:
    """count independent draws from [0, G_{n+1}), fixed by (seed, count, n)."""
    table = _check_sample_range(table, n)
    upper = table.g(n + 1)
    _LOGGER.debug("Sampling %s values below G_%s with seed %s", count, n + 1, seed)
    ret = []
    for part in run_chunks(partial(_draw_chunk, upper, seed), _chunk_bounds(count), workers):
        ret.extend(part)

    return ret


# ---------------------------
#   position_mask
# ---------------------------
def position_mask(table: SequenceTable, n: int, pred: SetPredicate) -> tuple:
    """mask[j-1] is True iff j is in T_n, i.e. G_{n+1-j} satisfies pred."""
    return tuple(pred(table.g(n + 1 - j), n + 1 - j) for j in range(1, n + 1))


def _xy(digits: Sequence[int], mask: Sequence[bool]) -> tuple:
    x = sum(digits)
    y = sum(a for a, hit in zip(digits, mask) if hit and a)
    return x, y


def _xy_chunk(table: SequenceTable, n: int, mask: tuple, seed: int, bounds: tuple) -> list:
    upper = table.g(n + 1)
    ret = []
    for i in range(*bounds):
        digits = decompose(_draw(upper, seed, i), table, width=n).padded(n)
        ret.append(_xy(digits, mask))

    return ret


def _xy_exact_chunk(mask: tuple, spec, n: int, prefix: tuple) -> tuple:
    sums = [0, 0, 0, 0]
    ratio = Fraction(0)
    ratio_sq = Fraction(0)
    zero = 0
    for digits, _ in walk_legal(spec, n, prefix):
        x, y = _xy(digits, mask)
        sums[0] += x
        sums[1] += x * x
        sums[2] += y
        sums[3] += y * y
        if x:
            r = Fraction(y, x)
            ratio += r
            ratio_sq += r * r
        else:
            zero += 1

    return sums, ratio, ratio_sq, zero


# ---------------------------
#   ExperimentReport
# ---------------------------
@dataclass(frozen=True)
class ExperimentReport:
    """Summand statistics for one n under an exact or sampled plan."""

    spec: object
    n: int
    plan: str
    seed: Optional[int]
    sample_count: int
    stats: Dict[str, object]
    x_values: tuple = field(default_factory=tuple)
    y_values: tuple = field(default_factory=tuple)
    c_estimate: Optional[float] = None

    def as_dict(self, include_samples: bool = False) -> dict:
        ret = {
            "spec": self.spec.as_dict(),
            "n": self.n,
            "plan": self.plan,
            "seed": self.seed,
            "count": self.sample_count,
            "stats": dict(self.stats),
        }
        if self.c_estimate is not None:
            ret["c_estimate"] = self.c_estimate
        if include_samples:
            ret["x"] = list(self.x_values)
            ret["y"] = list(self.y_values)

        return ret


def _sampled_stats(x_values: Sequence[int], y_values: Sequence[int]) -> dict:
    count = len(x_values)
    x = np.asarray(x_values, dtype=float)
    y = np.asarray(y_values, dtype=float)
    nonzero = x > 0
    ratios = y[nonzero] / x[nonzero]

    ret = {
        "x_mean": float(np.mean(x)),
        "x_var": float(np.var(x, ddof=1)),
        "y_mean": float(np.mean(y)),
        "y_var": float(np.var(y, ddof=1)),
        "zero_count": int(count - np.count_nonzero(nonzero)),
        "ratio_mean": float(np.mean(ratios)) if len(ratios) else None,
        "ratio_var": float(np.var(ratios, ddof=1)) if len(ratios) > 1 else None,
    }
    ret["x_se"] = math.sqrt(ret["x_var"] / count)
    ret["y_se"] = math.sqrt(ret["y_var"] / count)
    ret["ratio_se"] = math.sqrt(ret["ratio_var"] / len(ratios)) if ret["ratio_var"] is not None else None
    return ret


def _exact_stats(table: SequenceTable, n: int, mask: tuple, budget, workers) -> tuple:
    spec = table.spec
    check_budget(spec, n, budget, None)
    require_complete(table, n)
    size = table.g(n + 1)

    sums = [0, 0, 0, 0]
    ratio = Fraction(0)
    ratio_sq = Fraction(0)
    zero = 0
    for part_sums, part_ratio, part_ratio_sq, part_zero in run_chunks(
        partial(_xy_exact_chunk, mask, spec, n), legal_prefixes(spec, n), workers
    ):
        sums = [a + b for a, b in zip(sums, part_sums)]
        ratio += part_ratio
        ratio_sq += part_ratio_sq
        zero += part_zero

    x_mean = Fraction(sums[0], size)
    y_mean = Fraction(sums[2], size)
    valid = size - zero
    ratio_mean = ratio / valid if valid else None
    stats = {
        "x_mean": x_mean,
        "x_var": Fraction(sums[1], size) - x_mean**2,
        "y_mean": y_mean,
        "y_var": Fraction(sums[3], size) - y_mean**2,
        "zero_count": zero,
        "ratio_mean": ratio_mean,
        "ratio_var": ratio_sq / valid - ratio_mean**2 if valid else None,
    }
    return stats, size


# ---------------------------
#   xy_stats
# ---------------------------
def xy_stats(
    table: SequenceTable,
    n: int,
    pred: SetPredicate,
    plan: str = PLAN_EXACT,
    seed: Optional[int] = None,
    count: Optional[int] = None,
    budget: Optional[int] = None,
    workers: int = 1,
) -> ExperimentReport:
    """Mean and variance of X_n and Y_n, exactly or from seeded samples."""
    table = _check_sample_range(table, n)
    mask = position_mask(table, n, pred)

    if plan == PLAN_EXACT:
        stats, size = _exact_stats(table, n, mask, budget, workers)
        return ExperimentReport(table.spec, n, plan, None, size, stats)

    if count is None or count < 2:
        raise DegenerateSample(f"count = {count}")

    pairs = []
    for part in run_chunks(partial(_xy_chunk, table, n, mask, seed), _chunk_bounds(count), workers):
        pairs.extend(part)

    x_values = tuple(x for x, _ in pairs)
    y_values = tuple(y for _, y in pairs)
    _LOGGER.info("Sampled %s values at n = %s", count, n)
    return ExperimentReport(
        table.spec, n, plan, seed, count, _sampled_stats(x_values, y_values), x_values, y_values
    )


# ---------------------------
#   estimate_summand_constant
# ---------------------------
def estimate_summand_constant(
    table: SequenceTable,
    ladder: Sequence[int],
    plan: str = PLAN_EXACT,
    seed: Optional[int] = None,
    count: Optional[int] = None,
    budget: Optional[int] = None,
    workers: int = 1,
    pred: Optional[SetPredicate] = None,
) -> tuple:
    """Least-squares slope of E[X_n] over the ladder, with the per-n reports."""
    if len(ladder) < 2:
        raise DegenerateSample(f"ladder {list(ladder)}")

    pred = pred or SetPredicate.universal()
    reports = [xy_stats(table, n, pred, plan, seed, count, budget, workers) for n in ladder]
    means = [float(report.stats["x_mean"]) for report in reports]
    slope = float(np.polyfit(np.asarray(ladder, dtype=float), np.asarray(means), 1)[0])
    return slope, [replace(report, c_estimate=slope) for report in reports]


# ---------------------------
#   ConcentrationReport
# ---------------------------
@dataclass(frozen=True)
class ConcentrationReport:
    """Fraction of samples with |Y/X - d| < epsilon for each n."""

    density: float
    density_source: str
    epsilon: float
    seed: int
    count: int
    rows: tuple

    @property
    def fractions(self) -> List[float]:
        return [row["fraction"] for row in self.rows]

    def as_dict(self) -> dict:
        return {
            "density": self.density,
            "density_source": self.density_source,
            "epsilon": self.epsilon,
            "seed": self.seed,
            "count": self.count,
            "rows": [dict(row) for row in self.rows],
        }


# ---------------------------
#   concentration
# ---------------------------
def concentration(
    table: SequenceTable,
    ladder: Sequence[int],
    pred: SetPredicate,
    epsilon: float,
    seed: int,
    count: int,
    density: Optional[float] = None,
    workers: int = 1,
) -> ConcentrationReport:
    """Empirical P(|Y_n/X_n - d| < epsilon) along a ladder of n."""
    if epsilon <= 0:
        raise OutOfRange(f"epsilon {epsilon}")

    table = extend_table(table, max(ladder))
    if density is None:
        estimate = density_qsn(pred, table, len(table))
        density = float(estimate.q_sn)
        source = f"q(S,{estimate.n})"
    else:
        source = "given"

    rows = []
    for n in ladder:
        report = xy_stats(table, n, pred, PLAN_SAMPLED, seed, count, workers=workers)
        valid = [(x, y) for x, y in zip(report.x_values, report.y_values) if x]
        within = sum(1 for x, y in valid if abs(y / x - density) < epsilon)
        excluded = len(report.x_values) - len(valid)
        if excluded:
            _LOGGER.warning("Excluded %s samples with X = 0 at n = %s", excluded, n)

        rows.append(
            {
                "n": n,
                "fraction": within / len(valid) if valid else None,
                "within": within,
                "valid": len(valid),
                "excluded_zero": excluded,
                "ratio_mean": report.stats["ratio_mean"],
            }
        )

    return ConcentrationReport(density, source, epsilon, seed, count, tuple(rows))


def _digit_chunk(table: SequenceTable, n: int, leading: tuple, seed: int, bounds: tuple) -> Counter:
    upper = table.g(n + 1)
    tally = Counter()
    for i in range(*bounds):
        digits = decompose(_draw(upper, seed, i), table, width=n).padded(n)
        for digit, first in zip(digits, leading):
            if digit:
                tally[first] += digit

    return tally


# ---------------------------
#   summand_digit_report
# ---------------------------
def summand_digit_report(
    table: SequenceTable,
    n: int,
    base: int = DEFAULT_BASE,
    seed: int = 0,
    count: int = 1,
    workers: int = 1,
) -> DigitHistogram:
    """Pooled leading digits of summands G_{n+1-j}, counted with multiplicity a_j."""
    table = _check_sample_range(table, n)
    leading = tuple(leading_digit(table.g(n + 1 - j), base) for j in range(1, n + 1))
    counts = {d: 0 for d in range(1, base)}
    for part in run_chunks(partial(_digit_chunk, table, n, leading, seed), _chunk_bounds(count), workers):
        for digit, hits in part.items():
            counts[digit] += hits

    return DigitHistogram(base, counts, sum(counts.values()))


# ---------------------------
#   ChiSquareReport
# ---------------------------
@dataclass(frozen=True)
class ChiSquareReport:
    statistic: float
    p_value: float
    buckets: int
    count: int

    def as_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "p_value": self.p_value,
            "buckets": self.buckets,
            "count": self.count,
        }


# ---------------------------
#   chi_square_self_test
# ---------------------------
def chi_square_self_test(
    table: SequenceTable,
    n: int,
    seed: int,
    count: int,
    buckets: int = DEFAULT_CHI_SQUARE_BUCKETS,
    workers: int = 1,
) -> ChiSquareReport:
    """Chi-square of sampled values against equal-width buckets of [0, G_{n+1})."""
    table = _check_sample_range(table, n)
    upper = table.g(n + 1)
    buckets = min(buckets, upper)
    if buckets < 2 or count < 2:
        raise DegenerateSample(f"{count} samples in {buckets} buckets")

    observed = np.zeros(buckets)
    for value in sample_uniform(table, n, seed, count, workers):
        observed[value * buckets // upper] += 1

    # Bucket b holds the m with b*U <= m*B < (b+1)*U.
    edges = [-(-b * upper // buckets) for b in range(buckets + 1)]
    expected = np.array([count * (hi - lo) / upper for lo, hi in zip(edges, edges[1:])])
    result = sp_stats.chisquare(observed, expected)
    return ChiSquareReport(float(result.statistic), float(result.pvalue), buckets, count)
