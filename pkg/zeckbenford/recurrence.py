"""Positive linear recurrence sequences and their dominant-root analysis."""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import voluptuous as vol

from .const import (
    BINET_TAIL_WINDOW,
    DEFAULT_ROOT_TOLERANCE,
    NEWTON_MAX_STEPS,
    ORIGIN_CANONICAL,
    ORIGIN_EXPLICIT,
    RESIDUAL_FLOOR,
)
from .errors import (
    EmptyCoefficients,
    IndexOutOfRange,
    InvalidConfig,
    NegativeCoeff,
    NonPositiveInitialTerm,
    TableTooShort,
    WrongInitialLength,
    ZeroLeadCoeff,
)

_LOGGER = logging.getLogger(__name__)


def big_int(value):
    """Accept ints or decimal strings for big integers."""
    if isinstance(value, bool):
        raise vol.Invalid("expected integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.strip().lstrip("-").isdigit():
        return int(value.strip())
    raise vol.Invalid("expected integer or decimal string")


SPEC_SCHEMA = vol.Schema(
    {
        vol.Required("coeffs"): [int],
        vol.Optional("initial_terms", default=None): vol.Any(None, [big_int]),
    }
)


# ---------------------------
#   RecurrenceSpec
# ---------------------------
@dataclass(frozen=True)
class RecurrenceSpec:
    """Coefficients c_1..c_L and initial terms G_1..G_L."""

    coeffs: tuple
    initial_terms: tuple
    origin: str = ORIGIN_EXPLICIT

    @property
    def order(self) -> int:
        """Return L."""
        return len(self.coeffs)

    @property
    def max_coeff(self) -> int:
        return max(self.coeffs)

    def coeff(self, i: int) -> int:
        """Return c_i (1-based)."""
        return self.coeffs[i - 1]

    def as_dict(self) -> dict:
        """Serialize; big integers as decimal strings."""
        return {
            "coeffs": list(self.coeffs),
            "initial_terms": [str(term) for term in self.initial_terms],
        }


# ---------------------------
#   SequenceTable
# ---------------------------
@dataclass(frozen=True)
class SequenceTable:
    """Cached values G_1..G_N and optional super-legal counts H_1..H_N."""

    spec: RecurrenceSpec
    g_values: tuple
    h_values: Optional[tuple] = None

    def __len__(self) -> int:
        return len(self.g_values)

    def g(self, i: int) -> int:
        """Return G_i (1-based); G_{N+1} is computed from the recurrence."""
        if 1 <= i <= len(self.g_values):
            return self.g_values[i - 1]

        if i == len(self.g_values) + 1:
            return self.next_term()

        raise IndexOutOfRange(f"G_{i} with table length {len(self.g_values)}")

    def h(self, i: int) -> int:
        """Return H_i (1-based) with H_0 = 1 for the empty string."""
        if i == 0:
            return 1

        if self.h_values is None or not 1 <= i <= len(self.h_values):
            raise IndexOutOfRange(f"H_{i}")

        return self.h_values[i - 1]

    def next_term(self) -> int:
        """Return G_{N+1}."""
        if len(self.g_values) < self.spec.order:
            return self.spec.initial_terms[len(self.g_values)]

        return next_value(self.spec, self.g_values)

    def with_h_values(self, h_values) -> "SequenceTable":
        """Return a copy carrying H values."""
        return replace(self, h_values=tuple(h_values))


# ---------------------------
#   BinetFit
# ---------------------------
@dataclass(frozen=True)
class BinetFit:
    """Dominant root, leading Binet coefficient and relative residuals."""

    lambda1: float
    a_const: float
    residual_profile: tuple = field(default_factory=tuple)
    burn_in: int = 1

    def as_dict(self) -> dict:
        return {
            "lambda1": self.lambda1,
            "a_const": self.a_const,
            "burn_in": self.burn_in,
            "residual_profile": list(self.residual_profile),
        }


# ---------------------------
#   canonical_initial_terms
# ---------------------------
def canonical_initial_terms(coeffs: Sequence[int]) -> tuple:
    """G_1 = 1, G_{n+1} = c_1 G_n + ... + c_n G_1 + 1 for n < L."""
    _check_coeffs(coeffs)
    terms = [1]
    for n in range(1, len(coeffs)):
        terms.append(sum(coeffs[i] * terms[n - 1 - i] for i in range(n)) + 1)

    return tuple(terms)


# ---------------------------
#   validate_spec
# ---------------------------
def validate_spec(coeffs: Sequence[int], initial_terms: Optional[Sequence[int]] = None) -> RecurrenceSpec:
    """Validate coefficients and initial terms."""
    coeffs = tuple(int(c) for c in coeffs)
    _check_coeffs(coeffs)

    if initial_terms is None:
        return RecurrenceSpec(coeffs, canonical_initial_terms(coeffs), ORIGIN_CANONICAL)

    initial_terms = tuple(int(t) for t in initial_terms)
    if len(initial_terms) != len(coeffs):
        raise WrongInitialLength(f"got {len(initial_terms)}, expected {len(coeffs)}")

    if any(t <= 0 for t in initial_terms):
        raise NonPositiveInitialTerm(",".join(str(t) for t in initial_terms))

    return RecurrenceSpec(coeffs, initial_terms, ORIGIN_EXPLICIT)


def _check_coeffs(coeffs):
    if not coeffs:
        raise EmptyCoefficients()

    if any(c < 0 for c in coeffs):
        raise NegativeCoeff(",".join(str(c) for c in coeffs))

    if coeffs[0] < 1 or coeffs[-1] < 1:
        raise ZeroLeadCoeff(",".join(str(c) for c in coeffs))


# ---------------------------
#   spec_from_dict
# ---------------------------
def spec_from_dict(data: dict) -> RecurrenceSpec:
    """Build a spec from its JSON object."""
    try:
        data = SPEC_SCHEMA(data)
    except vol.Invalid as err:
        raise InvalidConfig(str(err)) from err

    return validate_spec(data["coeffs"], data["initial_terms"])


# ---------------------------
#   next_value
# ---------------------------
def next_value(spec: RecurrenceSpec, values: Sequence[int]) -> int:
    """Apply the recurrence to the last L values."""
    order = spec.order
    if len(values) < order:
        raise TableTooShort(f"need {order} values, have {len(values)}")

    return sum(spec.coeffs[i] * values[-1 - i] for i in range(order))


# ---------------------------
#   generate_sequence
# ---------------------------
def generate_sequence(spec: RecurrenceSpec, count: int) -> SequenceTable:
    """Return a table of exactly count terms."""
    if count < 1:
        raise IndexOutOfRange(f"count {count}")

    values = list(spec.initial_terms[:count])
    while len(values) < count:
        values.append(next_value(spec, values))

    _LOGGER.debug("Generated %s terms for coeffs %s", count, spec.coeffs)
    return SequenceTable(spec, tuple(values))


# ---------------------------
#   extend_table
# ---------------------------
def extend_table(table: SequenceTable, count: int) -> SequenceTable:
    """Return a table with at least count terms, reusing computed values."""
    if len(table) >= count:
        return table

    values = list(table.g_values)
    while len(values) < count:
        values.append(next_value(table.spec, values))

    return SequenceTable(table.spec, tuple(values))


# ---------------------------
#   characteristic_value
# ---------------------------
def characteristic_value(coeffs: Sequence[int], x: float) -> tuple:
    """Return f(x) and f'(x) for f = x^L - c_1 x^(L-1) - ... - c_L."""
    value = 1.0
    derivative = 0.0
    for c in coeffs:
        derivative = derivative * x + value
        value = value * x - c

    return value, derivative


# ---------------------------
#   dominant_root
# ---------------------------
def dominant_root(spec: RecurrenceSpec, tolerance: float = DEFAULT_ROOT_TOLERANCE) -> float:
    """Unique positive root of the characteristic polynomial."""
    if tolerance <= 0:
        raise IndexOutOfRange(f"tolerance {tolerance}")

    total = sum(spec.coeffs)
    if total == 1:
        return 1.0

    low, high = 1.0, 1.0 + total
    while high - low > tolerance:
        mid = (low + high) / 2
        # adjacent floats: no finer bracket exists
        if mid in (low, high):
            break
        if characteristic_value(spec.coeffs, mid)[0] > 0:
            high = mid
        else:
            low = mid

    root = (low + high) / 2
    for _ in range(NEWTON_MAX_STEPS):
        value, derivative = characteristic_value(spec.coeffs, root)
        if derivative == 0:
            break

        polished = root - value / derivative
        if not low - tolerance <= polished <= high + tolerance:
            break

        if polished == root:
            break

        root = polished

    _LOGGER.debug("Dominant root for %s: %s", spec.coeffs, root)
    return root


# ---------------------------
#   burn_in_index
# ---------------------------
def burn_in_index(profile: Sequence[float], floor: float = RESIDUAL_FLOOR, start: int = 1) -> int:
    """First index after which the profile never increases above the floor."""
    burn_in = start
    for pos in range(1, len(profile)):
        if profile[pos] > floor and profile[pos] > profile[pos - 1]:
            burn_in = start + pos

    return burn_in


# ---------------------------
#   fit_binet_constant
# ---------------------------
def fit_binet_constant(table: SequenceTable, lambda1: float) -> BinetFit:
    """Estimate A in G_n ~ A * lambda1^n from the table tail."""
    size = len(table)
    if size < 2 * table.spec.order + BINET_TAIL_WINDOW:
        raise TableTooShort(f"length {size}, need {2 * table.spec.order + BINET_TAIL_WINDOW}")

    log_lambda = math.log(lambda1)
    window = range(size - BINET_TAIL_WINDOW, size + 1)
    log_a = sum(math.log(table.g(n)) - n * log_lambda for n in window) / len(window)
    a_const = math.exp(log_a)

    profile = tuple(
        abs(math.expm1(log_a + n * log_lambda - math.log(table.g(n))))
        for n in range(1, size + 1)
    )
    return BinetFit(lambda1, a_const, profile, burn_in_index(profile))


# ---------------------------
#   ratio_profile
# ---------------------------
def ratio_profile(table: SequenceTable, lambda1: float) -> tuple:
    """Return |G_{n+1}/G_n - lambda1| for n = 1..N-1 and its burn-in."""
    profile = tuple(
        abs(table.g(n + 1) / table.g(n) - lambda1) for n in range(1, len(table))
    )
    return profile, burn_in_index(profile)
