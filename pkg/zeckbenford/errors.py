"""Errors raised by zeckbenford."""

import json
import logging
from functools import lru_cache
from os import path

_LOGGER = logging.getLogger(__name__)

TRANSLATIONS_FILE = path.join(path.dirname(__file__), "translations", "en.json")


# ---------------------------
#   load_strings
# ---------------------------
@lru_cache(maxsize=1)
def load_strings() -> dict:
    """Load error strings from translations."""
    if not path.isfile(TRANSLATIONS_FILE):
        _LOGGER.warning("Translations file %s not found", TRANSLATIONS_FILE)
        return {}

    with open(TRANSLATIONS_FILE, "r", encoding="utf-8") as f:
        return json.load(f).get("error", {})


# ---------------------------
#   error_to_string
# ---------------------------
def error_to_string(error_code: str) -> str:
    """Translate error code to error string."""
    return load_strings().get(error_code, error_code)


# ---------------------------
#   ZeckError
# ---------------------------
class ZeckError(Exception):
    """Base class for domain errors."""

    error_code = "zeck_error"

    def __init__(self, detail=None):
        """Initialize error with an optional detail."""
        self.detail = detail
        message = error_to_string(self.error_code)
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)

    @property
    def name(self) -> str:
        """Return the error class name."""
        return type(self).__name__

    def as_dict(self) -> dict:
        """Return machine-readable error."""
        return {"error": self.name, "code": self.error_code, "message": str(self)}


class EmptyCoefficients(ZeckError):
    error_code = "empty_coefficients"


class ZeroLeadCoeff(ZeckError):
    error_code = "zero_lead_coeff"


class NegativeCoeff(ZeckError):
    error_code = "negative_coeff"


class NonPositiveInitialTerm(ZeckError):
    error_code = "non_positive_initial_term"


class WrongInitialLength(ZeckError):
    error_code = "wrong_initial_length"


class TableTooShort(ZeckError):
    error_code = "table_too_short"


class OutOfRange(ZeckError):
    error_code = "out_of_range"


class Unrepresentable(ZeckError):
    error_code = "unrepresentable"


class NotLegal(ZeckError):
    error_code = "not_legal"


class BudgetExceeded(ZeckError):
    error_code = "budget_exceeded"


class MissingHValues(ZeckError):
    error_code = "missing_h_values"


class IndexOutOfRange(ZeckError):
    error_code = "index_out_of_range"


class BoundaryRegime(ZeckError):
    error_code = "boundary_regime"


class EmptyCondition(ZeckError):
    error_code = "empty_condition"


class IncompleteSpec(ZeckError):
    error_code = "incomplete_spec"


class NonPositiveInput(ZeckError):
    error_code = "non_positive_input"


class DigitOutOfRange(ZeckError):
    error_code = "digit_out_of_range"


class DegenerateSample(ZeckError):
    error_code = "degenerate_sample"


class InvalidPredicate(ZeckError):
    error_code = "invalid_predicate"


class InvalidConfig(ZeckError):
    error_code = "invalid_config"
