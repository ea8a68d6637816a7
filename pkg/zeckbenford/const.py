"""Constants used by the zeckbenford package."""

DOMAIN = "zeckbenford"
DEFAULT_NAME = "Zeckendorf Benford"

# Enumeration oracle
DEFAULT_ORACLE_BOUND = 18
DEFAULT_BUDGET = 10**7
ENV_BUDGET = "ZECK_BUDGET"

# Dominant root and Binet fit
DEFAULT_ROOT_TOLERANCE = 1e-12
NEWTON_MAX_STEPS = 8
BINET_TAIL_WINDOW = 10
RESIDUAL_FLOOR = 1e-11

# Output formatting
FLOAT_SIGNIFICANT_DIGITS = 12
OUTPUT_FORMATS = ["json", "csv", "pretty"]
DEFAULT_FORMAT = "json"

# Sampling
# Philox4x64-10: key = (sample index << 64) | (seed mod 2**64), counter starts at 0.
SEED_MASK = 2**64 - 1
SAMPLE_CHUNK_SIZE = 256
DEFAULT_WORKERS = 1
DEFAULT_CHI_SQUARE_BUCKETS = 20

# Benford reports
DEFAULT_BASE = 10
DISCREPANCY_CHECKPOINTS = (250, 500, 1000, 2000)

# Block closing clauses
CLOSING_CONDITION1 = "condition1"
CLOSING_CONDITION2 = "condition2"

# Counting methods
METHOD_RECURRENCE = "recurrence"
METHOD_ENUMERATION = "enumeration"
METHOD_FORMULA = "formula"
METHOD_AUTOMATON = "automaton"

# Spec origins
ORIGIN_EXPLICIT = "explicit"
ORIGIN_CANONICAL = "canonical"

# Built-in specs: (coeffs, initial terms or None for canonical)
BUILTIN_SPECS = {
    "fibonacci": ((1, 1), (1, 2)),
    "example": ((1, 2, 3), (1, 3, 8)),
    "canonical-123": ((1, 2, 3), None),
    "canonical-21": ((2, 1), None),
    "doubling": ((2,), (1,)),
}
