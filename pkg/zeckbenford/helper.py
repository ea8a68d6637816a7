"""Helper functions for report formatting."""

from fractions import Fraction

from .const import FLOAT_SIGNIFICANT_DIGITS


# ---------------------------
#   format_attribute
# ---------------------------
def format_attribute(attr):
    res = attr.replace("_", " ")
    res = res.capitalize()
    res = res.replace(" x ", " X ")
    res = res.replace(" y ", " Y ")
    res = res.replace("Qsn", "q(S,n)")
    res = res.replace(" h ", " H ")
    res = res.replace(" g ", " G ")
    return res


# ---------------------------
#   format_float
# ---------------------------
def format_float(value, digits=FLOAT_SIGNIFICANT_DIGITS):
    """Round a float to the reported number of significant digits."""
    if value is None:
        return None

    return float(f"{float(value):.{digits}g}")


# ---------------------------
#   format_fraction
# ---------------------------
def format_fraction(value: Fraction) -> dict:
    """Exact rational as "num/den" plus its float."""
    value = Fraction(value)
    return {
        "exact": f"{value.numerator}/{value.denominator}",
        "float": format_float(value),
    }


# ---------------------------
#   format_value
# ---------------------------
def format_value(res):
    """Make a report value JSON-safe.

    Reports carry big integers as decimal strings already; small ints pass through.
    """
    if isinstance(res, (bool, int, str)) or res is None:
        return res

    if isinstance(res, Fraction):
        return format_fraction(res)

    if isinstance(res, float):
        return format_float(res)

    if isinstance(res, dict):
        return {str(key): format_value(val) for key, val in res.items()}

    if isinstance(res, (list, tuple)):
        return [format_value(val) for val in res]

    return res
