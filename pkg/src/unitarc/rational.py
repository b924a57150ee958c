"""Exact rational helpers shared by every module.

All core arithmetic uses :class:`fractions.Fraction`.  The only non-rational
value is ``INF``, a marker for the circumference of interval models.
"""

import math
from fractions import Fraction

INF = math.inf


def as_rational(value):
    """Coerce ``value`` to an exact rational, keeping ``INF`` as the infinity marker.

    Ints stay ints (they are already exact and much cheaper); everything
    else becomes a Fraction.  Accepts ints, Fractions and strings of the form ``"p"``, ``"p/q"`` or
    ``"inf"``.  Floats are rejected so that no inexact value leaks in.
    """
    if value is INF:
        return INF
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if math.isinf(value) and value > 0:
            return INF
        raise TypeError(f"refusing inexact float {value!r}")
    if isinstance(value, str):
        text = value.strip()
        if text.lower() in ("inf", "+inf", "infinity", "∞"):
            return INF
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(value):
    """Serialize as ``"p/q"``, ``"p"`` for integers, or ``"inf"``."""
    if value is INF or (isinstance(value, float) and math.isinf(value)):
        return "inf"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def is_integer(value):
    if value is INF:
        return True
    return Fraction(value).denominator == 1
