"""Exact scalar plumbing: rationals, the +inf sentinel, parsing and formatting.

Coordinates and function values are `fractions.Fraction` throughout the exact
code paths.  Quantities that may be infinite (slopes, seminorms, measures of
divergent integrands) are typed as ``Fraction | float`` where the float is
only ever ``math.inf``; Fraction/inf mix cleanly under comparison, max and
addition, which is all we need.
"""

from __future__ import annotations

import math
from fractions import Fraction

INF: float = math.inf

# A finite exact value, or +infinity.
ExtendedRational = Fraction | float

Q = Fraction  # short constructor alias used pervasively in tests and corpus


def is_finite(x: ExtendedRational) -> bool:
    return not (isinstance(x, float) and math.isinf(x))


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", integer or decimal strings into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    """Canonical "p/q" (or "p" for integers) form; inverse of parse_rational."""
    return str(x)


def format_extended(x: ExtendedRational, sig: int = 12) -> str:
    """Human format: exact rationals verbatim, floats to `sig` digits, inf as 'inf'."""
    if isinstance(x, Fraction):
        return str(x)
    if math.isinf(x):
        return "inf"
    return f"{x:.{sig}g}"
