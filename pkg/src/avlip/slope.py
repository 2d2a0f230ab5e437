"""Pointwise local slope: the supremum of chord-slope magnitudes from a point.

For a piecewise-linear function the chord slope x' -> (f(x')-f(x))/(x'-x) is
monotone on every linear piece, so the supremum over x' is attained among
chords to breakpoints (chords to the endpoints of the piece containing x
degenerate to the adjacent piece slopes).  That reduction makes the value
exact at O(n) cost per query.  Step functions additionally admit +inf, e.g.
at a jump whose point value disagrees with a one-sided limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .funcs import (
    ConcreteFunction,
    FunctionSpec,
    PiecewiseLinear,
    StepFunction,
    evaluate,
    materialize,
)
from .rational import INF, ExtendedRational


@dataclass(frozen=True)
class SlopeValue:
    """A local-slope supremum; ``attained_at`` is a witness point realizing it,
    or None when the supremum is only approached in a one-sided limit."""

    value: ExtendedRational
    attained_at: Optional[Fraction] = None


def _check_domain(x: Fraction) -> Fraction:
    x = Fraction(x)
    if x < 0 or x > 1:
        raise ValueError(f"point {x} outside [0,1]")
    return x


def local_slope_plf(f: PiecewiseLinear, x: Fraction) -> SlopeValue:
    """Exact local slope of a piecewise-linear function at x.

    Maximum of |f(x)-f(b)|/|x-b| over breakpoints b != x; leftmost maximizing
    breakpoint reported as witness.
    """
    x = _check_domain(x)
    fx = f.value_at(x)
    best = Fraction(0)
    where: Optional[Fraction] = None
    for b, v in zip(f.breakpoints, f.values):
        if b == x:
            continue
        r = abs(fx - v) / abs(x - b)
        if r > best:
            best, where = r, b
    return SlopeValue(best, where)


def local_slope_step(f: StepFunction, x: Fraction) -> SlopeValue:
    """Exact local slope of a step function at x (possibly +inf).

    Candidates are chords to the jump points (attained) and one-sided limits
    toward each constant segment (suprema, not attained).  The value is +inf
    when x touches a segment whose constant differs from f(x).
    """
    x = _check_domain(x)
    fx = f.value_at(x)
    best = Fraction(0)
    where: Optional[Fraction] = None

    for j, pv in zip(f.jump_points, f.point_values):
        if j == x or pv == fx:
            continue
        r = abs(fx - pv) / abs(x - j)
        if r > best:
            best, where = r, j

    bounds = [Fraction(0)] + list(f.jump_points) + [Fraction(1)]
    for i, v in enumerate(f.segment_values):
        if v == fx:
            continue
        a, b = bounds[i], bounds[i + 1]
        if a <= x <= b:
            return SlopeValue(INF, None)
        dist = a - x if x < a else x - b
        r = abs(fx - v) / dist
        if r > best:
            best, where = r, None
    return SlopeValue(best, where)


def local_slope(f: FunctionSpec, x: Fraction) -> SlopeValue:
    g = materialize(f)
    if isinstance(g, PiecewiseLinear):
        return local_slope_plf(g, x)
    return local_slope_step(g, x)


def local_slope_grid(
    f: FunctionSpec, x: Fraction, candidates: Sequence[Fraction]
) -> SlopeValue:
    """Finite-maximum lower bound on the local slope: max chord slope from x
    to the candidate points.  Candidates equal to x are skipped."""
    x = _check_domain(x)
    pts = [Fraction(c) for c in candidates if Fraction(c) != x]
    if not pts:
        raise ValueError("candidate list is empty")
    g = materialize(f)
    fx = g.value_at(x)
    best = Fraction(0)
    where: Optional[Fraction] = None
    for c in pts:
        r = abs(fx - g.value_at(c)) / abs(x - c)
        if r > best:
            best, where = r, c
    return SlopeValue(best, where if where is not None else pts[0])


def lipschitz_constant(f: FunctionSpec) -> ExtendedRational:
    """sup of the local slope: max piece-slope magnitude for piecewise-linear
    functions; +inf for any step function with a genuine discontinuity."""
    g: ConcreteFunction = materialize(f)
    if isinstance(g, PiecewiseLinear):
        return max(abs(s) for s in g.piece_slopes)
    vals = set(g.segment_values) | set(g.point_values)
    return Fraction(0) if len(vals) == 1 else INF


__all__ = [
    "SlopeValue",
    "local_slope",
    "local_slope_plf",
    "local_slope_step",
    "local_slope_grid",
    "lipschitz_constant",
    "evaluate",
]
