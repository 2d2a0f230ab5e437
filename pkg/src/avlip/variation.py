"""Total variation, variation over subintervals, the cumulative-variation
function, and the finite partition sum used as an independent oracle.

Every linear piece of a piecewise-linear function is monotone, so the
breakpoint partition is extremal and V is the exact sum of |value jumps|.
For step functions each jump contributes |point - left| + |right - point|;
the constant pieces contribute nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .funcs import (
    FunctionSpec,
    PiecewiseLinear,
    StepFunction,
    evaluate,
    materialize,
)


@dataclass(frozen=True)
class Partition:
    """Strictly increasing points 0 <= x_0 < ... < x_n <= 1, n >= 1."""

    points: tuple[Fraction, ...]

    def __post_init__(self):
        pts = tuple(Fraction(x) for x in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise ValueError("a partition needs at least two points")
        if pts[0] < 0 or pts[-1] > 1:
            raise ValueError("partition points must lie in [0,1]")
        if any(a >= b for a, b in zip(pts, pts[1:])):
            raise ValueError("partition points must be strictly increasing")

    def refine(self, extra: Sequence[Fraction]) -> "Partition":
        pts = sorted(set(self.points) | {Fraction(x) for x in extra})
        return Partition(tuple(pts))


def total_variation_plf(f: PiecewiseLinear) -> Fraction:
    return sum(
        (abs(b - a) for a, b in zip(f.values, f.values[1:])), start=Fraction(0)
    )


def _jump_mass(f: StepFunction, i: int) -> Fraction:
    pv = f.point_values[i]
    return abs(pv - f.segment_values[i]) + abs(f.segment_values[i + 1] - pv)


def total_variation_step(f: StepFunction) -> Fraction:
    return sum(
        (_jump_mass(f, i) for i in range(len(f.jump_points))), start=Fraction(0)
    )


def total_variation(f: FunctionSpec) -> Fraction:
    g = materialize(f)
    if isinstance(g, PiecewiseLinear):
        return total_variation_plf(g)
    return total_variation_step(g)


def variation_on_interval(f: FunctionSpec, a: Fraction, b: Fraction) -> Fraction:
    """Exact variation of f restricted to [a,b].

    For step functions, a jump exactly at an endpoint contributes only its
    inward-facing half (only points of [a,b] can appear in a partition).
    """
    a, b = Fraction(a), Fraction(b)
    if a > b:
        raise ValueError("need a <= b")
    if a < 0 or b > 1:
        raise ValueError("interval must lie inside [0,1]")
    if a == b:
        return Fraction(0)
    g = materialize(f)
    if isinstance(g, PiecewiseLinear):
        inner = [x for x in g.breakpoints if a < x < b]
        pts = [a] + inner + [b]
        vals = [g.value_at(x) for x in pts]
        return sum(
            (abs(v1 - v0) for v0, v1 in zip(vals, vals[1:])), start=Fraction(0)
        )
    total = Fraction(0)
    for i, j in enumerate(g.jump_points):
        if j < a or j > b:
            continue
        pv = g.point_values[i]
        if j > a:
            total += abs(pv - g.segment_values[i])
        if j < b:
            total += abs(g.segment_values[i + 1] - pv)
    return total


def cumulative_variation(f: FunctionSpec) -> FunctionSpec:
    """The running variation x -> V(f on [0,x]), in the same class as f.

    Monotone nondecreasing, 0 at 0, total variation at 1.  For a piecewise-
    linear f this integrates |slope|; for a step function it is a monotone
    step function accumulating the jump masses.
    """
    g = materialize(f)
    if isinstance(g, PiecewiseLinear):
        vals = [Fraction(0)]
        for v0, v1 in zip(g.values, g.values[1:]):
            vals.append(vals[-1] + abs(v1 - v0))
        return PiecewiseLinear(g.breakpoints, tuple(vals), exact=g.exact)
    seg = [Fraction(0)]
    pv = []
    acc = Fraction(0)
    for i in range(len(g.jump_points)):
        point = g.point_values[i]
        pv.append(acc + abs(point - g.segment_values[i]))
        acc = pv[-1] + abs(g.segment_values[i + 1] - point)
        seg.append(acc)
    return StepFunction(g.jump_points, tuple(pv), tuple(seg))


def variation_oracle(f: FunctionSpec, partition: Partition) -> Fraction:
    """Sum of |f(x_i) - f(x_{i-1})| over the partition: a lower bound on the
    variation, nondecreasing under refinement."""
    vals = [evaluate(f, x) for x in partition.points]
    return sum((abs(v1 - v0) for v0, v1 in zip(vals, vals[1:])), start=Fraction(0))
