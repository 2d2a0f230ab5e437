"""The variation measure and its maximal function.

The cumulative variation of a right-continuous function of finite variation
is monotone and right-continuous, so it induces a measure on [0,1] (atoms at
the jumps of the cumulative variation).  The maximal function at x is the
supremum of measure/length over closed windows containing x, with windows
clamped to [0,1]; it dominates the local slope pointwise and satisfies the
weak-type bound: the superlevel set {M > t} has measure at most 2V/t.

For piecewise-linear inputs everything reduces to chords of the cumulative
variation, which is itself piecewise linear: extremal windows have their
endpoints at breakpoints or degenerate onto the query point, giving exact
rational values with O(n^2) pair enumeration (precomputed once when many
queries are made against the same function).
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .funcs import FunctionSpec, PiecewiseLinear, StepFunction, materialize
from .rational import INF, ExtendedRational
from .variation import cumulative_variation, total_variation


def _require_right_continuous(f: StepFunction) -> None:
    if not f.is_right_continuous():
        raise ValueError(
            "step function must be right-continuous here; regularize it first"
        )


def _step_cum_left(t_step: StepFunction, x: Fraction) -> Fraction:
    """Left limit of a (cumulative) step function at x."""
    i = bisect_left(t_step.jump_points, x)
    if i < len(t_step.jump_points) and t_step.jump_points[i] == x:
        return t_step.segment_values[i]
    return t_step.segment_values[bisect_right(t_step.jump_points, x)]


def stieltjes_measure(f: FunctionSpec, a: Fraction, b: Fraction) -> Fraction:
    """Measure of the closed interval [a,b] under the variation measure of f:
    cumulative variation at b minus its left limit at a (so an atom exactly
    at a is included)."""
    a, b = Fraction(a), Fraction(b)
    if a > b:
        raise ValueError("need a <= b")
    if a < 0 or b > 1:
        raise ValueError("interval must lie inside [0,1]")
    g = materialize(f)
    if isinstance(g, StepFunction):
        _require_right_continuous(g)
    t = cumulative_variation(g)
    if isinstance(t, PiecewiseLinear):
        return t.value_at(b) - t.value_at(a)
    return t.value_at(b) - _step_cum_left(t, a)


class MaximalEvaluator:
    """Exact maximal-function queries against one piecewise-linear function.

    Precomputes, per cell, the best chord of the cumulative variation over
    window endpoints spanning that cell; a query then only scans the chords
    anchored at the query point itself.
    """

    def __init__(self, f: PiecewiseLinear):
        self.f = f
        t = cumulative_variation(f)
        self.b = t.breakpoints
        self.tv = t.values
        n = len(self.b)
        self.slopes = tuple(
            (self.tv[i + 1] - self.tv[i]) / (self.b[i + 1] - self.b[i])
            for i in range(n - 1)
        )
        # span[i] = max chord slope over breakpoint pairs (p <= i, q >= i+1);
        # for each p the downward sweep over q carries the suffix maximum,
        # which is exactly the value cell q-1 needs.
        span = [Fraction(0)] * (n - 1)
        for p in range(n - 1):
            run = Fraction(0)
            for q in range(n - 1, p, -1):
                r = (self.tv[q] - self.tv[p]) / (self.b[q] - self.b[p])
                if r > run:
                    run = r
                if run > span[q - 1]:
                    span[q - 1] = run
        self.span = span

    def value(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        if x < 0 or x > 1:
            raise ValueError(f"point {x} outside [0,1]")
        b, tv = self.b, self.tv
        n = len(b)
        i = bisect_right(b, x) - 1
        best = Fraction(0)
        if b[i] == x:
            if i >= 1:
                best = max(best, self.span[i - 1])
            if i <= n - 2:
                best = max(best, self.span[i])
            tx = tv[i]
        else:
            best = max(best, self.span[i])
            tx = tv[i] + self.slopes[i] * (x - b[i])
        for j in range(n):
            if b[j] < x:
                best = max(best, (tx - tv[j]) / (x - b[j]))
            elif b[j] > x:
                best = max(best, (tv[j] - tx) / (b[j] - x))
        return best

    def superlevel_intervals(self, t: Fraction) -> list[tuple[Fraction, Fraction]]:
        """Closed intervals whose union is the closure of {x : M(x) > t};
        it differs from the strict superlevel set only at interval endpoints."""
        b, tv = self.b, self.tv
        n = len(b)
        out: list[tuple[Fraction, Fraction]] = []
        for p in range(n - 1):
            for q in range(p + 1, n):
                if tv[q] - tv[p] > t * (b[q] - b[p]):
                    out.append((b[p], b[q]))
        for i in range(n - 1):
            lo, hi = b[i], b[i + 1]
            ms = self.slopes[i]
            qs = tv[i] - ms * lo
            for j in range(n):
                if j >= i + 1:
                    # window [x, b_j]: (tv_j - T(x)) > t (b_j - x)
                    ival = _solve_linear_gt(
                        t - ms, tv[j] - qs - t * b[j], lo, hi
                    )
                else:
                    # window [b_j, x]: (T(x) - tv_j) > t (x - b_j)
                    ival = _solve_linear_gt(
                        ms - t, qs - tv[j] + t * b[j], lo, hi
                    )
                if ival is not None:
                    out.append(ival)
        return out


def _solve_linear_gt(slope: Fraction, offset: Fraction, lo: Fraction, hi: Fraction):
    """Closure of {u in [lo,hi] : slope*u + offset > 0}, or None if empty."""
    if slope == 0:
        return (lo, hi) if offset > 0 else None
    bound = -offset / slope
    if slope > 0:
        if bound >= hi:
            return None
        return (max(lo, bound), hi)
    if bound <= lo:
        return None
    return (lo, min(hi, bound))


class _StepMaximal:
    """Maximal-function queries against one right-continuous step function."""

    def __init__(self, f: StepFunction):
        _require_right_continuous(f)
        self.f = f
        self.t = cumulative_variation(f)
        # window-endpoint candidates: left ends enter with the left limit of
        # the cumulative variation (atoms included), right ends with its value
        self.lefts = [(Fraction(0), Fraction(0))] + [
            (j, self.t.segment_values[k]) for k, j in enumerate(f.jump_points)
        ]
        self.rights = [
            (j, self.t.point_values[k]) for k, j in enumerate(f.jump_points)
        ] + [(Fraction(1), self.t.segment_values[-1])]

    def value(self, x: Fraction) -> ExtendedRational:
        x = Fraction(x)
        if x < 0 or x > 1:
            raise ValueError(f"point {x} outside [0,1]")
        f, t = self.f, self.t
        i = bisect_left(f.jump_points, x)
        if i < len(f.jump_points) and f.jump_points[i] == x:
            if t.value_at(x) - _step_cum_left(t, x) > 0:
                return INF  # an atom sits at x: shrinking windows diverge
        lefts = [(x, _step_cum_left(t, x))] + [p for p in self.lefts if p[0] <= x]
        rights = [(x, t.value_at(x))] + [p for p in self.rights if p[0] >= x]
        best = Fraction(0)
        for a, ta in lefts:
            for b, tb in rights:
                if b > a:
                    best = max(best, (tb - ta) / (b - a))
        return best

    def superlevel_intervals(self, thr: Fraction) -> list[tuple[Fraction, Fraction]]:
        """Closed intervals covering {x : M(x) > thr}, differing from it only
        at interval endpoints; atoms appear as degenerate intervals."""
        f, t = self.f, self.t
        bounds = [Fraction(0)] + list(f.jump_points) + [Fraction(1)]
        out: list[tuple[Fraction, Fraction]] = []
        for a, ta in self.lefts:
            for b, tb in self.rights:
                if b > a and tb - ta > thr * (b - a):
                    out.append((a, b))
        for k, j in enumerate(f.jump_points):
            if t.point_values[k] - t.segment_values[k] > 0:
                out.append((j, j))
        for i in range(len(f.segment_values)):
            lo, hi = bounds[i], bounds[i + 1]
            t_cell = t.segment_values[i]
            for b, tb in self.rights:
                if b >= hi and tb - t_cell > 0:
                    d = (tb - t_cell) / thr
                    if b - d < hi:
                        out.append((max(lo, b - d), hi))
            for a, ta in self.lefts:
                if a <= lo and t_cell - ta > 0:
                    d = (t_cell - ta) / thr
                    if a + d > lo:
                        out.append((lo, min(hi, a + d)))
        return out


def _maximal_step(f: StepFunction, x: Fraction) -> ExtendedRational:
    return _StepMaximal(f).value(x)


def _maximal_step(f: StepFunction, x: Fraction) -> ExtendedRational:
    return _StepMaximal(f).value(x)


def maximal_evaluator(f: FunctionSpec):
    """Reusable `.value(x)` evaluator for many queries against one function."""
    g = materialize(f)
    if isinstance(g, PiecewiseLinear):
        return MaximalEvaluator(g)
    return _StepMaximal(g)


def maximal_function(f: FunctionSpec, x: Fraction) -> ExtendedRational:
    """Largest average density of the variation measure over windows
    containing x (windows clamped to [0,1]).  Suprema only approached in the
    shrinking-window limit are reported at their limiting value; at an atom
    of the variation measure the value is +inf."""
    return maximal_evaluator(f).value(x)


@dataclass(frozen=True)
class WeakBoundReport:
    """Grid estimate of the measure of {M > t} against the 2V/t bound."""

    t: Fraction
    grid_n: int
    count: int
    estimate: Fraction
    bound: ExtendedRational
    slack: Fraction
    exact_measure: Fraction | None

    @property
    def passed(self) -> bool:
        return self.estimate <= self.bound + self.slack


def _count_grid_points(
    intervals: list[tuple[Fraction, Fraction]], grid_n: int
) -> int:
    """Number of midpoints (2g+1)/(2*grid_n), g in [0, grid_n), inside the
    merged closed intervals."""
    merged: list[tuple[Fraction, Fraction]] = []
    for lo, hi in sorted(intervals):
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    count = 0
    for lo, hi in merged:
        g_min = (2 * grid_n * lo - 1) / 2
        g_max = (2 * grid_n * hi - 1) / 2
        lo_g = max(0, math.ceil(g_min))
        hi_g = min(grid_n - 1, math.floor(g_max))
        if hi_g >= lo_g:
            count += hi_g - lo_g + 1
    return count


def check_weak_bound(f: FunctionSpec, t: Fraction, grid_n: int = 10**4) -> WeakBoundReport:
    """Estimate the measure of {x : M(x) > t} on a grid of `grid_n` midpoints
    and compare it against 2 V / t plus a grid slack of 2/grid_n.

    For piecewise-linear inputs the superlevel set is also resolved exactly
    (reported in ``exact_measure``); the grid count is taken over the closure
    and is therefore conservative.
    """
    t = Fraction(t)
    if t <= 0:
        raise ValueError("threshold t must be positive")
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    g = materialize(f)
    v = total_variation(g)
    bound = 2 * v / t
    slack = Fraction(2, grid_n)
    ev = maximal_evaluator(g)
    intervals = ev.superlevel_intervals(t)
    count = _count_grid_points(intervals, grid_n)
    from .seminorms import _merge_measure

    exact = _merge_measure(intervals)
    return WeakBoundReport(
        t, grid_n, count, Fraction(count, grid_n), bound, slack, exact
    )
