"""Averaged smoothness functionals of the local slope under the uniform law
on [0,1]: the mean (strong form), the weak-L1 functional (weak form), exact
superlevel-set measures, and the inequality-chain reports used by the CLI.

Exactness policy: superlevel measures and the weak functional are exact
rational arithmetic for moderately sized functions; the strong functional's
adaptive quadrature and the large-n weak path run in floating point with
small safety padding.  Inexact arithmetic is confined to operations that
return :class:`Estimate` brackets.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .funcs import (
    FunctionSpec,
    PiecewiseLinear,
    StepFunction,
    materialize,
)
from .rational import INF, ExtendedRational, is_finite
from .slope import lipschitz_constant

# limits beyond which the weak functional switches from exact rational
# superlevel measures to the padded floating-point path: breakpoint count,
# and the size of coordinate/value denominators (harmonic-sum values reach
# hundred-digit denominators, where exact arithmetic stops being cheap)
_EXACT_WEAK_MAX_BREAKPOINTS = 160
_EXACT_WEAK_MAX_DENOMINATOR = 10**15

_FLOAT_PAD = 1e-9  # safety margin absorbing roundoff in float-valued brackets

FINITE = "finite"
DIVERGENT = "divergent_beyond_cap"


@dataclass(frozen=True)
class Estimate:
    """A bracketed value of a possibly-infinite functional.

    ``lower <= true value <= upper`` holds whenever the verdict is
    ``finite``; the certified claim is always the lower bound.  A
    ``divergent_beyond_cap`` verdict records that certified partial lower
    bounds exceeded ``cap`` after ``depth`` refinement rounds; ``upper`` is
    then inf.
    """

    lower: ExtendedRational
    upper: ExtendedRational
    verdict: str = FINITE
    cap: float | None = None
    depth: int | None = None
    upper_certified: bool = True

    @property
    def width(self) -> ExtendedRational:
        return self.upper - self.lower

    @property
    def is_divergent(self) -> bool:
        return self.verdict == DIVERGENT

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"estimate with lower {self.lower} > upper {self.upper}")


# ---------------------------------------------------------------------------
# Superlevel sets of the local slope, exactly.
#
# The slope at x reaches t iff the graph point (x, f(x)) escapes the region
# between the two tent envelopes spanned by the breakpoint nodes:
#   E_hi(u) = min_c (f(c) + t|u-c|),   E_lo(u) = max_c (f(c) - t|u-c|),
# because |f(x)-f(c)| >= t|x-c| for some node c iff f(x) >= E_hi(x) or
# f(x) <= E_lo(x).  Each envelope needs one prefix and one suffix sweep and
# is linear on the cells of f, so the superlevel set is a union of O(n)
# rational intervals.  Membership can differ from the true slope superlevel
# set only on the finite breakpoint set, which no measure sees.
# ---------------------------------------------------------------------------


def _solve_linear_ge(
    slope: Fraction, offset: Fraction, lo: Fraction, hi: Fraction
) -> tuple[Fraction, Fraction] | None:
    """{u in [lo,hi] : slope*u + offset >= 0} as a closed interval, or None."""
    if slope == 0:
        return (lo, hi) if offset >= 0 else None
    bound = -offset / slope
    if slope > 0:
        if bound > hi:
            return None
        return (max(lo, bound), hi)
    if bound < lo:
        return None
    return (lo, min(hi, bound))


def _plf_slope_superlevel_intervals(
    f: PiecewiseLinear, t: Fraction
) -> list[tuple[Fraction, Fraction]]:
    b, v = f.breakpoints, f.values
    n = len(b)
    pref_min: list[Fraction] = []  # running min of f(c) - t*c
    pref_max: list[Fraction] = []  # running max of f(c) + t*c
    for i in range(n):
        lo_c, hi_c = v[i] - t * b[i], v[i] + t * b[i]
        pref_min.append(lo_c if i == 0 else min(pref_min[-1], lo_c))
        pref_max.append(hi_c if i == 0 else max(pref_max[-1], hi_c))
    suf_min: list[Fraction | None] = [None] * n  # running min of f(c) + t*c
    suf_max: list[Fraction | None] = [None] * n  # running max of f(c) - t*c
    for i in range(n - 1, -1, -1):
        lo_c, hi_c = v[i] + t * b[i], v[i] - t * b[i]
        suf_min[i] = lo_c if i == n - 1 else min(suf_min[i + 1], lo_c)
        suf_max[i] = hi_c if i == n - 1 else max(suf_max[i + 1], hi_c)

    out: list[tuple[Fraction, Fraction]] = []
    for i in range(n - 1):
        lo, hi = b[i], b[i + 1]
        m = (v[i + 1] - v[i]) / (hi - lo)
        q = v[i] - m * lo
        for slope, offset in (
            (m - t, q - pref_min[i]),  # above a left-anchored upward cone
            (m + t, q - suf_min[i + 1]),  # above a right-anchored upward cone
            (-m - t, pref_max[i] - q),  # below a left-anchored downward cone
            (-m + t, suf_max[i + 1] - q),  # below a right-anchored downward cone
        ):
            ival = _solve_linear_ge(slope, offset, lo, hi)
            if ival is not None:
                out.append(ival)
    return out


def _merge_measure(intervals: list[tuple[Fraction, Fraction]]):
    total = None
    cur_l = cur_r = None
    for lo, hi in sorted(intervals):
        if cur_l is None or lo > cur_r:
            if cur_l is not None:
                total = cur_r - cur_l if total is None else total + (cur_r - cur_l)
            cur_l, cur_r = lo, hi
        elif hi > cur_r:
            cur_r = hi
    if cur_l is not None:
        total = cur_r - cur_l if total is None else total + (cur_r - cur_l)
    return Fraction(0) if total is None else total


def superlevel_measure(f: PiecewiseLinear, t: Fraction) -> Fraction:
    """Exact Lebesgue measure of {x : local slope of f at x >= t}, t > 0."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("threshold t must be positive")
    if not isinstance(f, PiecewiseLinear):
        raise TypeError("superlevel_measure expects a PiecewiseLinear")
    return _merge_measure(_plf_slope_superlevel_intervals(f, t))


def superlevel_measure_bruteforce(f: PiecewiseLinear, t: Fraction) -> Fraction:
    """Quadratic-cost oracle for :func:`superlevel_measure`: solve
    |f(x)-f(c)| >= t|x-c| piece by piece and node by node."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("threshold t must be positive")
    b, v = f.breakpoints, f.values
    out: list[tuple[Fraction, Fraction]] = []
    for i in range(len(b) - 1):
        lo, hi = b[i], b[i + 1]
        m = (v[i + 1] - v[i]) / (hi - lo)
        q = v[i] - m * lo
        for c, fc in zip(b, v):
            sgn = 1 if c <= lo else -1  # sign of x - c on the open piece
            for slope, offset in (
                (m - t * sgn, q - fc + t * sgn * c),
                (-m - t * sgn, fc - q + t * sgn * c),
            ):
                ival = _solve_linear_ge(slope, offset, lo, hi)
                if ival is not None:
                    out.append(ival)
    return _merge_measure(out)


def _step_discontinuity_gaps(
    f: StepFunction,
) -> tuple[list[tuple[Fraction, Fraction, Fraction]], Fraction, Fraction]:
    """Per jump: (position, left-side gap, right-side gap), plus the largest
    gap and the smallest spacing between consecutive discontinuity points
    (domain ends included)."""
    gaps = []
    max_gap = Fraction(0)
    for i, j in enumerate(f.jump_points):
        vl, vr, pv = f.segment_values[i], f.segment_values[i + 1], f.point_values[i]
        dl = max(abs(vl - vr), abs(vl - pv))
        dr = max(abs(vr - vl), abs(vr - pv))
        gaps.append((j, dl, dr))
        max_gap = max(max_gap, dl, dr)
    pts = [Fraction(0)] + list(f.jump_points) + [Fraction(1)]
    min_dist = min(b - a for a, b in zip(pts, pts[1:]))
    return gaps, max_gap, min_dist


def _step_slope_superlevel_measure(f: StepFunction, t: Fraction) -> Fraction:
    """Exact measure of the slope superlevel set of a step function: per
    constant segment, collect the zones close enough to a jump point or to a
    differently-valued segment for the required chord slope."""
    bounds = [Fraction(0)] + list(f.jump_points) + [Fraction(1)]
    out: list[tuple[Fraction, Fraction]] = []
    for i, v in enumerate(f.segment_values):
        a, b = bounds[i], bounds[i + 1]
        for j, pv in zip(f.jump_points, f.point_values):
            if pv == v:
                continue
            d = abs(v - pv) / t
            lo, hi = max(a, j - d), min(b, j + d)
            if lo <= hi:
                out.append((lo, hi))
        for k, v2 in enumerate(f.segment_values):
            if k == i or v2 == v:
                continue
            d = abs(v - v2) / t
            if k < i:  # target segment to the left: dist(x, it) = x - bounds[k+1]
                lo, hi = a, min(b, bounds[k + 1] + d)
            else:  # to the right: dist = bounds[k] - x
                lo, hi = max(a, bounds[k] - d), b
            if lo <= hi:
                out.append((lo, hi))
    return _merge_measure(out)


# ---------------------------------------------------------------------------
# Weak average: sup_t t * m(t) by bracketed refinement over t.
#
# m is nonincreasing and left-continuous, so sup over [t1, t2] of t*m(t) is
# at most t2*m(t1); refining the partition squeezes a certified bracket
# around the supremum.  The certified claim is the lower bound.
# ---------------------------------------------------------------------------


def _sup_product_bracket(
    m_hi: Callable,
    m_lo: Callable,
    seeds: list,
    t_max,
    tol,
    max_iter: int = 20000,
):
    """Bracket sup over 0 < t <= t_max of t*m(t).

    ``m_hi``/``m_lo`` over-/under-estimate the superlevel measure (equal for
    exact evaluators); m_hi(0) must dominate all measures (1 works).
    """
    ts = sorted({s for s in seeds if 0 < s <= t_max})
    if not ts or ts[-1] != t_max:
        ts.append(t_max)
    hi_vals = {t: m_hi(t) for t in ts}
    hi_vals[0] = m_hi(0)
    lower = None
    for t in ts:
        cand = t * m_lo(t)
        lower = cand if lower is None else max(lower, cand)
    heap: list = []
    bounds = [0] + ts
    for a, b in zip(bounds, bounds[1:]):
        ub = b * hi_vals[a]
        if ub > lower:
            heapq.heappush(heap, (-ub, a, b))
    iters = 0
    upper = lower
    while heap:
        neg_ub, a, b = heapq.heappop(heap)
        ub = -neg_ub
        if ub <= lower + tol:
            # certified tight enough; intervals never pushed are below lower
            upper = max(upper, ub)
            continue
        iters += 1
        if iters > max_iter:
            raise RuntimeError("weak-average refinement failed to converge")
        mid = (a + b) / 2
        hi_vals[mid] = m_hi(mid)
        lower = max(lower, mid * m_lo(mid))
        for lo_t, hi_t in ((a, mid), (mid, b)):
            ub2 = hi_t * hi_vals[lo_t]
            if ub2 > lower:
                heapq.heappush(heap, (-ub2, lo_t, hi_t))
    return lower, max(lower, upper)


def _weak_avg_plf_exact(f: PiecewiseLinear, tol: Fraction) -> Estimate:
    lip = max(abs(s) for s in f.piece_slopes)
    if lip == 0:
        return Estimate(Fraction(0), Fraction(0))
    from .slope import local_slope_plf

    seeds = {abs(s) for s in f.piece_slopes if s != 0}
    if len(f.breakpoints) <= 64:
        seeds |= {local_slope_plf(f, x).value for x in f.breakpoints}
    if len(seeds) > 64:
        ordered = sorted(seeds)
        stride = len(ordered) // 48 + 1
        seeds = set(ordered[::stride]) | {ordered[0], ordered[-1]}

    def m_exact(t):
        return Fraction(1) if t == 0 else superlevel_measure(f, t)

    lo, hi = _sup_product_bracket(m_exact, m_exact, sorted(seeds), lip, Fraction(tol))
    return Estimate(lo, hi)


def _weak_avg_plf_float(f: PiecewiseLinear, tol: float) -> Estimate:
    """Padded floating-point weak average for large breakpoint counts."""
    b = [float(x) for x in f.breakpoints]
    v = [float(x) for x in f.values]
    n = len(b)
    slopes = [(v[i + 1] - v[i]) / (b[i + 1] - b[i]) for i in range(n - 1)]
    lip = max(abs(s) for s in slopes)
    if lip == 0.0:
        return Estimate(0.0, 0.0)

    cache: dict[float, float] = {}

    def m_float(t: float) -> float:
        if t in cache:
            return cache[t]
        pref_min = [0.0] * n
        pref_max = [0.0] * n
        for i in range(n):
            lo_c, hi_c = v[i] - t * b[i], v[i] + t * b[i]
            pref_min[i] = lo_c if i == 0 else min(pref_min[i - 1], lo_c)
            pref_max[i] = hi_c if i == 0 else max(pref_max[i - 1], hi_c)
        suf_min = [0.0] * n
        suf_max = [0.0] * n
        for i in range(n - 1, -1, -1):
            lo_c, hi_c = v[i] + t * b[i], v[i] - t * b[i]
            suf_min[i] = lo_c if i == n - 1 else min(suf_min[i + 1], lo_c)
            suf_max[i] = hi_c if i == n - 1 else max(suf_max[i + 1], hi_c)
        ivals = []
        for i in range(n - 1):
            lo, hi = b[i], b[i + 1]
            m = slopes[i]
            q = v[i] - m * lo
            for slope, offset in (
                (m - t, q - pref_min[i]),
                (m + t, q - suf_min[i + 1]),
                (-m - t, pref_max[i] - q),
                (-m + t, suf_max[i + 1] - q),
            ):
                if slope == 0.0:
                    if offset >= 0.0:
                        ivals.append((lo, hi))
                    continue
                bound = -offset / slope
                if slope > 0.0:
                    if bound <= hi:
                        ivals.append((max(lo, bound), hi))
                elif bound >= lo:
                    ivals.append((lo, min(hi, bound)))
        total = 0.0
        cur_l = cur_r = None
        for lo, hi in sorted(ivals):
            if cur_l is None or lo > cur_r:
                if cur_l is not None:
                    total += cur_r - cur_l
                cur_l, cur_r = lo, hi
            elif hi > cur_r:
                cur_r = hi
        if cur_l is not None:
            total += cur_r - cur_l
        cache[t] = total
        return total

    pad = _FLOAT_PAD

    def m_hi(t) -> float:
        return 1.0 if t == 0 else min(1.0, m_float(float(t)) + pad)

    def m_lo(t) -> float:
        return max(0.0, m_float(float(t)) - pad)

    nonzero = sorted({abs(s) for s in slopes if s != 0.0})
    stride = len(nonzero) // 32 + 1
    seeds = sorted(set(nonzero[::stride]) | {nonzero[0], lip})
    lo, hi = _sup_product_bracket(m_hi, m_lo, seeds, lip, tol)
    return Estimate(float(lo), float(hi) + pad)


def _step_endpoint_forms(f: StepFunction) -> list[tuple[Fraction, Fraction]]:
    """Endpoint trajectories (p, c) meaning p + c/t of the candidate
    intervals generating the slope superlevel set, plus the fixed segment
    bounds as (p, 0)."""
    bounds = [Fraction(0)] + list(f.jump_points) + [Fraction(1)]
    forms: set[tuple[Fraction, Fraction]] = {(p, Fraction(0)) for p in bounds}
    for i, v in enumerate(f.segment_values):
        for j, pv in zip(f.jump_points, f.point_values):
            d = abs(v - pv)
            if d > 0:
                forms.add((j, -d))
                forms.add((j, d))
        for k, v2 in enumerate(f.segment_values):
            d = abs(v - v2)
            if k == i or d == 0:
                continue
            if k < i:
                forms.add((bounds[k + 1], d))
            else:
                forms.add((bounds[k], -d))
    return sorted(forms)


def _weak_avg_step(f: StepFunction, tol: Fraction) -> Estimate:
    """Exact supremum of t * m(t) for a step function.

    Candidate-interval endpoints all move along p + c/t, so between the
    critical thresholds where two trajectories cross, the superlevel measure
    is A + B/t and the product is linear in t: the supremum is attained at a
    critical threshold (or as the constant tail value) and is computed
    exactly, with a zero-width bracket.
    """
    _, max_gap, _ = _step_discontinuity_gaps(f)
    if max_gap == 0:
        return Estimate(Fraction(0), Fraction(0))
    forms = _step_endpoint_forms(f)
    criticals: set[Fraction] = set()
    for a_idx in range(len(forms)):
        p1, c1 = forms[a_idx]
        for p2, c2 in forms[a_idx + 1 :]:
            if p1 == p2:
                continue
            t_cross = (c1 - c2) / (p2 - p1)
            if t_cross > 0:
                criticals.add(t_cross)
    ts = sorted(criticals)
    tail_probe = 2 * ts[-1] if ts else Fraction(1)
    best = tail_probe * _step_slope_superlevel_measure(f, tail_probe)
    for t in ts:
        best = max(best, t * _step_slope_superlevel_measure(f, t))
    return Estimate(best, best)


def weak_avg(f: FunctionSpec, tol=Fraction(1, 10**6), method: str = "auto") -> Estimate:
    """Certified bracket for the weak-L1 functional of the local slope.

    The supremum over thresholds need not be attained and no attainment is
    claimed; the certified claim is the returned lower bound.  ``method``
    picks the arithmetic for piecewise-linear inputs: "exact" rational
    superlevel measures, "float" with roundoff padding, or "auto" (exact
    while coordinate denominators stay desk-sized).
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if method not in ("auto", "exact", "float"):
        raise ValueError(f"unknown method {method!r}")
    g = materialize(f)
    if isinstance(g, StepFunction):
        return _weak_avg_step(g, tol)
    if method == "float":
        return _weak_avg_plf_float(g, float(tol))
    if method == "exact" or (
        g.exact
        and len(g.breakpoints) <= _EXACT_WEAK_MAX_BREAKPOINTS
        and all(
            x.denominator <= _EXACT_WEAK_MAX_DENOMINATOR
            for seq in (g.breakpoints, g.values)
            for x in seq
        )
    ):
        return _weak_avg_plf_exact(g, tol)
    return _weak_avg_plf_float(g, float(tol))


# ---------------------------------------------------------------------------
# Strong average: adaptive quadrature of the local slope.
# ---------------------------------------------------------------------------


def _max_line_integral_bounds(
    lines: list[tuple[float, float]], a: float, b: float
) -> tuple[float, float]:
    """Sound two-sided bounds for the integral over [a,b] of the pointwise
    max of the lines p*x + q.

    The max of lines is convex, so per segment the trapezoid rule of the
    evaluated max over-estimates and the midpoint rule under-estimates; this
    holds for any segmentation, so the hull crossings only serve as a
    tightness heuristic and roundoff there cannot break the bounds.
    """
    if not lines:
        return 0.0, 0.0
    lines = sorted(lines)
    filtered: list[tuple[float, float]] = []
    for p, q in lines:
        if filtered and filtered[-1][0] == p:
            if q > filtered[-1][1]:
                filtered[-1] = (p, q)
            continue
        filtered.append((p, q))

    def cross(l1, l2) -> float:
        return (l1[1] - l2[1]) / (l2[0] - l1[0])

    hull: list[tuple[float, float]] = []
    for ln in filtered:
        while hull:
            if len(hull) >= 2 and cross(hull[-2], ln) <= cross(hull[-2], hull[-1]):
                hull.pop()
            elif len(hull) == 1 and ln[1] >= hull[0][1]:
                # steeper and at least as high at x=0 dominates on x >= 0
                hull.pop()
            else:
                break
        hull.append(ln)
    xs = [a]
    for l1, l2 in zip(hull, hull[1:]):
        xs.append(min(max(cross(l1, l2), xs[-1]), b))
    xs.append(b)

    def max_at(x: float) -> float:
        return max(p * x + q for p, q in filtered)

    lower = upper = 0.0
    v0 = max_at(xs[0])
    for x0, x1 in zip(xs, xs[1:]):
        if x1 <= x0:
            continue
        v1 = max_at(x1)
        upper += (v0 + v1) / 2 * (x1 - x0)
        lower += max_at((x0 + x1) / 2) * (x1 - x0)
        v0 = v1
    return lower, upper


def _strong_avg_plf(f: PiecewiseLinear, tol: float) -> Estimate:
    import math

    bps = [float(x) for x in f.breakpoints]
    vals = [float(x) for x in f.values]
    n = len(bps)
    slopes = [(vals[i + 1] - vals[i]) / (bps[i + 1] - bps[i]) for i in range(n - 1)]
    lip = max(abs(s) for s in slopes)
    if lip == 0.0:
        return Estimate(Fraction(0), Fraction(0))

    def cell_bounds(piece: int, a: float, b: float):
        """(lower_integral, upper_integral, None) or (None, None, split_x).

        Each chord branch h(x) = m + D/(x-c) is monotone and sign-constant
        on the cell (genuine sign changes force a split at the chord zero),
        so |h| ranges between its endpoint magnitudes and integrates in
        closed form.  When one branch dominates the whole cell that closed
        form is the integral; otherwise the branch integrals give a lower
        bound and chord/tangent line envelopes bracket the maximum.
        """
        m = slopes[piece]
        q = vals[piece] - m * bps[piece]
        mid = (a + b) / 2
        length = b - a
        split_at = None
        pad = 0.0
        # branch records: (ga, gb, sg, dnum, c, fuzzy_sign)
        branches: list[tuple[float, float, float, float, float, bool]] = []
        for c, fc in zip(bps, vals):
            if c == a or c == b:
                continue  # node on the piece line; covered by the |m| branch
            dnum = m * c + q - fc  # residual of the node against the piece line
            if dnum == 0.0:
                continue
            ha = m + dnum / (a - c)
            hb = m + dnum / (b - c)
            # endpoint values this close to zero count as zero: splitting on
            # them would chain forever on float jitter around a chord zero
            eps_c = 1e-12 * (abs(m) + abs(ha) + abs(hb)) + 1e-300
            za, zb = abs(ha) <= eps_c, abs(hb) <= eps_c
            if not za and not zb and (ha < 0.0 < hb or hb < 0.0 < ha):
                root = (fc - q) / m if m != 0.0 else mid
                if not (a < root < b):
                    root = mid
                if split_at is None or abs(root - mid) < abs(split_at - mid):
                    split_at = root
                continue
            if split_at is not None:
                continue
            if za and zb:
                continue
            sg = 1.0 if (hb if za else ha) > 0.0 else -1.0
            pad = max(pad, eps_c)
            branches.append((sg * ha, sg * hb, sg, dnum, c, za or zb))
        if split_at is not None:
            return None, None, split_at

        def branch_integral(ga, gb, sg, dnum, c) -> float:
            return sg * (m * length + dnum * math.log((b - c) / (a - c)))

        best_int = abs(m) * length  # the always-present |piece slope| branch
        best_hi, best_hi_id = abs(m), -1
        second_hi = 0.0
        top_lo, top_lo_id = abs(m), -1  # largest certified pointwise floor
        for k, (ga, gb, sg, dnum, c, fuzzy) in enumerate(branches):
            hi = max(ga, gb)
            lo = 0.0 if fuzzy else min(ga, gb)
            if hi > best_hi:
                second_hi = best_hi
                best_hi, best_hi_id = hi, k
            elif hi > second_hi:
                second_hi = hi
            if lo > top_lo:
                top_lo, top_lo_id = lo, k
            best_int = max(best_int, branch_integral(ga, gb, sg, dnum, c))
        rival_hi = second_hi if top_lo_id == best_hi_id else best_hi
        if top_lo >= rival_hi:  # a single branch dominates the whole cell
            e = 1e-13 * (1.0 + best_hi) * length + pad * length
            return max(best_int - e, 0.0), best_int + e, None
        # mixed cell: chord/tangent line envelopes around each branch
        uppers: list[tuple[float, float]] = [(0.0, abs(m))]
        lowers: list[tuple[float, float]] = [(0.0, abs(m))]
        for ga, gb, sg, dnum, c, fuzzy in branches:
            chord_p = (gb - ga) / length
            chord = (chord_p, ga - chord_p * a)
            gm = sg * (m + dnum / (mid - c))
            gmp = -sg * dnum / ((mid - c) * (mid - c))
            tangent = (gmp, gm - gmp * mid)
            if (sg * dnum > 0.0) == (a > c):  # |h| convex on the cell
                uppers.append(chord)
                lowers.append(tangent)
            else:
                uppers.append(tangent)
                lowers.append(chord)
        _, ub = _max_line_integral_bounds(
            [(p, q0 + 2 * pad) for p, q0 in uppers], a, b
        )
        lb_env, _ = _max_line_integral_bounds(lowers, a, b)
        lb = max(lb_env, best_int, 0.0)
        return lb, max(ub, lb), None

    heap: list = []
    serial = 0
    total_lb = total_ub = 0.0

    def push(piece: int, a: float, b: float):
        nonlocal serial, total_lb, total_ub
        if b - a < 1e-14:
            # degenerate cell: piece slope below, global Lipschitz above
            total_lb += abs(slopes[piece]) * (b - a)
            total_ub += lip * (b - a)
            return
        lb, ub, split = cell_bounds(piece, a, b)
        if split is not None:
            push(piece, a, split)
            push(piece, split, b)
            return
        total_lb += lb
        total_ub += ub
        serial += 1
        if ub - lb > 0.0:
            heapq.heappush(heap, (-(ub - lb), serial, piece, a, b, lb, ub))

    for i in range(n - 1):
        push(i, bps[i], bps[i + 1])

    cells = 0
    while heap and total_ub - total_lb > 0.9 * tol:
        cells += 1
        if cells > 200000:
            raise RuntimeError("strong-average quadrature failed to converge")
        _gap, _s, piece, a, b, lb, ub = heapq.heappop(heap)
        total_lb -= lb
        total_ub -= ub
        mid = (a + b) / 2
        push(piece, a, mid)
        push(piece, mid, b)

    pad = _FLOAT_PAD * (1.0 + abs(total_ub))
    return Estimate(max(0.0, total_lb - pad), total_ub + pad)


def _strong_avg_step(f: StepFunction, cap: float, max_depth: int) -> Estimate:
    gaps, max_gap, _min_dist = _step_discontinuity_gaps(f)
    if max_gap == 0:
        return Estimate(Fraction(0), Fraction(0))
    # Near a jump the slope exceeds gap/distance; on each dyadic cell
    # approaching the jump the midpoint rule certifies at least 2*gap/3 of
    # integral (the integrand is convex).  Refinement round d doubles the
    # dyadic cell count per side, so certified partial integrals grow
    # geometrically until they clear the cap.
    per_round = sum((2 * (dl + dr) / 3 for _, dl, dr in gaps), start=Fraction(0))
    for depth in range(max_depth + 1):
        partial = per_round * (2**depth)
        if partial > cap:
            return Estimate(
                partial,
                INF,
                verdict=DIVERGENT,
                cap=cap,
                depth=depth,
                upper_certified=False,
            )
    raise RuntimeError(
        f"partial integrals did not clear cap {cap} within depth {max_depth}"
    )


def strong_avg(
    f: FunctionSpec,
    tol=Fraction(1, 10**6),
    cap: float = 1e6,
    max_depth: int = 60,
) -> Estimate:
    """Bracket for the mean of the local slope under the uniform law.

    Piecewise-linear inputs get adaptive quadrature with subdivision forced
    at every breakpoint; per-cell bounds come from chord/tangent envelopes of
    the chord-slope branches, and the slope is bounded by the Lipschitz
    constant, so the bracket narrows below ``tol``.  A step function with a
    genuine discontinuity has a non-integrable slope: certified partial
    lower bounds grow past ``cap`` and the verdict is divergent.
    """
    if float(tol) <= 0 or cap <= 0:
        raise ValueError("tol and cap must be positive")
    g = materialize(f)
    if isinstance(g, StepFunction):
        return _strong_avg_step(g, cap, max_depth)
    return _strong_avg_plf(g, float(tol))


# ---------------------------------------------------------------------------
# Discrete weak-L1 functional and the inequality-chain reports.
# ---------------------------------------------------------------------------


def weak_l1_samples(values: Sequence) -> ExtendedRational:
    """Weak-L1 functional of the empirical law of the samples: the largest
    v_(i) * i/n over the descending order statistics v_(i)."""
    if len(values) == 0:
        raise ValueError("need at least one sample")
    n = len(values)
    mags = sorted((abs(v) for v in values), reverse=True)
    return max(v * Fraction(i + 1, n) for i, v in enumerate(mags))


@dataclass(frozen=True)
class ChainCheck:
    """One verified inequality: passes iff lhs <= rhs + slack."""

    name: str
    lhs: ExtendedRational
    rhs: ExtendedRational
    slack: ExtendedRational

    @property
    def passed(self) -> bool:
        if not is_finite(self.rhs):
            return True
        if not is_finite(self.lhs):
            return False
        return self.lhs <= self.rhs + self.slack


def verify_chain(f: FunctionSpec, tol=Fraction(1, 10**6)) -> list[ChainCheck]:
    """Markov-style chain for a piecewise-linear function: the weak average
    is at most the strong average, which is at most the Lipschitz constant."""
    g = materialize(f)
    if not isinstance(g, PiecewiseLinear):
        raise TypeError("verify_chain expects a piecewise-linear function")
    w = weak_avg(g, tol)
    s = strong_avg(g, tol)
    lip = lipschitz_constant(g)
    return [
        ChainCheck("weak_le_strong", w.lower, s.upper, Fraction(tol)),
        ChainCheck("strong_le_lipschitz", s.lower, lip, Fraction(tol)),
    ]


def variation_chain(
    f: FunctionSpec,
    tol=Fraction(1, 10**6),
    weak_slack=Fraction(1, 10**9),
    strong_slack=Fraction(1, 10**6),
) -> list[ChainCheck]:
    """Two-sided sandwich: half the weak average is at most the total
    variation, which is at most the strong average."""
    from .variation import total_variation

    g = materialize(f)
    v = total_variation(g)
    w = weak_avg(g, tol)
    s = strong_avg(g, tol)
    return [
        ChainCheck("half_weak_le_variation", w.lower / 2, v, Fraction(weak_slack)),
        ChainCheck("variation_le_strong", v, s.upper, Fraction(strong_slack)),
    ]
