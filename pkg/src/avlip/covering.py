"""Disjoint-subsequence selection over closed segments with the guarantee
that the selected total length is at least half the measure of the union.

The selection follows the inductive argument it certifies: while three alive
segments share a point (by Helly's theorem in one dimension that is exactly
when the intersection graph has a triangle, and an interval graph with a
cycle always has a triangle), the one of the three that is covered by the
other two is discarded - this never changes the union.  Once no point is
covered three times the intersection graph is a forest; each tree is
2-colored and the color class of larger total length is kept.  Same-colored
segments are pairwise non-adjacent, hence disjoint; the code still asserts
that at runtime and raises :class:`LemmaViolation` if it ever fails.

All endpoint comparisons are exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence


class LemmaViolation(AssertionError):
    """Raised if a selection that must be disjoint is found not to be."""


@dataclass(frozen=True)
class Segment:
    """Closed segment [left, right]; touching endpoints count as intersecting."""

    left: Fraction
    right: Fraction

    def __post_init__(self):
        object.__setattr__(self, "left", Fraction(self.left))
        object.__setattr__(self, "right", Fraction(self.right))
        if self.left > self.right:
            raise ValueError(f"segment with left {self.left} > right {self.right}")

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    def intersects(self, other: "Segment") -> bool:
        return max(self.left, other.left) <= min(self.right, other.right)


def union_measure(segments: Iterable[Segment]) -> Fraction:
    """Exact Lebesgue measure of the union, by sort and merge."""
    items = sorted((s.left, s.right) for s in segments)
    total = Fraction(0)
    cur_l: Fraction | None = None
    cur_r = Fraction(0)
    for left, right in items:
        if cur_l is None or left > cur_r:
            if cur_l is not None:
                total += cur_r - cur_l
            cur_l, cur_r = left, right
        elif right > cur_r:
            cur_r = right
    if cur_l is not None:
        total += cur_r - cur_l
    return total


@dataclass(frozen=True)
class SelectionResult:
    indices: tuple[int, ...]
    selected_total: Fraction
    union_total: Fraction

    @property
    def meets_half_bound(self) -> bool:
        return 2 * self.selected_total >= self.union_total


def _drop_from_triple(segments: Sequence[Segment], triple: list[int]) -> int:
    """Index (into `segments`) to discard from three segments sharing a point.

    With the triple sorted by right endpoint, the middle one is covered by
    the union of the outer two whenever its left endpoint is not the
    smallest; otherwise the first is contained in the middle one.
    """
    order = sorted(triple, key=lambda i: (segments[i].right, segments[i].left, i))
    s1, s2, _s3 = order
    return s2 if segments[s2].left >= segments[s1].left else s1


def select_disjoint(segments: Sequence[Segment]) -> SelectionResult:
    """Pairwise-disjoint subsequence whose total length is >= half the union.

    Deterministic: ties between the two color classes of a tree go to the
    class containing the tree's smallest segment index.
    """
    n = len(segments)
    if n == 0:
        raise ValueError("need at least one segment")

    # Sweep 1: whenever a third segment covers the current point, discard the
    # covered member of the triple.  Adds sort before removes at a shared
    # coordinate, which is exactly closed-segment intersection semantics.
    events = sorted(
        [(s.left, 0, i) for i, s in enumerate(segments)]
        + [(s.right, 1, i) for i, s in enumerate(segments)]
    )
    alive = [True] * n
    active: dict[int, None] = {}
    for _coord, kind, i in events:
        if not alive[i]:
            continue
        if kind == 1:
            active.pop(i, None)
            continue
        active[i] = None
        if len(active) == 3:
            drop = _drop_from_triple(segments, list(active))
            alive[drop] = False
            del active[drop]

    kept = [i for i in range(n) if alive[i]]

    # Sweep 2: alive coverage depth is at most 2, so each arriving segment
    # overlaps at most one active segment; collect forest edges.
    adj: dict[int, list[int]] = {i: [] for i in kept}
    events2 = sorted(
        [(segments[i].left, 0, i) for i in kept]
        + [(segments[i].right, 1, i) for i in kept]
    )
    active2: dict[int, None] = {}
    for _coord, kind, i in events2:
        if kind == 1:
            active2.pop(i, None)
            continue
        for j in active2:
            adj[i].append(j)
            adj[j].append(i)
        active2[i] = None

    # 2-color each tree, keep the heavier class per tree.
    chosen: list[int] = []
    color: dict[int, int] = {}
    for root in kept:
        if root in color:
            continue
        comp: list[int] = []
        color[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in adj[u]:
                if v not in color:
                    color[v] = 1 - color[u]
                    stack.append(v)
        cls = {0: [u for u in comp if color[u] == 0], 1: [u for u in comp if color[u] == 1]}
        len0 = sum((segments[u].length for u in cls[0]), start=Fraction(0))
        len1 = sum((segments[u].length for u in cls[1]), start=Fraction(0))
        if len0 > len1:
            pick = 0
        elif len1 > len0:
            pick = 1
        else:
            pick = color[min(comp)]
        chosen.extend(cls[pick])

    chosen.sort()
    _assert_pairwise_disjoint(segments, chosen)
    total = sum((segments[i].length for i in chosen), start=Fraction(0))
    result = SelectionResult(tuple(chosen), total, union_measure(segments))
    if not result.meets_half_bound:
        raise LemmaViolation(
            f"selected total {result.selected_total} below half of union "
            f"{result.union_total}"
        )
    return result


def _assert_pairwise_disjoint(segments: Sequence[Segment], indices: list[int]) -> None:
    ordered = sorted(indices, key=lambda i: (segments[i].left, segments[i].right))
    for a, b in zip(ordered, ordered[1:]):
        if segments[a].right >= segments[b].left:
            raise LemmaViolation(
                f"selected segments {a} and {b} intersect: "
                f"{segments[a]} vs {segments[b]}"
            )


def best_disjoint_total(segments: Sequence[Segment]) -> Fraction:
    """Exact maximum total length over all pairwise-disjoint subsets
    (weighted interval scheduling on the segments sorted by right endpoint)."""
    n = len(segments)
    if n == 0:
        return Fraction(0)
    order = sorted(range(n), key=lambda i: (segments[i].right, segments[i].left))
    rights = [segments[i].right for i in order]
    best = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        s = segments[order[k - 1]]
        # last j (1-based) with right endpoint strictly left of s.left
        lo, hi = 0, k - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if rights[mid - 1] < s.left:
                lo = mid
            else:
                hi = mid - 1
        best[k] = max(best[k - 1], best[lo] + s.length)
    return best[n]


def best_disjoint_total_bruteforce(segments: Sequence[Segment]) -> Fraction:
    """Plain exhaustive search over disjoint subsets; exponential, used as an
    oracle on small instances."""
    n = len(segments)
    order = sorted(range(n), key=lambda i: (segments[i].left, segments[i].right))
    denom = lcm(*(s.length.denominator for s in segments)) if segments else 1
    lens = [int(segments[i].length * denom) for i in order]
    lefts = [segments[i].left for i in order]
    rights = [segments[i].right for i in order]

    def rec(i: int, frontier: Fraction | None) -> int:
        if i >= n:
            return 0
        skip = rec(i + 1, frontier)
        if frontier is None or lefts[i] > frontier:
            take = lens[i] + rec(i + 1, rights[i])
            return max(skip, take)
        return skip

    return Fraction(rec(0, None), denom)
