"""Margin-shattering certificates for the weak and strong smoothness balls.

A point set is gamma-shattered by a class when, for some offsets, every sign
labeling is realized by a class member with margin at least gamma at every
point.  Certificates here enumerate all 2^m labelings, evaluate an explicit
witness for each, and verify both the margins (exact rational arithmetic)
and a certified budget bound for the witness's seminorm: the Lipschitz
constant for the strong class (which dominates the strong average), a
certified weak-average upper bound for the weak class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .constructions import (
    expand_dyadic_witness,
    expand_packing_witness,
    max_packing_points,
)
from .funcs import FunctionSpec, evaluate, materialize
from .rational import ExtendedRational, is_finite
from .seminorms import weak_avg
from .slope import lipschitz_constant
from .variation import total_variation

ENUMERATION_CAP = 20  # 2^m labelings; anything beyond this is off the desk

WEAK = "weak"
STRONG = "strong"


@dataclass(frozen=True)
class ShatterInstance:
    """Points to shatter, the margin, and per-point offsets (default 0).

    The canonical witnesses are symmetric around zero, so zero offsets
    realize their best margins; arbitrary rational offsets are accepted.
    """

    points: tuple[Fraction, ...]
    gamma: Fraction
    offsets: tuple[Fraction, ...] = ()

    def __post_init__(self):
        pts = tuple(Fraction(x) for x in self.points)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        offs = tuple(Fraction(r) for r in self.offsets) or tuple(
            Fraction(0) for _ in pts
        )
        object.__setattr__(self, "offsets", offs)
        if not pts:
            raise ValueError("need at least one point")
        if any(x < 0 or x > 1 for x in pts):
            raise ValueError("points must lie in [0,1]")
        if any(a >= b for a, b in zip(pts, pts[1:])):
            raise ValueError("points must be strictly increasing")
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")
        if len(offs) != len(pts):
            raise ValueError("need one offset per point")

    @property
    def m(self) -> int:
        return len(self.points)


def labeling_from_code(code: int, m: int) -> tuple[int, ...]:
    """Labeling encoded as a binary number: bit i (LSB first) set means the
    i-th point carries +1."""
    return tuple(1 if (code >> i) & 1 else -1 for i in range(m))


@dataclass(frozen=True)
class LabelingResult:
    code: int
    labels: tuple[int, ...]
    witness: FunctionSpec
    margin: Fraction
    seminorm_bound: ExtendedRational

    def within_budget(self, limit: Fraction, tol: Fraction) -> bool:
        return is_finite(self.seminorm_bound) and self.seminorm_bound <= limit * (
            1 + tol
        )


@dataclass(frozen=True)
class ShatterCertificate:
    instance: ShatterInstance
    budget_kind: str
    budget_limit: Fraction
    tol: Fraction
    entries: tuple[LabelingResult, ...]

    @property
    def margins_ok(self) -> bool:
        return all(e.margin >= self.instance.gamma for e in self.entries)

    @property
    def budgets_ok(self) -> bool:
        return all(
            e.within_budget(self.budget_limit, self.tol) for e in self.entries
        )

    @property
    def passed(self) -> bool:
        return (
            len(self.entries) == 2**self.instance.m
            and self.margins_ok
            and self.budgets_ok
        )


def check_shattered(
    instance: ShatterInstance,
    witness_provider: Callable[[tuple[int, ...]], FunctionSpec],
    budget_kind: str,
    budget_limit: Fraction,
    tol=Fraction(1, 100),
) -> ShatterCertificate:
    """Enumerate all labelings, verify margins and budgets per witness.

    The weak budget is certified through the weak-average upper bound; the
    strong budget through the exact Lipschitz constant, which dominates the
    strong average.  Weak-average brackets of sign-flipped witnesses agree by
    homogeneity, so each is computed once per sign orbit.
    """
    if budget_kind not in (WEAK, STRONG):
        raise ValueError(f"unknown budget kind {budget_kind!r}")
    m = instance.m
    if m > ENUMERATION_CAP:
        raise ValueError(f"{m} points exceed the 2^{ENUMERATION_CAP} enumeration cap")
    budget_limit = Fraction(budget_limit)
    tol = Fraction(tol)
    # large enumerations certify the weak budget in padded floats; the pad is
    # orders of magnitude below the budget tolerance
    weak_method = "float" if m > 8 else "auto"
    entries = []
    bound_cache: dict[int, ExtendedRational] = {}
    for code in range(2**m):
        labels = labeling_from_code(code, m)
        witness = witness_provider(labels)
        concrete = materialize(witness)
        margin = min(
            y * (concrete.value_at(x) - r)
            for y, x, r in zip(labels, instance.points, instance.offsets)
        )
        orbit = min(code, 2**m - 1 - code)  # sign flip leaves both bounds fixed
        if orbit in bound_cache:
            bound = bound_cache[orbit]
        else:
            if budget_kind == STRONG:
                bound = lipschitz_constant(concrete)
            else:
                bound = weak_avg(
                    concrete, tol * budget_limit / 2, method=weak_method
                ).upper
            bound_cache[orbit] = bound
        entries.append(LabelingResult(code, labels, witness, margin, bound))
    return ShatterCertificate(
        instance, budget_kind, budget_limit, tol, tuple(entries)
    )


def packing_instance(lipschitz, gamma) -> ShatterInstance:
    """The pitch-2*gamma/L packing points with zero offsets."""
    lipschitz, gamma = Fraction(lipschitz), Fraction(gamma)
    m = max_packing_points(lipschitz, gamma)
    pitch = 2 * gamma / lipschitz
    return ShatterInstance(tuple(pitch * i for i in range(m)), gamma)


def fat_lower_bound_strong(
    lipschitz, gamma, tol=Fraction(1, 100)
) -> tuple[int, ShatterCertificate]:
    """Certified shattered-set size 1 + floor(L / 2 gamma) for the strong
    ball of radius L, witnessed by packing interpolants."""
    lipschitz, gamma = Fraction(lipschitz), Fraction(gamma)
    if lipschitz <= 0 or gamma <= 0:
        raise ValueError("lipschitz and gamma must be positive")
    instance = packing_instance(lipschitz, gamma)
    cert = check_shattered(
        instance,
        lambda labels: expand_packing_witness(labels, gamma, lipschitz),
        STRONG,
        lipschitz,
        tol,
    )
    return instance.m, cert


def dyadic_instance(m: int, gamma) -> ShatterInstance:
    """The points 2^-m < ... < 2^-1 with zero offsets."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return ShatterInstance(
        tuple(Fraction(1, 2**k) for k in range(m, 0, -1)), Fraction(gamma)
    )


def dyadic_witness_provider(m: int, gamma) -> Callable[[tuple[int, ...]], FunctionSpec]:
    """Adapter from instance-ordered labels (ascending points) to the
    level-ordered labels of the dyadic witness construction."""
    gamma = Fraction(gamma)

    def provider(labels: tuple[int, ...]) -> FunctionSpec:
        level_labels = tuple(labels[m - k] for k in range(1, m + 1))
        return expand_dyadic_witness(level_labels, gamma)

    return provider


@dataclass(frozen=True)
class NecessityReport:
    variation: Fraction
    required: Fraction
    realized_labels: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.variation >= self.required


def bv_shatter_necessity(
    f: FunctionSpec, points: Sequence[Fraction], gamma
) -> NecessityReport:
    """Necessary variation for realizing an alternating labeling: a function
    meeting margin gamma with alternating signs on m sorted points swings by
    at least 2*gamma between neighbors, so its variation is at least
    2*gamma*(m-1) (the points themselves form the witnessing partition)."""
    pts = sorted(Fraction(x) for x in points)
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    vals = [evaluate(f, x) for x in pts]
    for start in (1, -1):
        labels = tuple(start * (-1) ** i for i in range(len(pts)))
        margin = min(y * v for y, v in zip(labels, vals))
        if margin >= gamma:
            required = 2 * gamma * (len(pts) - 1)
            return NecessityReport(total_variation(f), required, labels)
    raise ValueError(
        "function does not realize an alternating labeling with the "
        "requested margin"
    )
