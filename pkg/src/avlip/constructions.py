"""Expansion of the named witness families into concrete functions.

Each family is a finite truncation of an infinite construction; truncations
extend by a constant beyond the last node, which adds no variation and no
slope, so every upper bound measured on the truncation also holds for it as
a member of the infinite family.
"""

from __future__ import annotations

from fractions import Fraction

from .funcs import (
    AltHarmonic,
    ConcreteFunction,
    DyadicWitness,
    FunctionSpec,
    PackingWitness,
    PiecewiseLinear,
    StepFunction,
    XSinInvX,
)

# 50 decimal digits of pi; ample for the demonstration-grade x*sin(1/x) nodes
_PI = Fraction("3.14159265358979323846264338327950288419716939937511")
_NODE_DENOMINATOR_CAP = 10**12


def expand_alt_harmonic(n: int) -> PiecewiseLinear:
    """Nodes 1/k for k <= n carrying the alternating partial sums
    1 - 1/2 + ... +- 1/k, linearly interpolated, constant left of 1/n.

    The variation telescopes to the harmonic tail: strictly increasing and
    unbounded in n, while the weak average stays bounded.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    partial = Fraction(0)
    sums = []
    for k in range(1, n + 1):
        partial += Fraction((-1) ** (k + 1), k)
        sums.append(partial)
    bps = [Fraction(0)] + [Fraction(1, k) for k in range(n, 0, -1)]
    vals = [sums[-1]] + [sums[k - 1] for k in range(n, 0, -1)]
    if n == 1:
        return PiecewiseLinear((Fraction(0), Fraction(1)), (sums[0], sums[0]))
    return PiecewiseLinear(tuple(bps), tuple(vals))


def expand_dyadic_witness(labels, gamma) -> PiecewiseLinear:
    """Value label_k * gamma at 2^-k for k = 1..m, linear in between,
    constant on [0, 2^-m] and on [1/2, 1].

    The slope inside the k-th dyadic cell is at most 4*gamma*2^k in
    magnitude, which keeps the weak average at most 6*gamma regardless of m
    or the label pattern.
    """
    spec = DyadicWitness(tuple(labels), Fraction(gamma))
    m = len(spec.labels)
    bps = [Fraction(0)] + [Fraction(1, 2**k) for k in range(m, 0, -1)]
    vals = [spec.labels[m - 1] * spec.gamma] + [
        spec.labels[k - 1] * spec.gamma for k in range(m, 0, -1)
    ]
    if bps[-1] != 1:
        bps.append(Fraction(1))
        vals.append(vals[-1])
    return PiecewiseLinear(tuple(bps), tuple(vals))


def max_packing_points(lipschitz, gamma) -> int:
    """Largest point count of a pitch-2*gamma/L packing of [0,1]."""
    return 1 + (Fraction(lipschitz) / (2 * Fraction(gamma))).__floor__()


def expand_packing_witness(labels, gamma, lipschitz) -> PiecewiseLinear:
    """Value label_i * gamma at the packing points (i-1) * 2*gamma/L,
    linearly interpolated and constant up to 1.

    Consecutive values differ by at most 2*gamma over a pitch of 2*gamma/L,
    so every slope magnitude is at most L.
    """
    spec = PackingWitness(tuple(labels), Fraction(gamma), Fraction(lipschitz))
    m = len(spec.labels)
    cap = max_packing_points(spec.lipschitz, spec.gamma)
    if m > cap:
        raise ValueError(
            f"{m} points do not fit a 2*gamma/L packing of [0,1] (max {cap})"
        )
    pitch = 2 * spec.gamma / spec.lipschitz
    bps = [pitch * i for i in range(m)]
    vals = [spec.labels[i] * spec.gamma for i in range(m)]
    if m == 1:
        return PiecewiseLinear(
            (Fraction(0), Fraction(1)), (vals[0], vals[0])
        )
    if bps[-1] != 1:
        bps.append(Fraction(1))
        vals.append(vals[-1])
    return PiecewiseLinear(tuple(bps), tuple(vals))


def _approx_node(k: int) -> Fraction:
    """Rational approximation of 2/((2k+1)pi), capped denominator."""
    exact = 2 / ((2 * k + 1) * _PI)
    return exact.limit_denominator(_NODE_DENOMINATOR_CAP)


def expand_x_sin_inv_x(depth: int) -> PiecewiseLinear:
    """Interpolant of x*sin(1/x) at the near-extrema 2/((2k+1)pi), k <= depth,
    with value 0 at 0 and a constant extension right of the largest node.

    sin(1/x) is exactly (-1)^k at those nodes, so the only approximation is
    the rational rounding of the node coordinates; the result is flagged
    ``exact=False`` and stays out of exact-arithmetic test corpora.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    nodes = [_approx_node(k) for k in range(depth, -1, -1)]  # increasing in x
    bps = [Fraction(0)] + nodes + [Fraction(1)]
    vals = [Fraction(0)] + [
        (-1) ** k * nodes[depth - k] for k in range(depth, -1, -1)
    ] + [nodes[-1]]
    return PiecewiseLinear(tuple(bps), tuple(vals), exact=False)


def expand(spec: FunctionSpec) -> ConcreteFunction:
    """Materialize any function spec to its concrete class."""
    if isinstance(spec, (PiecewiseLinear, StepFunction)):
        return spec
    if isinstance(spec, AltHarmonic):
        return expand_alt_harmonic(spec.n)
    if isinstance(spec, DyadicWitness):
        return expand_dyadic_witness(spec.labels, spec.gamma)
    if isinstance(spec, PackingWitness):
        return expand_packing_witness(spec.labels, spec.gamma, spec.lipschitz)
    if isinstance(spec, XSinInvX):
        return expand_x_sin_inv_x(spec.depth)
    raise TypeError(f"not a function spec: {spec!r}")


def indicator_step(threshold=Fraction(1, 2)) -> StepFunction:
    """The canonical tightness witness: 0 up to the threshold (inclusive),
    1 beyond it."""
    threshold = Fraction(threshold)
    return StepFunction(
        (threshold,), (Fraction(0),), (Fraction(0), Fraction(1))
    )


def identity_plf() -> PiecewiseLinear:
    return PiecewiseLinear((Fraction(0), Fraction(1)), (Fraction(0), Fraction(1)))


def tent_plf() -> PiecewiseLinear:
    return PiecewiseLinear(
        (Fraction(0), Fraction(1, 2), Fraction(1)),
        (Fraction(0), Fraction(1), Fraction(0)),
    )
