"""Deterministic corpora: seeded random piecewise-linear functions plus the
named constructions, as used by the verification harness and the acceptance
suite.  Everything is a pure function of the seed."""

from __future__ import annotations

import random
from fractions import Fraction

from . import constructions
from .funcs import (
    AltHarmonic,
    DyadicWitness,
    FunctionSpec,
    PackingWitness,
    PiecewiseLinear,
    XSinInvX,
    regularize,
)

COORD_DENOMINATOR = 10**4


def random_plf(
    rng: random.Random,
    min_breakpoints: int = 2,
    max_breakpoints: int = 50,
    coord_denominator: int = COORD_DENOMINATOR,
):
    """Random piecewise-linear function: breakpoint count uniform on the
    given range, interior breakpoints uniform rationals with the given
    denominator, values uniform rationals in [-1, 1]."""
    n = rng.randint(min_breakpoints, max_breakpoints)
    interior = sorted(rng.sample(range(1, coord_denominator), n - 2)) if n > 2 else []
    bps = (
        [Fraction(0)]
        + [Fraction(k, coord_denominator) for k in interior]
        + [Fraction(1)]
    )
    vals = [
        Fraction(rng.randint(-coord_denominator, coord_denominator), coord_denominator)
        for _ in bps
    ]
    return PiecewiseLinear(tuple(bps), tuple(vals))


def named_constructions() -> list[tuple[str, FunctionSpec]]:
    """The named witnesses at canonical desk-scale parameters."""
    return [
        ("identity", constructions.identity_plf()),
        ("tent", constructions.tent_plf()),
        ("step_half", constructions.indicator_step()),
        ("step_half_regularized", regularize(constructions.indicator_step())),
        ("alt_harmonic_16", AltHarmonic(16)),
        ("alt_harmonic_64", AltHarmonic(64)),
        (
            "dyadic_alternating_8",
            DyadicWitness(tuple((-1) ** k for k in range(1, 9)), Fraction(1, 6)),
        ),
        ("packing_3", PackingWitness((1, -1, 1), Fraction(1, 4), Fraction(1))),
        ("xsininvx_6", XSinInvX(6)),
    ]


def verification_corpus(
    seed: int, size: int = 100, max_breakpoints: int = 50
) -> list[tuple[str, FunctionSpec]]:
    """`size` seeded random functions plus the named constructions, with
    stable sortable identifiers."""
    rng = random.Random(seed)
    out: list[tuple[str, FunctionSpec]] = [
        (f"plf_{i:03d}", random_plf(rng, max_breakpoints=max_breakpoints))
        for i in range(size)
    ]
    out.extend(named_constructions())
    return out
