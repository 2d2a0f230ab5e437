"""Shared hypothesis strategies and helpers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from avlip.funcs import PiecewiseLinear, StepFunction


@st.composite
def rationals(draw, min_value=-4, max_value=4, max_denominator=60):
    den = draw(st.integers(min_value=1, max_value=max_denominator))
    num = draw(st.integers(min_value=min_value * den, max_value=max_value * den))
    return Fraction(num, den)


@st.composite
def unit_rationals(draw, max_denominator=60):
    den = draw(st.integers(min_value=1, max_value=max_denominator))
    num = draw(st.integers(min_value=0, max_value=den))
    return Fraction(num, den)


@st.composite
def plfs(draw, max_interior=6, max_denominator=40):
    interior = draw(
        st.lists(
            unit_rationals(max_denominator=max_denominator).filter(
                lambda x: 0 < x < 1
            ),
            max_size=max_interior,
            unique=True,
        )
    )
    bps = [Fraction(0)] + sorted(interior) + [Fraction(1)]
    vals = [draw(rationals(max_denominator=max_denominator)) for _ in bps]
    return PiecewiseLinear(tuple(bps), tuple(vals))


@st.composite
def step_functions(draw, max_jumps=3, denominator=24):
    count = draw(st.integers(min_value=1, max_value=max_jumps))
    jumps = draw(
        st.lists(
            st.integers(min_value=1, max_value=denominator - 1),
            min_size=count,
            max_size=count,
            unique=True,
        )
    )
    jp = tuple(Fraction(j, denominator) for j in sorted(jumps))
    pv = tuple(draw(rationals(max_denominator=12)) for _ in jp)
    sv = tuple(draw(rationals(max_denominator=12)) for _ in range(len(jp) + 1))
    return StepFunction(jp, pv, sv)


@pytest.fixture
def rng():
    return random.Random(20240817)
