"""Averaged smoothness functionals: exact superlevel measures (two routes),
certified brackets, seminorm axioms, and the inequality chains."""

import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from avlip.constructions import identity_plf, indicator_step, tent_plf
from avlip.corpus import random_plf
from avlip.funcs import PiecewiseLinear, StepFunction, add, regularize, scale
from avlip.seminorms import (
    DIVERGENT,
    Estimate,
    strong_avg,
    superlevel_measure,
    superlevel_measure_bruteforce,
    variation_chain,
    verify_chain,
    weak_avg,
    weak_l1_samples,
)
from avlip.slope import lipschitz_constant
from avlip.variation import total_variation

from conftest import plfs, rationals

TOL = Q(1, 10**6)


# --- superlevel sets -------------------------------------------------------


def test_superlevel_identity():
    assert superlevel_measure(identity_plf(), Q(1, 2)) == 1
    assert superlevel_measure(identity_plf(), Q(2)) == 0


def test_superlevel_tent():
    assert superlevel_measure(tent_plf(), Q(2)) == 1
    assert superlevel_measure(tent_plf(), Q(2) + Q(1, 100)) == 0


def test_superlevel_rejects_nonpositive_threshold():
    with pytest.raises(ValueError):
        superlevel_measure(identity_plf(), Q(0))


@settings(max_examples=120, deadline=None)
@given(plfs(), rationals(min_value=0, max_value=6).filter(lambda t: t > 0))
def test_superlevel_envelope_equals_bruteforce(f, t):
    assert superlevel_measure(f, t) == superlevel_measure_bruteforce(f, t)


def test_superlevel_nonincreasing_in_threshold(rng):
    for _ in range(4):
        f = random_plf(rng, max_breakpoints=12)
        for _ in range(25):
            t1 = Q(rng.randint(1, 400), rng.randint(1, 20))
            t2 = t1 + Q(rng.randint(1, 100), rng.randint(1, 20))
            assert superlevel_measure(f, t1) >= superlevel_measure(f, t2)


def test_superlevel_product_bounded_by_twice_variation(rng):
    for _ in range(6):
        f = random_plf(rng, max_breakpoints=15)
        v = total_variation(f)
        for _ in range(20):
            t = Q(rng.randint(1, 2000), rng.randint(1, 10))
            assert t * superlevel_measure(f, t) <= 2 * v


# --- weak average ----------------------------------------------------------


def test_weak_avg_identity_exact():
    w = weak_avg(identity_plf(), TOL)
    assert w.lower == 1
    assert w.upper <= 1 + TOL


def test_weak_avg_step_is_two_exactly():
    w = weak_avg(indicator_step(), TOL)
    assert w.lower == 2 and w.upper == 2
    w = weak_avg(regularize(indicator_step()), TOL)
    assert w.lower == 2 and w.upper == 2


def test_weak_avg_constant_zero():
    const = PiecewiseLinear((Q(0), Q(1)), (Q(5), Q(5)))
    w = weak_avg(const, TOL)
    assert w.lower == 0 and w.upper == 0


def test_weak_avg_bracket_invariant():
    for f in (identity_plf(), tent_plf()):
        w = weak_avg(f, TOL)
        assert w.lower <= w.upper <= w.lower + TOL


def test_weak_avg_float_path_brackets_exact_value():
    f = identity_plf()
    exact = weak_avg(f, Q(1, 1000))
    approx = weak_avg(f, Q(1, 1000), method="float")
    assert float(approx.lower) - 1e-6 <= float(exact.lower) <= float(approx.upper) + 1e-6


def test_weak_avg_method_validation():
    with pytest.raises(ValueError):
        weak_avg(identity_plf(), TOL, method="fancy")
    with pytest.raises(ValueError):
        weak_avg(identity_plf(), Q(0))


# --- strong average --------------------------------------------------------


def test_strong_avg_identity():
    s = strong_avg(identity_plf(), TOL)
    assert s.verdict == "finite"
    assert abs(float(s.lower) - 1) < 1e-5 and abs(float(s.upper) - 1) < 1e-5
    assert float(s.width) <= float(TOL)


def test_strong_avg_constant_zero():
    const = PiecewiseLinear((Q(0), Q(1)), (Q(2), Q(2)))
    s = strong_avg(const, TOL)
    assert s.lower == 0 and s.upper == 0


def test_strong_avg_step_diverges_beyond_cap():
    s = strong_avg(indicator_step(), TOL, cap=1000.0)
    assert s.is_divergent
    assert s.verdict == DIVERGENT
    assert s.lower > 1000
    assert s.depth is not None and s.depth <= 40
    assert s.cap == 1000.0


def test_strong_avg_constant_step_is_zero():
    const = StepFunction((Q(1, 3),), (Q(7),), (Q(7), Q(7)))
    s = strong_avg(const, TOL)
    assert not s.is_divergent and s.upper == 0


def test_strong_avg_rejects_bad_params():
    with pytest.raises(ValueError):
        strong_avg(identity_plf(), Q(0))
    with pytest.raises(ValueError):
        strong_avg(identity_plf(), TOL, cap=-1.0)


def test_estimate_invariant():
    with pytest.raises(ValueError):
        Estimate(Q(2), Q(1))


@settings(max_examples=15, deadline=None)
@given(plfs(max_interior=4, max_denominator=16))
def test_strong_bracket_straddles_fine_riemann_sum(f):
    from avlip.slope import local_slope_plf

    s = strong_avg(f, Q(1, 1000))
    n = 400
    riemann = sum(
        local_slope_plf(f, Q(2 * k + 1, 2 * n)).value for k in range(n)
    ) / n
    assert float(s.lower) - 0.25 <= float(riemann) <= float(s.upper) + 0.25


# --- axioms and chains -----------------------------------------------------


def test_weak_homogeneity_small_corpus(rng):
    for _ in range(6):
        f = random_plf(rng, max_breakpoints=8)
        w = weak_avg(f, TOL)
        for alpha in (Q(-2), Q(1, 2), Q(3)):
            ws = weak_avg(scale(f, alpha), TOL)
            scaled = (abs(alpha) * w.lower, abs(alpha) * w.upper)
            assert ws.lower <= scaled[1] + 3 * TOL
            assert scaled[0] <= ws.upper + 3 * TOL


def test_strong_homogeneity_small_corpus(rng):
    for _ in range(4):
        f = random_plf(rng, max_breakpoints=8)
        s = strong_avg(f, TOL)
        for alpha in (Q(-2), Q(1, 2), Q(3)):
            ss = strong_avg(scale(f, alpha), TOL)
            assert float(ss.lower) <= float(abs(alpha) * s.upper) + 3e-6
            assert float(abs(alpha) * s.lower) <= float(ss.upper) + 3e-6


def test_weak_quasi_triangle_small_corpus(rng):
    for _ in range(10):
        f = random_plf(rng, max_breakpoints=8)
        g = random_plf(rng, max_breakpoints=8)
        wf, wg = weak_avg(f, TOL), weak_avg(g, TOL)
        ws = weak_avg(add(f, g), TOL)
        assert ws.lower <= 2 * (wf.upper + wg.upper) + TOL


def test_verify_chain_identity():
    rows = verify_chain(identity_plf(), TOL)
    assert all(r.passed for r in rows)
    assert {r.name for r in rows} == {"weak_le_strong", "strong_le_lipschitz"}


def test_verify_chain_tent_values():
    rows = {r.name: r for r in verify_chain(tent_plf(), TOL)}
    assert float(rows["weak_le_strong"].lhs) == pytest.approx(2, abs=1e-4)
    assert rows["strong_le_lipschitz"].rhs == 2
    assert all(r.passed for r in rows.values())


def test_verify_chain_random_corpus(rng):
    for _ in range(5):
        f = random_plf(rng, max_breakpoints=10)
        assert all(r.passed for r in verify_chain(f, Q(1, 1000)))


def test_variation_chain_step():
    rows = {r.name: r for r in variation_chain(indicator_step(), TOL)}
    assert rows["half_weak_le_variation"].lhs == 1  # 2/2
    assert rows["half_weak_le_variation"].rhs == 1
    assert all(r.passed for r in rows.values())


def test_markov_chain_on_lipschitz_bound(rng):
    for _ in range(5):
        f = random_plf(rng, max_breakpoints=10)
        s = strong_avg(f, Q(1, 1000))
        assert float(s.lower) <= float(lipschitz_constant(f)) + 1e-3


# --- discrete weak-L1 ------------------------------------------------------


def test_weak_l1_samples_examples():
    assert weak_l1_samples([1, 1, 1, 1]) == 1
    assert weak_l1_samples([4, 1]) == 2
    assert weak_l1_samples([0, 0, 0]) == 0
    with pytest.raises(ValueError):
        weak_l1_samples([])


@settings(max_examples=80)
@given(
    st.lists(rationals(min_value=-8, max_value=8), min_size=1, max_size=12),
    rationals(min_value=-3, max_value=3).filter(lambda a: a != 0),
)
def test_weak_l1_homogeneity_and_sup_bound(values, alpha):
    w = weak_l1_samples(values)
    assert weak_l1_samples([alpha * v for v in values]) == abs(alpha) * w
    assert w <= max(abs(v) for v in values)
