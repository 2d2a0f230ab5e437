"""Variation measure and maximal function: exact values, domination, the
weak-type superlevel bound."""

import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings

from avlip.constructions import identity_plf, indicator_step, tent_plf
from avlip.corpus import random_plf
from avlip.funcs import StepFunction, regularize
from avlip.maximal import (
    MaximalEvaluator,
    check_weak_bound,
    maximal_evaluator,
    maximal_function,
    stieltjes_measure,
)
from avlip.rational import INF
from avlip.slope import local_slope, local_slope_plf
from avlip.variation import total_variation, variation_on_interval

from conftest import plfs, unit_rationals

RSTEP = regularize(indicator_step())


def test_stieltjes_examples():
    assert stieltjes_measure(identity_plf(), Q(1, 4), Q(3, 4)) == Q(1, 2)
    assert stieltjes_measure(RSTEP, Q(1, 2), Q(1, 2)) == 1  # the atom
    assert stieltjes_measure(tent_plf(), Q(0), Q(1)) == 2


def test_stieltjes_rejects_non_regularized():
    with pytest.raises(ValueError):
        stieltjes_measure(indicator_step(), Q(0), Q(1))
    with pytest.raises(ValueError):
        stieltjes_measure(RSTEP, Q(3, 4), Q(1, 4))


def test_stieltjes_equals_interval_variation_for_continuous():
    for a, b in [(Q(0), Q(1)), (Q(1, 8), Q(5, 8)), (Q(1, 2), Q(1, 2))]:
        assert stieltjes_measure(tent_plf(), a, b) == variation_on_interval(
            tent_plf(), a, b
        )


def test_total_mass_is_variation(rng):
    for _ in range(8):
        f = random_plf(rng, max_breakpoints=12)
        assert stieltjes_measure(f, Q(0), Q(1)) == total_variation(f)


@settings(max_examples=40, deadline=None)
@given(
    plfs(),
    unit_rationals(),
    unit_rationals(),
    unit_rationals(),
    unit_rationals(),
)
def test_measure_monotone_under_inclusion(f, a, b, c, d):
    a, b, c, d = sorted((a, b, c, d))
    assert stieltjes_measure(f, b, c) <= stieltjes_measure(f, a, d)


def test_maximal_examples():
    assert maximal_function(identity_plf(), Q(1, 3)) == 1
    assert maximal_function(RSTEP, Q(3, 4)) == 4
    assert maximal_function(tent_plf(), Q(1, 4)) == 2
    assert maximal_function(RSTEP, Q(1, 2)) == INF


def test_maximal_rejects_outside_domain():
    with pytest.raises(ValueError):
        maximal_function(identity_plf(), Q(2))


def test_maximal_domination_on_corpus(rng):
    for _ in range(6):
        f = random_plf(rng, max_breakpoints=15)
        ev = MaximalEvaluator(f)
        queries = list(f.breakpoints) + [
            Q(rng.randint(0, 10**4), 10**4) for _ in range(60)
        ]
        for x in queries:
            assert ev.value(x) >= local_slope_plf(f, x).value


def test_maximal_domination_step():
    ev = maximal_evaluator(RSTEP)
    for k in range(1, 40):
        x = Q(k, 40)
        assert ev.value(x) >= local_slope(RSTEP, x).value


def test_maximal_profile_of_step_is_inverse_distance():
    for x in (Q(1, 8), Q(2, 5), Q(5, 8), Q(99, 100)):
        assert maximal_function(RSTEP, x) == 1 / abs(x - Q(1, 2))


def test_weak_bound_examples():
    rep = check_weak_bound(identity_plf(), Q(2), 10**4)
    assert rep.estimate == 0 and rep.passed
    rep = check_weak_bound(RSTEP, Q(8), 10**4)
    # {M > 8} = (3/8, 5/8) up to endpoints
    assert abs(rep.estimate - Q(1, 4)) <= Q(2, 10**4)
    assert rep.bound == Q(1, 4)
    assert rep.passed
    rep = check_weak_bound(tent_plf(), Q(1), 10**3)
    assert rep.estimate == 1 and rep.bound == 4 and rep.passed


def test_weak_bound_rejects_bad_params():
    with pytest.raises(ValueError):
        check_weak_bound(identity_plf(), Q(0), 100)
    with pytest.raises(ValueError):
        check_weak_bound(identity_plf(), Q(1), 1)


def test_weak_bound_exact_measure_respects_theorem(rng):
    for _ in range(5):
        f = random_plf(rng, max_breakpoints=12)
        v = total_variation(f)
        for k in (-2, 0, 3, 7):
            rep = check_weak_bound(f, Q(2) ** k, 500)
            assert rep.exact_measure is not None
            assert rep.exact_measure <= 2 * v / rep.t
            assert rep.passed


def test_plf_superlevel_intervals_match_pointwise(rng):
    for _ in range(4):
        f = random_plf(rng, max_breakpoints=10)
        ev = MaximalEvaluator(f)
        t = Q(rng.randint(1, 40), rng.randint(1, 4))
        merged = []
        for lo, hi in sorted(ev.superlevel_intervals(t)):
            if merged and lo <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
            else:
                merged.append((lo, hi))
        for k in range(120):
            x = Q(2 * k + 1, 240)
            inside = any(lo <= x <= hi for lo, hi in merged)
            direct = ev.value(x) > t
            if inside != direct:
                # closures may add isolated boundary points where M == t
                assert inside and ev.value(x) == t
