from itertools import combinations
from math import exp, pi

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bcs_anneal import gibbs
from bcs_anneal.gibbs import GibbsLaw, enumerate_distribution, microstate_prob
from bcs_anneal.sector import build_sector, from_string

gs = st.floats(0.0, 3.0, allow_nan=False)


def brute_force(n, two_sz, g):
    """Weights x^{sum_j j s_j} over all subsets, independent of the sector code."""
    n_up = (n + two_sz) // 2
    x = exp(-2 * pi * g)
    out = {}
    for ups in combinations(range(n), n_up):
        e = sum((j + 1) * (0.5 if j in ups else -0.5) for j in range(n))
        out[sum(1 << j for j in ups)] = x**e
    z = sum(out.values())
    return {b: w / z for b, w in out.items()}


@pytest.mark.parametrize("g", [0.0, 0.05, 0.3, 1.0, 2.5])
def test_two_spin_closed_form(g):
    x = exp(-2 * pi * g)
    p, ok = microstate_prob(GibbsLaw(2, 0, g), from_string("↑↓"))
    assert ok
    assert p == pytest.approx(1 / (1 + x), abs=1e-12)


@pytest.mark.parametrize("g", [0.0, 0.05, 0.3, 1.0, 2.5])
def test_four_spin_ground_closed_form(g):
    x = exp(-2 * pi * g)
    p, _ = microstate_prob(GibbsLaw(4, 0, g), from_string("↑↑↓↓"))
    assert p == pytest.approx(1 / ((1 + x**2) * (1 + x + x**2)), abs=1e-12)


@pytest.mark.parametrize("g", [0.1, 0.5])
def test_four_spin_table_sums_to_one(g):
    p = enumerate_distribution(GibbsLaw(4, 0, g))
    assert len(p) == 6
    assert p.sum() == pytest.approx(1.0, abs=1e-15)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 10), st.data(), gs)
def test_product_form_equals_enumeration(n, data, g):
    n_up = data.draw(st.integers(0, n))
    two_sz = 2 * n_up - n
    law = GibbsLaw(n, two_sz, g)
    ref = brute_force(n, two_sz, g)
    sec = build_sector(n, two_sz)
    prod = np.exp(gibbs.log_microstate_prob(law, sec.basis))
    enum = enumerate_distribution(law, sec)
    want = np.array([ref[int(b)] for b in sec.basis])
    np.testing.assert_allclose(prod, want, rtol=1e-10)
    np.testing.assert_allclose(enum, want, rtol=1e-10)


def test_infeasible_state_has_zero_probability():
    p, ok = microstate_prob(GibbsLaw(4, 0, 0.3), 0b0111)
    assert p == 0.0 and not ok


@given(st.integers(0, 200), st.integers(1, 200), gs)
def test_transition_probabilities_bounded(m2, n, g):
    m = 2 * (m2 % (n + 1)) - n  # valid magnetization for n spins
    pm, pp = gibbs.p_minus(m, n, g), gibbs.p_plus(m, n, g)
    assert 0.0 <= pm <= 1.0 and 0.0 <= pp <= 1.0
    assert pm + pp == pytest.approx(1.0, abs=1e-12)


def test_transition_edges():
    # all remaining spins up or down: the move is forced
    assert gibbs.p_minus(5, 5, 0.3) == 0.0
    assert gibbs.p_plus(-5, 5, 0.3) == 0.0
    assert gibbs.p_minus(-5, 5, 0.3) == pytest.approx(1.0)
    # g -> 0 limit is the hypergeometric fraction of downs
    assert gibbs.p_minus(1, 5, 0.0) == pytest.approx(2 / 5)
    assert gibbs.p_minus(1, 5, 1e-12) == pytest.approx(2 / 5, rel=1e-9)


@pytest.mark.parametrize("n", [4, 6, 8])
@pytest.mark.parametrize("g", [0.05, 0.5, 1.0])
def test_detailed_balance(n, g):
    sec = build_sector(n, 0)
    p = enumerate_distribution(GibbsLaw(n, 0, g), sec)
    lo, hi = gibbs.adjacent_flip_pairs(sec)
    np.testing.assert_allclose(p[hi] / p[lo], exp(-2 * pi * g), rtol=1e-12)


@pytest.mark.parametrize("n", [2, 4, 8, 12])
@pytest.mark.parametrize("g", [0.0, 0.1, 1.0])
def test_ground_probability(n, g):
    law = GibbsLaw(n, 0, g)
    sec = build_sector(n, 0)
    p = enumerate_distribution(law, sec)
    assert gibbs.ground_prob(law) == pytest.approx(p[sec.index_of((1 << n // 2) - 1)], rel=1e-10)


def test_ground_probability_limit():
    assert gibbs.ground_prob_limit(1.0) == pytest.approx(0.99813, abs=5e-6)
    assert gibbs.ground_prob(GibbsLaw(200, 0, 1.0)) == pytest.approx(gibbs.ground_prob_limit(1.0), rel=1e-12)
    assert gibbs.ground_prob_limit(0.0) == 0.0


def test_log_partition_against_brute_force():
    law = GibbsLaw(6, 2, 0.2)
    x = exp(-2 * pi * 0.2)
    n_up = 4
    z = sum(
        x ** sum((j + 1) * (0.5 if j in ups else -0.5) for j in range(6))
        for ups in combinations(range(6), n_up)
    )
    assert gibbs.log_partition(law) == pytest.approx(np.log(z), rel=1e-13)


def test_capacity_error():
    with pytest.raises(gibbs.CapacityError):
        enumerate_distribution(GibbsLaw(40, 0, 0.1))


@pytest.mark.parametrize("bad", [dict(n=4, two_sz=1, g=0.1), dict(n=4, two_sz=6, g=0.1), dict(n=4, two_sz=0, g=-1)])
def test_law_validation(bad):
    with pytest.raises(ValueError):
        GibbsLaw(**bad)
