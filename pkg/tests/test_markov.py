import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bcs_anneal import gibbs, markov
from bcs_anneal.gibbs import GibbsLaw
from bcs_anneal.sector import build_sector


def enumerated_eta_law(n, g):
    sec = build_sector(n, 0)
    p = gibbs.enumerate_distribution(GibbsLaw(n, 0, g), sec)
    support = np.unique(np.round(sec.eta_values, 12))
    probs = np.array([p[np.isclose(sec.eta_values, e)].sum() for e in support])
    return support, probs, p @ sec.sz


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6), st.floats(0.0, 2.0))
def test_chain_matches_enumeration(half, g):
    n = 2 * half
    law = GibbsLaw(n, 0, g)
    support, probs, pol = enumerated_eta_law(n, g)
    dist = markov.eta_distribution(law)
    np.testing.assert_allclose(dist.support, support, atol=1e-12)
    np.testing.assert_allclose(dist.probs, probs, atol=1e-10)
    np.testing.assert_allclose(markov.marginal_polarizations(law), pol, atol=1e-10)


def test_moments_consistent():
    dist = markov.eta_distribution(GibbsLaw(100, 0, 0.02))
    assert dist.probs.sum() == pytest.approx(1.0, abs=1e-12)
    assert dist.mean == pytest.approx(dist.probs @ dist.support)
    assert markov.moments(dist) == (dist.mean, dist.variance)


def test_uniform_limit():
    dist = markov.eta_distribution(GibbsLaw(50, 0, 0.0))
    assert dist.mean == pytest.approx(0.0, abs=1e-13)
    pol = markov.marginal_polarizations(GibbsLaw(50, 0, 0.0))
    np.testing.assert_allclose(pol, 0.0, atol=1e-13)


def test_large_n_conservation_and_speed():
    start = time.perf_counter()
    dist = markov.eta_distribution(GibbsLaw(4000, 0, 0.01))
    assert time.perf_counter() - start < 60
    assert dist.max_conservation_error <= 1e-12


def test_polarization_monotone():
    pol = markov.marginal_polarizations(GibbsLaw(40, 0, 0.1))
    assert np.all(np.diff(pol) < 0)
    assert pol.sum() == pytest.approx(0.0, abs=1e-12)


def test_wrong_spin_count():
    dist = markov.eta_distribution(GibbsLaw(2000, 0, 0.01))
    assert 20 <= markov.wrong_spin_count(dist) <= 25


@pytest.mark.parametrize("law", [GibbsLaw(5, 1, 0.1), GibbsLaw(6, 2, 0.1), GibbsLaw(10_002, 0, 0.1)])
def test_rejects_unsupported(law):
    with pytest.raises(ValueError):
        markov.eta_distribution(law)
