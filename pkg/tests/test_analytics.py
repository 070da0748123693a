from math import exp, log, pi

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bcs_anneal import analytics, gibbs, markov
from bcs_anneal.gibbs import GibbsLaw
from bcs_anneal.hamiltonians import generate_levels


@given(st.floats(0.0, 1.0))
def test_polylog2_against_mpmath(z):
    assert analytics.polylog2(z) == pytest.approx(float(mpmath.polylog(2, z)), rel=1e-13, abs=1e-300)


def test_polylog2_domain():
    assert analytics.polylog2(1.0) == pytest.approx(pi**2 / 6)
    with pytest.raises(ValueError):
        analytics.polylog2(1.5)


@given(st.floats(0.0, 0.95), st.integers(0, 30))
def test_q_pochhammer_finite(q, k):
    ref = float(mpmath.qp(q, q, k))
    assert analytics.q_pochhammer(q, q, k) == pytest.approx(ref, rel=1e-12)


@given(st.floats(1e-3, 0.9))
def test_q_pochhammer_infinite(q):
    assert analytics.q_pochhammer(q, q) == pytest.approx(float(mpmath.qp(q, q)), rel=1e-12)


@settings(max_examples=30)
@given(st.floats(0.001, 1.0), st.integers(1, 20))
def test_dlog_partition_by_finite_difference(g, half):
    n = 2 * half
    h = 1e-6 * max(g, 1e-3)
    fd = (analytics.log_partition_closed(g + h, n) - analytics.log_partition_closed(g - h, n)) / (2 * h)
    assert analytics.dlog_partition_dg(g, n) == pytest.approx(fd, rel=1e-5, abs=1e-5)


@pytest.mark.parametrize("n", [2, 4, 8, 12])
@pytest.mark.parametrize("g", [0.02, 0.3])
def test_log_partition_closed(n, g):
    # enumeration uses the weight x^{sum j s_j}; the closed form is the same sum
    assert analytics.log_partition_closed(g, n) == pytest.approx(gibbs.log_partition(GibbsLaw(n, 0, g)), rel=1e-12)


@pytest.mark.parametrize("n", [2, 6, 10, 14])
@pytest.mark.parametrize("g", [0.0, 0.04, 0.1, 0.2, 1.0])
def test_entropy_routes(n, g):
    assert analytics.entropy_partition(g, n) == pytest.approx(gibbs.entropy_direct(GibbsLaw(n, 0, g)), abs=1e-10)


def test_entropy_saturation_trend():
    for g in (0.04, 0.1, 0.2):
        vals = [analytics.entropy_partition(g, n) for n in (100, 200, 400, 800)]
        assert np.all(np.diff(vals) >= -1e-12)
        assert abs(vals[-1] - vals[-2]) < 1e-3 * vals[-1]
    # closed-form saturation approaches the exact value as g -> 0
    errs = [abs(analytics.entropy_saturation(g) / analytics.entropy_partition(g, 4000) - 1) for g in (0.2, 0.1, 0.04)]
    assert errs[0] > errs[1] > errs[2]


def test_mean_eta_asymptote():
    for n in (200, 600, 2000):
        for gn in (3.0, 10.0, 30.0):
            exact = markov.eta_distribution(GibbsLaw(n, 0, gn / n)).mean
            assert analytics.mean_eta_approx(gn / n, n) == pytest.approx(exact, abs=0.01)
    assert analytics.mean_eta_approx(0.0, 100) == 0.0
    assert analytics.mean_eta_approx(1.0, 1000) == pytest.approx(1 - 2 * log(2) / (pi * 1000), rel=1e-9)


def test_required_g_roundtrip():
    g, (lo, hi) = analytics.required_g(0.99, 1000)
    assert lo < g < hi
    assert analytics.mean_eta_approx(g, 1000) == pytest.approx(0.99, abs=1e-6)
    with pytest.raises(ValueError):
        analytics.required_g(1.0, 10)


def test_variance_limits():
    assert analytics.var_eta_approx(0.0, 400) == pytest.approx(1 / 400)
    assert analytics.var_eta_approx(1e-9, 400) == pytest.approx(1 / 400, rel=1e-6)
    assert analytics.var_eta_approx(1.0, 400) == pytest.approx(2 / (pi * 400**2), rel=1e-9)


def test_gaussian_density_normalized():
    eta = np.linspace(-1, 1, 20001)
    d = analytics.gaussian_density(eta, 0.01, 600)
    assert np.trapezoid(d, eta) == pytest.approx(1.0, abs=1e-6)


def test_marginal_gc_against_chain():
    n, g = 400, 0.01
    pol = markov.marginal_polarizations(GibbsLaw(n, 0, g))
    j = np.arange(1, n + 1)
    np.testing.assert_allclose(analytics.marginal_gc(g, n, j), pol, atol=5e-3)


def test_temperature():
    lv = generate_levels(10, None)
    assert analytics.temperature_for_levels(lv, 0.5) == pytest.approx(0.1 / pi)
    assert analytics.temperature(0.1, 0.0) == float("inf")
    with pytest.raises(ValueError):
        analytics.temperature_for_levels(generate_levels(10, 3), 0.5)


def test_lz_baseline():
    base = analytics.lz_baseline(0.2, generate_levels(8, 1))
    assert base.estimate == pytest.approx(1 - exp(-2 * pi * 0.2))
