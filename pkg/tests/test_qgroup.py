import numpy as np
import pytest
from hypothesis import given, strategies as st

from bcs_anneal import qgroup


@given(st.floats(0.01, 1.0))
def test_yang_baxter(q):
    assert qgroup.ybz_residual(q) <= 1e-12


@given(st.floats(0.01, 1.0))
def test_sigma_spectrum(q):
    np.testing.assert_allclose(
        qgroup.sigma_eigenvalues(q), qgroup.expected_sigma_eigenvalues(q), rtol=1e-12, atol=1e-12
    )


def test_r_matrix_layout():
    q = 0.3
    r = qgroup.build_r(q).entries
    s = np.sqrt(q)
    np.testing.assert_allclose(np.diag(r), [s, 1 / s, 1 / s, s])
    assert r[1, 2] == pytest.approx((q - 1 / q) / s)
    assert r[2, 1] == 0.0
    assert np.linalg.det(r) == pytest.approx(1.0)


def test_q_equal_one_is_identity():
    np.testing.assert_allclose(qgroup.build_r(1.0).entries, np.eye(4))
    assert qgroup.ybz_residual(1.0, relative=False) == 0.0


def test_a_broken_r_matrix_fails():
    # a generic 4x4 matrix does not satisfy the triangle identity
    r = np.random.default_rng(0).normal(size=(4, 4))
    e = qgroup.embed
    lhs = e(r, 0, 1) @ e(r, 0, 2) @ e(r, 1, 2)
    rhs = e(r, 1, 2) @ e(r, 0, 2) @ e(r, 0, 1)
    assert np.abs(lhs - rhs).max() > 1e-3


def test_embed_identity_factor():
    r = np.arange(16.0).reshape(4, 4)
    np.testing.assert_allclose(qgroup.embed(r, 0, 1), np.kron(r, np.eye(2)))
    np.testing.assert_allclose(qgroup.embed(r, 1, 2), np.kron(np.eye(2), r))


def test_report_and_domain():
    rep = qgroup.verification_report(qgroup.q_from_g(0.5))
    assert rep["pass"]
    with pytest.raises(ValueError):
        qgroup.build_r(0.0)
