from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bcs_anneal.sector import (
    build_sector,
    eta_of,
    from_string,
    ising_ground_state,
    popcount,
    to_arrows,
    to_bitstring,
)


@st.composite
def n_and_sz(draw):
    n = draw(st.integers(2, 14))
    n_up = draw(st.integers(0, n))
    return n, 2 * n_up - n


@given(n_and_sz())
def test_dimension_and_magnetization(args):
    n, two_sz = args
    sec = build_sector(n, two_sz)
    assert sec.dim == comb(n, sec.n_up)
    assert all(popcount(int(b)) == sec.n_up for b in sec.basis)
    assert np.all(np.diff(sec.basis) > 0)
    np.testing.assert_allclose(2 * sec.sz.sum(axis=1), two_sz)


@given(n_and_sz(), st.data())
def test_index_roundtrip(args, data):
    sec = build_sector(*args)
    i = data.draw(st.integers(0, sec.dim - 1))
    assert sec.index_of(int(sec.basis[i])) == i


def test_index_of_rejects_foreign_state():
    sec = build_sector(4, 0)
    with pytest.raises(KeyError):
        sec.index_of(0b0111)


@pytest.mark.parametrize("n,two_sz", [(3, 0), (4, 1), (4, 6), (1, 1), (64, 0)])
def test_invalid_sectors(n, two_sz):
    with pytest.raises(ValueError):
        build_sector(n, two_sz)


def test_n4_sector_listing():
    sec = build_sector(4, 0)
    assert sorted(to_arrows(int(b), 4) for b in sec.basis) == sorted(
        ["↑↑↓↓", "↑↓↑↓", "↑↓↓↑", "↓↑↑↓", "↓↑↓↑", "↓↓↑↑"]
    )


def test_eta_values():
    assert eta_of(from_string("↑↑↓↓"), 4) == 1
    assert eta_of(from_string("↓↓↑↑"), 4) == -1
    assert eta_of(from_string("↑↓↑↓"), 4) == 0
    assert eta_of(from_string("↑↑↑↓↓↓"), 6) == 1
    assert isinstance(eta_of(0b11, 4), Fraction)
    with pytest.raises(ValueError):
        eta_of(0b1, 3)


@given(n_and_sz())
def test_eta_vector_matches_exact(args):
    n, two_sz = args
    if n % 2:
        return
    sec = build_sector(n, two_sz)
    exact = np.array([float(eta_of(int(b), n)) for b in sec.basis])
    np.testing.assert_allclose(sec.eta_values, exact, atol=1e-14)


def test_ground_state_is_low_block():
    sec = build_sector(8, 0)
    gs = ising_ground_state(sec)
    assert to_arrows(gs, 8) == "↑↑↑↑↓↓↓↓"
    assert eta_of(gs, 8) == 1
    with pytest.raises(ValueError):
        ising_ground_state(sec, [1, 2, 3, 3, 4, 5, 6, 7])


@given(st.integers(0, 2**12 - 1))
def test_string_roundtrip(bits):
    assert from_string(to_bitstring(bits, 12)) == bits
    assert from_string(to_arrows(bits, 12)) == bits
