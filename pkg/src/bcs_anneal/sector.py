"""Fixed-magnetization sector of N spins-1/2 in the bit-encoded z basis.

Bit ``j - 1`` of a microstate is set when spin ``j`` points up. Spins are
always indexed by ascending level energy, so spin 1 is the lowest level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb

import numpy as np

UP = "↑"
DOWN = "↓"


def popcount(bits: int) -> int:
    return bin(bits).count("1")


@dataclass(frozen=True)
class SpinSector:
    """All microstates of ``n_spins`` spins with total ``2 S_z = two_sz``.

    The basis is sorted by ascending bit value; ``index_of`` is its inverse.
    """

    n_spins: int
    two_sz: int
    basis: np.ndarray = field(repr=False, compare=False)

    @property
    def n_up(self) -> int:
        return (self.n_spins + self.two_sz) // 2

    @property
    def n_down(self) -> int:
        return self.n_spins - self.n_up

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def index_of(self, bits) -> np.ndarray | int:
        """Position of ``bits`` (scalar or array) in the basis.

        Raises ``KeyError`` for states outside the sector.
        """
        scalar = np.isscalar(bits)
        arr = np.atleast_1d(np.asarray(bits, dtype=np.int64))
        idx = np.searchsorted(self.basis, arr)
        ok = (idx < self.dim) & (self.basis[np.minimum(idx, self.dim - 1)] == arr)
        if not np.all(ok):
            raise KeyError(f"state(s) {arr[~ok][:5].tolist()} not in sector")
        return int(idx[0]) if scalar else idx

    @cached_property
    def occupations(self) -> np.ndarray:
        """(dim, N) array of 0/1, column ``j`` is spin ``j + 1``."""
        shifts = np.arange(self.n_spins, dtype=np.int64)
        return ((self.basis[:, None] >> shifts) & 1).astype(np.int8)

    @cached_property
    def sz(self) -> np.ndarray:
        """(dim, N) array of spin projections +-1/2."""
        return self.occupations.astype(float) - 0.5

    @cached_property
    def eta_values(self) -> np.ndarray:
        """Accuracy of every basis state (float)."""
        if self.n_spins % 2:
            raise ValueError("accuracy is defined for an even number of spins")
        half = self.n_spins // 2
        return (4.0 / self.n_spins) * self.sz[:, :half].sum(axis=1)

    def __hash__(self) -> int:
        return hash((self.n_spins, self.two_sz))


def build_sector(n_spins: int, two_sz: int = 0) -> SpinSector:
    if n_spins < 2:
        raise ValueError(f"need at least 2 spins, got {n_spins}")
    if (n_spins + two_sz) % 2:
        raise ValueError(
            f"2*S_z={two_sz} has the wrong parity for {n_spins} spins "
            "(n_spins + two_sz must be even)"
        )
    n_up = (n_spins + two_sz) // 2
    if not 0 <= n_up <= n_spins:
        raise ValueError(f"|2*S_z|={abs(two_sz)} exceeds n_spins={n_spins}")
    if n_spins > 62:
        raise ValueError("bit encoding supports at most 62 spins")
    dim = comb(n_spins, n_up)
    weights = np.left_shift(1, np.arange(n_spins, dtype=np.int64))
    basis = np.fromiter(
        (int(weights[list(c)].sum()) if c else 0 for c in combinations(range(n_spins), n_up)),
        dtype=np.int64,
        count=dim,
    )
    basis.sort()
    return SpinSector(n_spins, two_sz, basis)


def eta_of(bits: int, n_spins: int) -> Fraction:
    """Accuracy ``(4/N) * sum_{k<=N/2} s_k`` as an exact rational."""
    if n_spins % 2:
        raise ValueError("accuracy is defined for an even number of spins")
    if not 0 <= bits < (1 << n_spins):
        raise ValueError(f"{bits} is not a valid {n_spins}-spin microstate")
    half = n_spins // 2
    ups = popcount(bits & ((1 << half) - 1))
    # sum of s_k over the lower half is (ups - (half - ups)) / 2
    return Fraction(2 * (2 * ups - half), n_spins)


def ising_ground_state(sector: SpinSector, levels=None) -> int:
    """Microstate with the ``n_up`` lowest levels up and the rest down.

    ``levels`` only serves to validate the ordering; spins are indexed by
    ascending energy so the answer is always the low-bit block.
    """
    if levels is not None:
        eps = np.asarray(getattr(levels, "eps", levels), dtype=float)
        if len(eps) != sector.n_spins:
            raise ValueError("levels length does not match sector")
        if np.any(np.diff(eps) <= 0):
            raise ValueError("levels must be strictly increasing")
    return (1 << sector.n_up) - 1


def to_arrows(bits: int, n_spins: int) -> str:
    return "".join(UP if (bits >> j) & 1 else DOWN for j in range(n_spins))


def to_bitstring(bits: int, n_spins: int) -> str:
    """0/1 string with spin 1 leftmost."""
    return "".join("1" if (bits >> j) & 1 else "0" for j in range(n_spins))


def from_string(s: str) -> int:
    """Parse an arrow string or a 0/1 bitstring (spin 1 leftmost)."""
    bits = 0
    for j, ch in enumerate(s):
        if ch in (UP, "1", "u", "U"):
            bits |= 1 << j
        elif ch not in (DOWN, "0", "d", "D"):
            raise ValueError(f"unexpected character {ch!r} in microstate {s!r}")
    return bits
