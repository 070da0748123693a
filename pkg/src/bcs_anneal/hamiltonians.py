"""Driven BCS Hamiltonian, its Gaudin partners and a nonintegrable variant.

Both annealing models share the all-to-all exchange driver
``-(g/t) sum_{j != k} s_j^+ s_k^-`` and differ only in the diagonal
(Ising) part. Sums run over ordered index tuples, as written.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import scipy.sparse as sp

from .sector import SpinSector

# PCG64 via numpy.random.default_rng; the seed is recorded in every manifest
PRNG_NAME = "numpy.random.PCG64"


@dataclass(frozen=True)
class EnergyLevels:
    """Strictly increasing, positive level energies.

    ``order[i]`` is the position in the user's original input of sorted
    level ``i`` (identity for generated levels).
    """

    eps: np.ndarray
    seed: int | None = None
    recipe: Literal["explicit", "jitter", "equidistant"] = "explicit"
    order: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        eps = np.asarray(self.eps, dtype=float)
        if eps.ndim != 1 or len(eps) < 2:
            raise ValueError("need a 1-d vector of at least two levels")
        if np.any(np.diff(eps) <= 0):
            raise ValueError("levels must be strictly increasing (nondegenerate)")
        if eps[0] <= 0:
            raise ValueError("levels must be positive")
        eps.setflags(write=False)
        object.__setattr__(self, "eps", eps)

    @property
    def n(self) -> int:
        return len(self.eps)

    @property
    def is_equidistant(self) -> bool:
        d = np.diff(self.eps)
        return bool(np.allclose(d, d[0], rtol=1e-12, atol=0)) and np.isclose(
            self.eps[0], d[0], rtol=1e-12
        )

    @classmethod
    def from_values(cls, values, seed=None) -> "EnergyLevels":
        """Sort arbitrary input values, keeping the permutation."""
        values = np.asarray(values, dtype=float)
        order = np.argsort(values, kind="stable")
        return cls(values[order], seed=seed, recipe="explicit", order=order)

    @classmethod
    def from_file(cls, path) -> "EnergyLevels":
        """Plain text, one value per line, ascending order required."""
        vals = [float(s) for s in open(path).read().split() if s.strip()]
        eps = np.asarray(vals)
        if np.any(np.diff(eps) <= 0):
            raise ValueError(f"{path}: levels must be listed in strictly ascending order")
        return cls(eps, recipe="explicit")


def generate_levels(n: int, seed: int | None = None) -> EnergyLevels:
    """``eps_j = j/N + xi_j`` with ``xi_j`` uniform in ``(-1/2N, 1/2N)``.

    ``seed=None`` drops the jitter and gives equidistant levels ``j/N``.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    eps = np.arange(1, n + 1) / n
    if seed is None:
        return EnergyLevels(eps, seed=None, recipe="equidistant")
    rng = np.random.default_rng(seed)
    half = 0.5 / n
    xi = rng.uniform(-half, half, size=n)
    # uniform() is half-open; keep the open interval
    while np.any(xi == -half):
        xi[xi == -half] = rng.uniform(-half, half, size=int(np.sum(xi == -half)))
    eps = np.sort(eps + xi)
    return EnergyLevels(eps, seed=seed, recipe="jitter")


@dataclass(frozen=True)
class ThreeBodyCouplings:
    """Per-spin factors ``J_i``; the triple coupling is ``J_i J_j J_k``."""

    J: np.ndarray
    variance: float = 0.1
    seed: int | None = None

    @classmethod
    def random(cls, n: int, seed: int, variance: float = 0.1) -> "ThreeBodyCouplings":
        rng = np.random.default_rng(seed)
        return cls(rng.normal(0.0, np.sqrt(variance), size=n), variance, seed)


def exchange_matrix(sector: SpinSector) -> sp.csr_matrix:
    """``sum_{j != k} s_j^+ s_k^-`` on the sector (0/1 entries, symmetric)."""
    basis = sector.basis
    occ = sector.occupations
    rows, cols = [], []
    for j in range(sector.n_spins):
        for k in range(j + 1, sector.n_spins):
            sel = np.nonzero(occ[:, j] != occ[:, k])[0]
            if len(sel) == 0:
                continue
            partner = basis[sel] ^ ((1 << j) | (1 << k))
            rows.append(sel)
            cols.append(np.searchsorted(basis, partner))
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
    else:
        r = c = np.zeros(0, dtype=np.int64)
    m = sp.csr_matrix((np.ones(len(r)), (r, c)), shape=(sector.dim, sector.dim))
    m.sort_indices()
    return m


def bcs_diagonal(levels: EnergyLevels, sector: SpinSector) -> np.ndarray:
    """``sum_j eps_j s_j^z`` for every basis state."""
    _check_size(levels.n, sector)
    return sector.sz @ levels.eps


def three_body_diagonal(couplings: ThreeBodyCouplings, sector: SpinSector) -> np.ndarray:
    """``sum_{i,j,k distinct} J_i J_j J_k s_i s_j s_k`` (ordered triples).

    Equals ``6 e_3(a)`` with ``a_i = J_i s_i``, computed through power sums.
    """
    _check_size(len(couplings.J), sector)
    a = sector.sz * np.asarray(couplings.J)[None, :]
    p1 = a.sum(axis=1)
    p2 = (a**2).sum(axis=1)
    p3 = (a**3).sum(axis=1)
    return p1**3 - 3.0 * p1 * p2 + 2.0 * p3


def _check_size(n: int, sector: SpinSector) -> None:
    if n != sector.n_spins:
        raise ValueError(f"parameter length {n} does not match {sector.n_spins} spins")


class AnnealingModel:
    """``H(t) = diag + (-g/t) * exchange`` restricted to a sector."""

    name = "generic"

    def __init__(self, diagonal: np.ndarray, g: float, sector: SpinSector):
        if g < 0:
            raise ValueError("g must be nonnegative")
        self.sector = sector
        self.g = float(g)
        self.diagonal = np.asarray(diagonal, dtype=float)
        self.exchange = exchange_matrix(sector)

    @property
    def dim(self) -> int:
        return self.sector.dim

    def coupling(self, t: float) -> float:
        if t <= 0:
            raise ValueError(f"t must be positive, got {t} (coupling g/t is singular)")
        return self.g / t

    def apply(self, t: float, v: np.ndarray) -> np.ndarray:
        return self.diagonal * v - self.coupling(t) * (self.exchange @ v)

    def matrix(self, t: float) -> sp.csr_matrix:
        return (sp.diags(self.diagonal) - self.coupling(t) * self.exchange).tocsr()

    def dense(self, t: float) -> np.ndarray:
        return np.diag(self.diagonal) - self.coupling(t) * self.exchange.toarray()

    def with_g(self, g: float) -> "AnnealingModel":
        new = object.__new__(type(self))
        new.__dict__.update(self.__dict__)
        new.g = float(g)
        return new


class BCSModel(AnnealingModel):
    name = "bcs"

    def __init__(self, levels: EnergyLevels, g: float, sector: SpinSector):
        self.levels = levels
        super().__init__(bcs_diagonal(levels, sector), g, sector)


class ThreeBodyModel(AnnealingModel):
    name = "three-body"

    def __init__(self, couplings: ThreeBodyCouplings, g: float, sector: SpinSector):
        self.couplings = couplings
        super().__init__(three_body_diagonal(couplings, sector), g, sector)


def apply_bcs(t, g, levels, sector, v):
    return BCSModel(levels, g, sector).apply(t, v)


def apply_three_body(t, g, couplings, sector, v):
    return ThreeBodyModel(couplings, g, sector).apply(t, v)


def spin_dot_matrix(sector: SpinSector, j: int, k: int) -> np.ndarray:
    """Dense ``s_j . s_k`` for 0-based spin indices ``j != k``."""
    sz = sector.sz
    out = np.diag(sz[:, j] * sz[:, k])
    occ = sector.occupations
    sel = np.nonzero(occ[:, j] != occ[:, k])[0]
    partner = np.searchsorted(sector.basis, sector.basis[sel] ^ ((1 << j) | (1 << k)))
    # (s^+_j s^-_k + s^-_j s^+_k) / 2
    out[sel, partner] += 0.5
    return out


def build_gaudin(j: int, t: float, g: float, levels: EnergyLevels, sector: SpinSector) -> np.ndarray:
    """Dense Gaudin operator ``t s_j^z - 2g sum_{k != j} s_j.s_k / (eps_j - eps_k)``.

    ``j`` is 1-based, matching the spin labels.
    """
    _check_size(levels.n, sector)
    eps = levels.eps
    if len(np.unique(eps)) != len(eps):
        raise ValueError("degenerate levels: Gaudin operators have a pole")
    jj = j - 1
    if not 0 <= jj < sector.n_spins:
        raise ValueError(f"spin index {j} out of range")
    out = t * np.diag(sector.sz[:, jj])
    for k in range(sector.n_spins):
        if k != jj:
            out -= 2.0 * g / (eps[jj] - eps[k]) * spin_dot_matrix(sector, jj, k)
    return out
