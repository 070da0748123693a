"""Exact final-state law of the driven BCS annealing.

Microstate probabilities follow ``P ~ x^{sum_j j s_j}`` on the sector with
``x = exp(-2 pi g)``. Equivalently they factor into a product of
conditional flip probabilities, scanning spins from the top level down:
given that spins ``1..n`` still carry ``2 S_z = m``, spin ``n`` is down with

    p_minus(m, n) = (1 - x^{(n - m)/2}) / (1 - x^n).

Everything is accumulated in log space; ``g = 0`` uses the analytic limits.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, lgamma, pi

import numpy as np
from scipy.special import logsumexp

from .sector import SpinSector, build_sector

ENUMERATION_CAP = 2_000_000


class CapacityError(RuntimeError):
    """Problem size beyond what exact enumeration or dense algebra allows."""


@dataclass(frozen=True)
class GibbsLaw:
    n: int
    two_sz: int
    g: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if (self.n + self.two_sz) % 2 or abs(self.two_sz) > self.n:
            raise ValueError(f"two_sz={self.two_sz} is inconsistent with n={self.n}")
        if not self.g >= 0:
            raise ValueError("g must be nonnegative")

    @property
    def x(self) -> float:
        return float(np.exp(-2 * pi * self.g))

    @property
    def beta(self) -> float:
        """``-log x = 2 pi g``."""
        return 2 * pi * self.g


def _log1mexp(a):
    """``log(1 - exp(-a))`` for ``a > 0``."""
    a = np.asarray(a, dtype=float)
    with np.errstate(divide="ignore"):
        return np.where(a < np.log(2), np.log(-np.expm1(-a)), np.log1p(-np.exp(-a)))


def log_p_minus_plus(m, n, g: float):
    """Return ``(log p_minus, log p_plus)`` elementwise.

    ``d = (n - m)/2`` down spins remain among ``n``; it is clipped to
    ``[0, n]`` so infeasible inputs give a forced 0/1.
    """
    m = np.asarray(m)
    n = np.asarray(n)
    if np.any(n <= 0):
        raise ValueError("n must be positive")
    d = np.clip((n - m) / 2.0, 0, n)
    u = n - d
    with np.errstate(divide="ignore", invalid="ignore"):
        if g == 0:
            lm = np.log(d / n)
            lp = np.log(u / n)
        else:
            b = 2 * pi * g
            den = _log1mexp(b * n)
            lm = np.where(d > 0, _log1mexp(b * d) - den, -np.inf)
            lp = np.where(u > 0, -b * d + _log1mexp(b * u) - den, -np.inf)
    return lm, lp


def p_minus(m, n, law_or_g) -> float | np.ndarray:
    """Probability that spin ``n`` ends down when spins ``1..n`` hold ``2S_z = m``."""
    g = getattr(law_or_g, "g", law_or_g)
    lm, _ = log_p_minus_plus(m, n, g)
    out = np.exp(lm)
    return float(out) if out.ndim == 0 else out


def p_plus(m, n, law_or_g) -> float | np.ndarray:
    g = getattr(law_or_g, "g", law_or_g)
    _, lp = log_p_minus_plus(m, n, g)
    out = np.exp(lp)
    return float(out) if out.ndim == 0 else out


def log_microstate_prob(law: GibbsLaw, bits) -> np.ndarray:
    """Log-probability of one or many microstates through the product form.

    Microstates with the wrong magnetization get ``-inf``.
    """
    arr = np.atleast_1d(np.asarray(bits, dtype=np.int64))
    n = law.n
    occ = (arr[:, None] >> np.arange(n, dtype=np.int64)) & 1
    ups = occ.sum(axis=1)
    feasible = 2 * ups - n == law.two_sz
    # twice the magnetization carried by spins 1..j, for j = n..1
    spin2 = 2 * occ - 1
    above = np.cumsum(spin2[:, ::-1], axis=1)[:, ::-1] - spin2  # spins > j
    m = law.two_sz - above
    jj = np.arange(1, n + 1)[None, :]
    lm, lp = log_p_minus_plus(m, jj, law.g)
    logp = np.where(occ == 1, lp, lm).sum(axis=1)
    return np.where(feasible, logp, -np.inf)


def microstate_prob(law: GibbsLaw, bits: int) -> tuple[float, bool]:
    """Probability of microstate ``bits`` and a feasibility flag."""
    lp = float(log_microstate_prob(law, bits)[0])
    return float(np.exp(lp)), np.isfinite(lp)


def gibbs_exponents(sector: SpinSector) -> np.ndarray:
    """``sum_j j s_j`` for every basis state."""
    return sector.sz @ np.arange(1, sector.n_spins + 1)


def log_partition(law: GibbsLaw, sector: SpinSector | None = None) -> float:
    """``log Z`` with ``Z = sum_sector x^{sum_j j s_j}``, by enumeration."""
    sector = sector or build_sector(law.n, law.two_sz)
    return float(logsumexp(-law.beta * gibbs_exponents(sector)))


def enumerate_distribution(law: GibbsLaw, sector: SpinSector | None = None, *, log: bool = False):
    """Normalized weights ``x^{sum_j j s_j}`` over the sector basis."""
    dim = comb(law.n, (law.n + law.two_sz) // 2)
    if dim > ENUMERATION_CAP:
        raise CapacityError(
            f"sector dimension {dim} exceeds the enumeration cap {ENUMERATION_CAP}; "
            "use the Markov-chain routines in bcs_anneal.markov"
        )
    sector = sector or build_sector(law.n, law.two_sz)
    if (sector.n_spins, sector.two_sz) != (law.n, law.two_sz):
        raise ValueError("sector does not match the law")
    logw = -law.beta * gibbs_exponents(sector)
    logp = logw - logsumexp(logw)
    return logp if log else np.exp(logp)


def adjacent_flip_pairs(sector: SpinSector):
    """Index pairs ``(a, b)``: ``a`` has spin j up and j+1 down, ``b`` the swap."""
    occ = sector.occupations
    lo, hi = [], []
    for j in range(sector.n_spins - 1):
        sel = np.nonzero((occ[:, j] == 1) & (occ[:, j + 1] == 0))[0]
        lo.append(sel)
        hi.append(sector.index_of(sector.basis[sel] ^ (3 << j)))
    if not lo:
        return np.zeros(0, int), np.zeros(0, int)
    return np.concatenate(lo), np.concatenate(hi)


def log_ground_prob(law: GibbsLaw, n_max: int | None = None) -> float:
    """``log P_G = sum_{i<=N/2} log(1-x^i) - sum_{i=N/2+1}^{N} log(1-x^i)``."""
    if law.two_sz != 0:
        raise ValueError("ground-state probability formula is stated for S_z = 0")
    if law.n % 2:
        raise ValueError("S_z = 0 requires an even number of spins")
    half = law.n // 2
    if law.g == 0:
        return lgamma(half + 1) * 2 - lgamma(law.n + 1)
    i = np.arange(1, law.n + 1)
    terms = _log1mexp(law.beta * i)
    return float(terms[:half].sum() - terms[half:].sum())


def ground_prob(law: GibbsLaw) -> float:
    """Finite-N ground-state probability ``(x;x)_{N/2} / (x^{N/2+1};x)_{N/2}``."""
    return float(np.exp(log_ground_prob(law)))


def ground_prob_limit(g: float) -> float:
    """``N -> inf`` ground-state probability ``(x;x)_inf``."""
    from .analytics import q_pochhammer

    if g <= 0:
        return 0.0
    x = np.exp(-2 * pi * g)
    return q_pochhammer(x, x, None)


def entropy_direct(law: GibbsLaw, sector: SpinSector | None = None) -> float:
    """``-sum P log P`` over the sector, by enumeration (nats)."""
    logp = enumerate_distribution(law, sector, log=True)
    p = np.exp(logp)
    return float(-np.sum(np.where(p > 0, p * logp, 0.0)))


__all__ = [
    "CapacityError",
    "GibbsLaw",
    "p_minus",
    "p_plus",
    "microstate_prob",
    "log_microstate_prob",
    "enumerate_distribution",
    "adjacent_flip_pairs",
    "ground_prob",
    "ground_prob_limit",
    "log_ground_prob",
    "log_partition",
    "entropy_direct",
]
