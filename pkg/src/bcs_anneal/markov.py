"""O(N^2) sequential evaluation of the Gibbs law at half filling.

Spins are placed from the top level ``N`` down to ``1``; the chain state is
the number ``u`` of up spins already placed. Each step multiplies by the
conditional flip probabilities of the product form, so after ``N/2`` steps
the chain holds the law of the upper half, hence of the accuracy
``eta = 1 - 4u/N``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gibbs import GibbsLaw, log_p_minus_plus

MAX_SPINS = 10_000


@dataclass
class EtaDistribution:
    n: int
    g: float
    support: np.ndarray
    probs: np.ndarray
    mean: float = field(init=False)
    variance: float = field(init=False)
    max_conservation_error: float = 0.0

    def __post_init__(self):
        self.mean, self.variance = moments(self)


def moments(dist) -> tuple[float, float]:
    p = np.asarray(dist.probs, dtype=float)
    s = np.asarray(dist.support, dtype=float)
    mean = float(p @ s)
    return mean, float(p @ (s - mean) ** 2)


def _check(law: GibbsLaw) -> None:
    if law.two_sz != 0:
        raise ValueError("the Markov-chain engine covers S_z = 0 only")
    if law.n % 2:
        raise ValueError("S_z = 0 requires an even number of spins")
    if law.n > MAX_SPINS:
        raise ValueError(f"n={law.n} exceeds the supported maximum {MAX_SPINS}")


def _sweep(law: GibbsLaw, stop: int):
    """Run the chain over spins ``N..stop+1``.

    Yields ``(j, lo, q, p_up, p_down)`` before spin ``j`` is placed, where
    ``q[i]`` is the probability of ``u = lo + i`` ups among spins ``> j``.
    """
    n = law.n
    half = n // 2
    q = np.ones(1)
    lo = 0
    for j in range(n, stop, -1):
        u = lo + np.arange(len(q))
        # remaining magnetization 2S for spins 1..j
        m_j = 2 * (half - u) - j
        lm, lp = log_p_minus_plus(m_j, j, law.g)
        p_up, p_down = np.exp(lp), np.exp(lm)
        yield j, lo, q, p_up, p_down
        placed = n - j + 1
        new_lo = max(0, placed - half)
        new_hi = min(placed, half)
        full = np.zeros(len(q) + 1)
        full[1:] += q * p_up
        full[:-1] += q * p_down
        # full[i] <-> u = lo + i
        q = full[new_lo - lo : new_hi - lo + 1]
        lo = new_lo


def eta_distribution(law: GibbsLaw) -> EtaDistribution:
    """Exact law of the accuracy ``eta`` at ``S_z = 0``."""
    _check(law)
    n = law.n
    half = n // 2
    worst = 0.0
    q = lo = None
    for j, lo, q, p_up, p_down in _sweep(law, half - 1):
        worst = max(worst, abs(q.sum() - 1.0))
        if j == half:
            break
    # q now describes the upper half: u ups among spins half+1..n
    u = lo + np.arange(len(q))
    eta = 1.0 - 4.0 * u / n
    order = np.argsort(eta)
    return EtaDistribution(n, law.g, eta[order], q[order], max_conservation_error=worst)


def marginal_polarizations(law: GibbsLaw) -> np.ndarray:
    """``<s_j^z>`` for ``j = 1..N`` (index 0 is spin 1)."""
    _check(law)
    out = np.empty(law.n)
    for j, _, q, p_up, p_down in _sweep(law, 0):
        out[j - 1] = 0.5 * float(q @ (p_up - p_down))
    return out


def wrong_spin_count(dist: EtaDistribution) -> float:
    """Mean number of spins off their ground-state direction, ``N (1 - <eta>) / 2``."""
    return dist.n * (1.0 - dist.mean) / 2.0
