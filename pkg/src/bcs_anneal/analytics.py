"""Closed-form and asymptotic characteristics of the final distribution."""

from __future__ import annotations

from dataclasses import dataclass
from math import log, pi

import numpy as np

from .gibbs import GibbsLaw, log_ground_prob


def polylog2(z: float, rtol: float = 1e-14) -> float:
    """Dilogarithm ``sum_{j>=1} z^j / j^2`` for real ``z`` in ``[0, 1]``.

    The series is used for ``z <= 1/2``; above that the reflection
    ``Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)`` keeps it short.
    """
    if not 0.0 <= z <= 1.0:
        raise ValueError(f"polylog2 argument must lie in [0, 1], got {z}")
    if z == 1.0:
        return pi**2 / 6
    if z > 0.5:
        return pi**2 / 6 - log(z) * log1p_neg(z) - polylog2(1.0 - z, rtol)
    total = 0.0
    term = z
    j = 1
    while term > 0:
        contrib = term / (j * j)
        total += contrib
        if contrib <= rtol * total:
            break
        j += 1
        term *= z
    return total


def log1p_neg(z: float) -> float:
    return float(np.log1p(-z))


def q_pochhammer(a: float, q: float, k: int | None = None, tol: float = 1e-16) -> float:
    """``(a; q)_k = prod_{i<k} (1 - a q^i)``; ``k=None`` is the infinite product."""
    if k is not None:
        if k < 0:
            raise ValueError("k must be nonnegative")
        return float(np.prod(1.0 - a * q ** np.arange(k))) if k else 1.0
    if not abs(q) < 1:
        raise ValueError("the infinite product needs |q| < 1")
    out = 1.0
    term = a
    while True:
        out *= 1.0 - term
        if abs(term) < tol:
            return out
        term *= q


def _softplus(y):
    return np.logaddexp(0.0, y)


def mean_eta_approx(g: float, n: int) -> float:
    """Grand-canonical, continuum estimate of the mean accuracy."""
    y = pi * g * n
    if y < 1e-4:
        return y / 4 - y**3 / 96
    return float(2.0 / y * (_softplus(y) - log(2.0)) - 1.0)


def required_g(eta_target: float, n: int) -> tuple[float, tuple[float, float]]:
    """Coupling reaching ``eta_target`` from the large ``gN`` asymptote.

    Returns ``(g, (g_min, g_max))``: the asymptote is trustworthy for
    ``1/N << g < 1``, reported here as ``(10/N, 1)``.
    """
    if not 0.0 < eta_target < 1.0:
        raise ValueError("eta_target must lie in (0, 1)")
    g = 2 * log(2.0) / (pi * n * (1.0 - eta_target))
    return g, (10.0 / n, 1.0)


def var_eta_approx(g: float, n: int) -> float:
    """Grand-canonical variance of ``eta``; tends to ``1/N`` as ``g -> 0``."""
    y = pi * g * n
    if y < 1e-4:
        return (1.0 - y**2 / 12) / n
    # 1/(1+e^{-y}) - 1/2 = tanh(y/2)/2
    return float(2.0 / (pi * g * n * n) * np.tanh(y / 2))


def gaussian_eta(g: float, n: int) -> tuple[float, float]:
    return mean_eta_approx(g, n), var_eta_approx(g, n)


def gaussian_density(eta, g: float, n: int):
    mean, var = gaussian_eta(g, n)
    eta = np.asarray(eta, dtype=float)
    return np.exp(-((eta - mean) ** 2) / (2 * var)) / np.sqrt(2 * pi * var)


def marginal_gc(g: float, n: int, j) -> float | np.ndarray:
    """``<s_j^z> = tanh(pi g (mu - j)) / 2`` with ``mu = (N+1)/2``."""
    j = np.asarray(j)
    if np.any((j < 1) | (j > n)):
        raise ValueError("spin index out of range")
    out = 0.5 * np.tanh(pi * g * ((n + 1) / 2 - j))
    return float(out) if out.ndim == 0 else out


def _x_over_expm1(y):
    """``y / (e^y - 1)`` with the value 1 at ``y = 0``."""
    y = np.asarray(y, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        out = np.where(y == 0, 1.0, y / np.expm1(y))
    return out


def log_partition_closed(g: float, n: int) -> float:
    """``log Z`` at ``S_z = 0`` from the ground-state probability.

    The ground state carries ``sum_j j s_j = -N^2/8``, so
    ``Z = x^{-N^2/8} / P_G``.
    """
    return pi * g * n * n / 4 - log_ground_prob(GibbsLaw(n, 0, g))


def entropy_partition(g: float, n: int) -> float:
    """Entropy ``log Z - g d(log Z)/dg`` with the derivative taken analytically.

    Terms linear in ``g`` cancel; what remains is
    ``-log P_G + sum_{i<=N/2} h(2 pi g i) - sum_{i>N/2} h(2 pi g i)``
    with ``h(y) = y/(e^y - 1)``.
    """
    if n % 2:
        raise ValueError("S_z = 0 requires an even number of spins")
    if g < 0:
        raise ValueError("g must be nonnegative")
    half = n // 2
    h = _x_over_expm1(2 * pi * g * np.arange(1, n + 1))
    return float(-log_ground_prob(GibbsLaw(n, 0, g)) + h[:half].sum() - h[half:].sum())


def dlog_partition_dg(g: float, n: int) -> float:
    """Analytic ``d log Z / dg`` at ``S_z = 0``."""
    half = n // 2
    i = np.arange(1, n + 1)
    if g == 0:
        # the exponent sum_j j s_j is symmetric about 0 in the uniform law
        return 0.0
    with np.errstate(over="ignore"):
        terms = 2 * pi * i / np.expm1(2 * pi * g * i)
    return float(pi * n * n / 4 - terms[:half].sum() + terms[half:].sum())


def entropy_saturation(g: float) -> float:
    """Large-N entropy at fixed ``g``, ``Li2(e^{-pi g})/(pi g) - log(1 - e^{-pi g})/2``."""
    if g <= 0:
        raise ValueError("saturated entropy diverges at g <= 0")
    z = np.exp(-pi * g)
    return polylog2(z) / (pi * g) - 0.5 * float(np.log1p(-z))


def temperature(eps_spacing: float, g: float, *, equidistant: bool = True) -> float:
    """Temperature ``eps / (2 pi g)`` (``k_B = 1``) of the final Gibbs law.

    Only meaningful for equidistant levels ``eps_j = eps * j``.
    """
    if not equidistant:
        raise ValueError(
            "the final law is thermal for the Ising part only when levels are "
            "equidistant (eps_j = eps * j)"
        )
    if g < 0:
        raise ValueError("g must be nonnegative")
    if g == 0:
        return float("inf")
    return eps_spacing / (2 * pi * g)


def temperature_for_levels(levels, g: float) -> float:
    return temperature(float(levels.eps[0]), g, equidistant=levels.is_equidistant)


@dataclass(frozen=True)
class LZBaseline:
    gap: float
    rate: float
    tau: float
    estimate: float


def lz_baseline(g: float, levels) -> LZBaseline:
    """Landau-Zener guess for the ground-state probability.

    The smallest level spacing sets the gap; with coupling ``g/t`` the rate
    at ``tau = g/gap`` is ``gap^2/g`` and the estimate ``1 - e^{-2 pi g}``
    no longer depends on the gap.
    """
    eps = np.asarray(getattr(levels, "eps", levels), dtype=float)
    d = np.diff(np.sort(eps))
    if np.any(d <= 0):
        raise ValueError("degenerate levels")
    gap = float(d.min())
    if g == 0:
        return LZBaseline(gap, float("inf"), 0.0, 0.0)
    rate = gap**2 / g
    return LZBaseline(gap, rate, g / gap, float(-np.expm1(-2 * pi * gap**2 / rate)))
