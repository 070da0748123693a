"""Bundled invariant checks at pinned small sizes."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import analytics, gibbs, markov, qgroup
from .hamiltonians import BCSModel, build_gaudin, generate_levels, EnergyLevels
from .propagate import propagate
from .sector import build_sector


@dataclass
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool
    seconds: float = 0.0
    detail: str = ""

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.name}: {self.value:.3e} (tol {self.tolerance:.1e}) {self.detail}".rstrip()


def commutator_residual(n: int = 6, seed: int = 3, g: float = 0.7, times=(0.5, 1.0, 5.0)) -> float:
    sector = build_sector(n, 0)
    levels = generate_levels(n, seed)
    worst = 0.0
    for t in times:
        h = BCSModel(levels, g, sector).dense(t)
        for j in range(1, n + 1):
            hj = build_gaudin(j, t, g, levels, sector)
            worst = max(worst, float(np.max(np.abs(h @ hj - hj @ h))))
    return worst


def compatibility_residual(n: int = 5, seed: int = 3, g: float = 0.7, t: float = 1.3, h: float = 1e-4) -> float:
    """Max over ``i, j`` of ``|d_{eps_j} H_i - d_{eps_i} H_j|`` and ``|d_{eps_j} H_BCS - d_t H_j|``."""
    two_sz = n % 2
    sector = build_sector(n, two_sz)
    eps = generate_levels(n, seed).eps

    def gaudin(j, t_, e):
        return build_gaudin(j, t_, g, EnergyLevels(e), sector)

    def d_eps(fun, k):
        ep, em = eps.copy(), eps.copy()
        ep[k] += h
        em[k] -= h
        return (fun(ep) - fun(em)) / (2 * h)

    worst = 0.0
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            a = d_eps(lambda e: gaudin(i, t, e), j - 1)
            b = d_eps(lambda e: gaudin(j, t, e), i - 1)
            worst = max(worst, float(np.max(np.abs(a - b))))
        dbcs = d_eps(lambda e: BCSModel(EnergyLevels(e), g, sector).dense(t), i - 1)
        dt = (gaudin(i, t + h, eps) - gaudin(i, t - h, eps)) / (2 * h)
        worst = max(worst, float(np.max(np.abs(dbcs - dt))))
    return worst


def oracle_equivalence(ns=(2, 4, 6, 8, 10, 12), gs=(0.05, 0.1, 0.5, 1.0)) -> float:
    """Largest relative mismatch between the product form and enumeration."""
    worst = 0.0
    for n in ns:
        sector = build_sector(n, 0)
        for g in gs:
            law = gibbs.GibbsLaw(n, 0, g)
            p_enum = gibbs.enumerate_distribution(law, sector)
            p_prod = np.exp(gibbs.log_microstate_prob(law, sector.basis))
            worst = max(worst, float(np.max(np.abs(p_prod / p_enum - 1))))
    return worst


def markov_equivalence(ns=(2, 4, 6, 8, 10, 12), gs=(0.05, 0.1, 0.5, 1.0)) -> float:
    worst = 0.0
    for n in ns:
        sector = build_sector(n, 0)
        for g in gs:
            law = gibbs.GibbsLaw(n, 0, g)
            p = gibbs.enumerate_distribution(law, sector)
            dist = markov.eta_distribution(law)
            hist = {}
            for e, pe in zip(np.round(sector.eta_values, 12), p):
                hist[e] = hist.get(e, 0.0) + pe
            for e, pe in zip(np.round(dist.support, 12), dist.probs):
                worst = max(worst, abs(pe - hist.get(e, 0.0)))
            pol = markov.marginal_polarizations(law)
            worst = max(worst, float(np.max(np.abs(pol - p @ sector.sz))))
    return worst


def detailed_balance_exact(ns=(4, 6, 8), gs=(0.05, 0.5, 1.0)) -> float:
    worst = 0.0
    for n in ns:
        sector = build_sector(n, 0)
        lo, hi = gibbs.adjacent_flip_pairs(sector)
        for g in gs:
            law = gibbs.GibbsLaw(n, 0, g)
            lp = gibbs.log_microstate_prob(law, sector.basis)
            ratio = np.exp(lp[hi] - lp[lo])
            worst = max(worst, float(np.max(np.abs(ratio / law.x - 1))))
    return worst


def entropy_routes(ns=(4, 8, 12), gs=(0.04, 0.1, 0.2)) -> float:
    worst = 0.0
    for n in ns:
        for g in gs:
            a = analytics.entropy_partition(g, n)
            b = gibbs.entropy_direct(gibbs.GibbsLaw(n, 0, g))
            worst = max(worst, abs(a - b))
    return worst


def ybz_sweep() -> float:
    return max(qgroup.ybz_residual(q) for q in np.geomspace(1e-2, 1e2, 100))


def sigma_sweep() -> float:
    worst = 0.0
    for q in np.geomspace(1e-2, 1e2, 100):
        r = qgroup.verification_report(float(q))
        worst = max(worst, r["eigenvalue_error"])
    return worst


def small_dynamics(n: int = 4, g: float = 0.3) -> float:
    sector = build_sector(n, 0)
    model = BCSModel(generate_levels(n, 1), g, sector)
    res = propagate(model, 1e-3, 1e3, 1e-8, n_samples=60)
    p = gibbs.enumerate_distribution(gibbs.GibbsLaw(n, 0, g), sector)
    return float(np.max(np.abs(res.final_probs - p)))


CHECKS: list[tuple[str, Callable[[], float], float]] = [
    ("commutator [H_BCS, H_j] (N=6)", commutator_residual, 1e-10),
    ("compatibility d_eps H_i = d_eps H_j (N=5)", compatibility_residual, 1e-8),
    ("oracle equivalence product vs enumeration (rel)", oracle_equivalence, 1e-10),
    ("Markov chain vs enumeration", markov_equivalence, 1e-10),
    ("detailed balance of the Gibbs law (rel)", detailed_balance_exact, 1e-12),
    ("entropy: partition route vs direct", entropy_routes, 1e-6),
    ("Yang-Baxter residual (relative)", ybz_sweep, 1e-12),
    ("monodromy eigenvalues", sigma_sweep, 1e-12),
    ("dynamics vs Gibbs (N=4, g=0.3)", small_dynamics, 1e-2),
]


def run_checks(names=None) -> list[Check]:
    out = []
    for name, fun, tol in CHECKS:
        if names and name not in names:
            continue
        start = time.perf_counter()
        try:
            value = float(fun())
            passed = bool(value <= tol)
            detail = ""
        except Exception as exc:  # reported, never swallowed silently
            value, passed, detail = float("nan"), False, f"{type(exc).__name__}: {exc}"
        out.append(Check(name, value, tol, passed, time.perf_counter() - start, detail))
    return out
