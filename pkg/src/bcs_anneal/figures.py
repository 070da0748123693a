"""Data tables behind the published figures (no plotting).

Each builder returns a list of ``Table`` objects; the CLI writes every
table as CSV with its manifest.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import analytics, gibbs, markov
from .config import DEFAULT_SEED, THREE_BODY_VARIANCE, max_workers
from .hamiltonians import BCSModel, EnergyLevels, ThreeBodyCouplings, ThreeBodyModel, generate_levels
from .propagate import propagate
from .sector import build_sector, from_string, to_arrows, to_bitstring
from .spectrum import spectrum_scan


@dataclass
class Table:
    name: str
    header: list[str]
    rows: list[list] = field(default_factory=list)
    params: dict = field(default_factory=dict)


def _pmap(fun, items):
    items = list(items)
    workers = min(max_workers(), len(items))
    if workers <= 1:
        return [fun(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fun, items))


def _evolve_job(job):
    model_name, n, seed, g, t0, t1, tol, readout, n_samples = job
    sector = build_sector(n, 0)
    if model_name == "bcs":
        model = BCSModel(generate_levels(n, seed), g, sector)
    else:
        model = ThreeBodyModel(ThreeBodyCouplings.random(n, seed, THREE_BODY_VARIANCE), g, sector)
    return propagate(model, t0, t1, tol, readout=readout, n_samples=n_samples)


def _spectrum_table(name, model, t_grid, params):
    scan = spectrum_scan(model, t_grid)
    rows = [
        [t, k, e]
        for t, levels in zip(scan.t, scan.energies)
        for k, e in enumerate(levels)
    ]
    return Table(name, ["t", "level_index", "eigenvalue"], rows, params)


def fig1b(n=12, seed=DEFAULT_SEED, gs=None, points=120, t_range=(1e-2, 1e2)):
    gs = gs or [1.0 / n, 1.0]
    sector = build_sector(n, 0)
    levels = generate_levels(n, seed)
    grid = np.geomspace(*t_range, points)
    return [
        _spectrum_table(f"fig1b_g{g:.4g}", BCSModel(levels, g, sector), grid, {"n": n, "g": g, "seed": seed})
        for g in gs
    ]


def fig9a(n=12, seed=DEFAULT_SEED, points=120, t_range=(1e-2, 1e2)):
    sector = build_sector(n, 0)
    model = ThreeBodyModel(ThreeBodyCouplings.random(n, seed, THREE_BODY_VARIANCE), 1.0 / n, sector)
    return [_spectrum_table("fig9a", model, np.geomspace(*t_range, points), {"n": n, "seed": seed})]


def fig2a(ns=(4, 6, 8, 10, 12), gs=None, simulate_ns=(4, 6, 8), sim_gs=(0.1, 0.3, 0.6, 1.0), seed=DEFAULT_SEED):
    gs = list(gs) if gs is not None else list(np.round(np.linspace(0.0, 1.5, 31), 6))
    theory = Table("fig2a_theory", ["g", "n", "quantity", "value"])
    for g in gs:
        for n in ns:
            theory.rows.append([g, n, "ground_prob", gibbs.ground_prob(gibbs.GibbsLaw(n, 0, g))])
        theory.rows.append([g, "inf", "ground_prob", gibbs.ground_prob_limit(g)])
        theory.rows.append([g, "inf", "landau_zener", float(-np.expm1(-2 * np.pi * g))])
    jobs = [("bcs", n, seed, g, 1e-3, 1e3, 1e-8, "asymptotic", 20) for n in simulate_ns for g in sim_gs]
    sims = _pmap(_evolve_job, jobs)
    sim = Table("fig2a_simulation", ["g", "n", "quantity", "value"])
    for (_, n, _, g, *_), res in zip(jobs, sims):
        sim.rows.append([g, n, "ground_prob", res.final_probs[build_sector(n, 0).index_of((1 << n // 2) - 1)]])
    return [theory, sim]


def fig2b(n=12, seed=DEFAULT_SEED, gs=(0.01, 1 / 12, 0.3, 1.0), n_samples=200):
    jobs = [("bcs", n, seed, g, 1e-3, 1e3, 1e-8, "bare", n_samples) for g in gs]
    table = Table("fig2b", ["g", "t", "eta"], params={"n": n, "seed": seed})
    for (_, _, _, g, *_), res in zip(jobs, _pmap(_evolve_job, jobs)):
        table.rows.extend([g, t, e] for t, e in res.eta_trace)
    return [table]


def fig4a(n=12, seed=DEFAULT_SEED, gs=None, sim_gs=(0.05, 0.1, 0.2, 0.4, 0.7, 1.0)):
    gs = list(gs) if gs is not None else list(np.round(np.geomspace(0.01, 2.0, 40), 6))
    theory = Table("fig4a_gibbs", ["g", "spin", "polarization"], params={"n": n})
    for g in gs:
        for j, v in enumerate(markov.marginal_polarizations(gibbs.GibbsLaw(n, 0, g)), start=1):
            theory.rows.append([g, j, v])
    sector = build_sector(n, 0)
    jobs = [("bcs", n, seed, g, 1e-3, 1e3, 1e-8, "asymptotic", 20) for g in sim_gs]
    sim = Table("fig4a_simulation", ["g", "spin", "polarization"], params={"n": n, "seed": seed})
    for (_, _, _, g, *_), res in zip(jobs, _pmap(_evolve_job, jobs)):
        for j, v in enumerate(res.final_probs @ sector.sz, start=1):
            sim.rows.append([g, j, v])
    return [theory, sim]


def fig4b(ns=(200, 600, 2000), gs=None):
    gs = list(gs) if gs is not None else list(np.round(np.geomspace(1e-4, 0.1, 40), 8))
    table = Table("fig4b", ["g", "n", "quantity", "value"])
    for n in ns:
        for g in gs:
            table.rows.append([g, n, "mean_eta_markov", markov.eta_distribution(gibbs.GibbsLaw(n, 0, g)).mean])
            table.rows.append([g, n, "mean_eta_approx", analytics.mean_eta_approx(g, n)])
    return [table]


def fig5a(gs=(0.04, 0.1, 0.2), ns=None, exact_max=16):
    ns = list(ns) if ns is not None else [2, 4, 6, 8, 10, 12, 14, 16, 20, 30, 40, 60, 80, 100, 150, 200]
    table = Table("fig5a", ["g", "n", "quantity", "value"])
    for g in gs:
        for n in ns:
            table.rows.append([g, n, "entropy_partition", analytics.entropy_partition(g, n)])
            if n <= exact_max:
                table.rows.append([g, n, "entropy_direct", gibbs.entropy_direct(gibbs.GibbsLaw(n, 0, g))])
        table.rows.append([g, "inf", "entropy_saturation", analytics.entropy_saturation(g)])
    return [table]


def fig5b(gns=(1.0, 2.0, 4.0), ns=None, exact_max=16):
    ns = list(ns) if ns is not None else [4, 8, 12, 16, 50, 100, 200, 400, 800]
    table = Table("fig5b", ["gn", "n", "quantity", "value"])
    for gn in gns:
        for n in ns:
            g = gn / n
            table.rows.append([gn, n, "entropy_partition", analytics.entropy_partition(g, n)])
            if n <= exact_max:
                table.rows.append([gn, n, "entropy_direct", gibbs.entropy_direct(gibbs.GibbsLaw(n, 0, g))])
    return [table]


def fig6(n=600, gs=(0.005, 0.01, 0.02)):
    table = Table("fig6", ["g", "eta", "probability", "gaussian"], params={"n": n})
    step = 4.0 / n
    for g in gs:
        dist = markov.eta_distribution(gibbs.GibbsLaw(n, 0, g))
        dens = analytics.gaussian_density(dist.support, g, n)
        for e, p, d in zip(dist.support, dist.probs, dens * step):
            table.rows.append([g, e, p, d])
    return [table]


FIG8_STATES_N4 = ("↑↑↓↓", "↑↓↑↓", "↑↓↓↑")
FIG8_STATES_N6 = ("↑↑↑↓↓↓", "↑↑↓↑↓↓", "↑↑↓↓↑↓")


def fig8(n=12, seed=DEFAULT_SEED, gs=(0.05, 0.1, 0.2, 0.4, 0.7, 1.0), top=10, eps_last=(1.0, 1.5, 2.5, 4.0)):
    """(a) leading microstates vs g at ``n``; (b) probabilities vs the top level."""
    sector = build_sector(n, 0)
    jobs = [("bcs", n, seed, g, 1e-3, 1e3, 1e-8, "asymptotic", 20) for g in gs]
    a = Table("fig8a", ["g", "microstate", "bitstring", "simulated", "gibbs"], params={"n": n, "seed": seed})
    for (_, _, _, g, *_), res in zip(jobs, _pmap(_evolve_job, jobs)):
        p = gibbs.enumerate_distribution(gibbs.GibbsLaw(n, 0, g), sector)
        for i in np.argsort(-p, kind="stable")[:top]:
            b = int(sector.basis[i])
            a.rows.append([g, to_arrows(b, n), to_bitstring(b, n), res.final_probs[i], p[i]])
    b = Table("fig8b", ["n", "eps_last", "microstate", "simulated", "gibbs"], params={"g": 0.1})
    for m, states in ((4, FIG8_STATES_N4), (6, FIG8_STATES_N6)):
        sec = build_sector(m, 0)
        base = generate_levels(m, seed).eps
        law = gibbs.GibbsLaw(m, 0, 0.1)
        for top_eps in eps_last:
            eps = base.copy()
            eps[-1] = max(top_eps, eps[-2] + 1e-3)
            res = propagate(BCSModel(EnergyLevels(eps), 0.1, sec), n_samples=20)
            for s in states:
                bits = from_string(s)
                b.rows.append([m, eps[-1], s, res.final_probs[sec.index_of(bits)], gibbs.microstate_prob(law, bits)[0]])
    return [a, b]


def fig9b(n=12, seed=DEFAULT_SEED, gs=(0.05, 0.2, 0.5, 1.0)):
    sector = build_sector(n, 0)
    jobs = [("three-body", n, seed, g, 1e-3, 1e3, 1e-8, "bare", 20) for g in gs]
    table = Table("fig9b", ["g", "spin", "polarization"], params={"n": n, "seed": seed})
    for (_, _, _, g, *_), res in zip(jobs, _pmap(_evolve_job, jobs)):
        for j, v in enumerate(res.final_probs @ sector.sz, start=1):
            table.rows.append([g, j, v])
    return [table]


FIGURES = {
    "1b": fig1b,
    "2a": fig2a,
    "2b": fig2b,
    "4a": fig4a,
    "4b": fig4b,
    "5a": fig5a,
    "5b": fig5b,
    "6": fig6,
    "8": fig8,
    "9a": fig9a,
    "9b": fig9b,
}
