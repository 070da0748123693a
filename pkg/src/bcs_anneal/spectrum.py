"""Adiabatic spectra and classification of adjacent-level gap minima."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import eigh, eigvalsh

from .gibbs import CapacityError

DENSE_CAP = 4000
CROSSING_TOL = 1e-8

Hamiltonian = Callable[[float], np.ndarray]


@dataclass
class GapMinimum:
    level: int  # lower level of the adjacent pair (0-based)
    t_star: float
    gap: float
    classification: str  # "crossing", "avoided" or "boundary"

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "t_star": self.t_star,
            "gap": self.gap,
            "classification": self.classification,
        }


@dataclass
class SpectrumScan:
    t: np.ndarray
    energies: np.ndarray  # (len(t), dim), ascending per row
    minima: list[tuple[int, int]]  # (level, grid index) of interior gap minima

    @property
    def gaps(self) -> np.ndarray:
        return np.diff(self.energies, axis=1)


def _as_hamiltonian(model) -> Hamiltonian:
    return model.dense if hasattr(model, "dense") else model


def spectrum_scan(model, t_grid) -> SpectrumScan:
    """Sorted eigenvalues of ``H(t)`` on ``t_grid`` plus grid-level gap minima."""
    t_grid = np.asarray(t_grid, dtype=float)
    if np.any(t_grid <= 0) or np.any(np.diff(t_grid) <= 0):
        raise ValueError("t_grid must be positive and strictly ascending")
    ham = _as_hamiltonian(model)
    dim = ham(float(t_grid[0])).shape[0]
    if dim > DENSE_CAP:
        raise CapacityError(f"dimension {dim} exceeds the dense eigensolver cap {DENSE_CAP}")
    energies = np.array([eigvalsh(ham(float(t))) for t in t_grid])
    gaps = np.diff(energies, axis=1)
    interior = (gaps[1:-1] < gaps[:-2]) & (gaps[1:-1] <= gaps[2:])
    idx, lev = np.nonzero(interior)
    minima = sorted(zip((lev).tolist(), (idx + 1).tolist()))
    return SpectrumScan(t_grid, energies, minima)


def level_gap(model, t: float, level: int) -> float:
    ham = _as_hamiltonian(model)
    w = eigh(ham(t), eigvals_only=True, subset_by_index=[level, level + 1])
    return float(w[1] - w[0])


def golden_section(f, a: float, b: float, *, xtol: float, stop_below: float = -np.inf):
    """Minimize a unimodal ``f`` on ``[a, b]``; return ``(x, f(x))``.

    Stops when the bracket is narrower than ``xtol`` or once a value below
    ``stop_below`` is found.
    """
    invphi = (np.sqrt(5) - 1) / 2
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while abs(b - a) > xtol:
        if min(fc, fd) < stop_below:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (c, fc) if fc < fd else (d, fd)


def refine_min_gap(
    model,
    bracket: tuple[float, float],
    level: int,
    *,
    crossing_tol: float = CROSSING_TOL,
    xtol: float = 1e-12,
) -> GapMinimum:
    """Golden-section refinement of the gap between ``level`` and ``level + 1``.

    The search runs in ``log t`` inside ``bracket``; ``xtol`` is in ``log t``.
    A minimum that ends on the bracket edge is reported as ``"boundary"``.
    """
    a, b = map(float, bracket)
    if not 0 < a < b:
        raise ValueError("bracket must satisfy 0 < a < b")
    f = lambda s: level_gap(model, float(np.exp(s)), level)
    la, lb = np.log(a), np.log(b)
    probe = np.linspace(la, lb, 5)
    vals = [f(s) for s in probe]
    k = int(np.argmin(vals))
    if k in (0, len(probe) - 1):
        return GapMinimum(level, float(np.exp(probe[k])), float(vals[k]), "boundary")
    s_star, gap = golden_section(
        f, probe[k - 1], probe[k + 1], xtol=xtol, stop_below=crossing_tol * 1e-3
    )
    kind = "crossing" if gap < crossing_tol else "avoided"
    return GapMinimum(level, float(np.exp(s_star)), float(gap), kind)


def classify_minima(model, scan: SpectrumScan, limit: int | None = None, **kw) -> list[GapMinimum]:
    """Refine the grid minima of ``scan``, smallest grid gap first.

    ``limit`` caps how many are refined.
    """
    gaps = scan.gaps
    ranked = sorted(scan.minima, key=lambda li: gaps[li[1], li[0]])
    if limit is not None:
        ranked = ranked[:limit]
    out = []
    for level, i in ranked:
        bracket = (scan.t[i - 1], scan.t[i + 1])
        out.append(refine_min_gap(model, bracket, level, **kw))
    return out
