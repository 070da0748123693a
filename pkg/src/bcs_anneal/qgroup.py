"""Two-spin R-matrix of the monodromy and its Yang-Baxter check.

Single-spin basis ``|1> = up, |2> = down``; two-spin basis ordered
``(up up, up down, down up, down down)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi

import numpy as np

SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
    dtype=float,
)


def hubbard(a: int, b: int) -> np.ndarray:
    """``X_ab = |a><b|`` with 1-based labels."""
    x = np.zeros((2, 2))
    x[a - 1, b - 1] = 1.0
    return x


def q_from_g(g: float) -> float:
    return float(np.exp(-pi * g))


@dataclass(frozen=True)
class RMatrix:
    q: float
    entries: np.ndarray


def build_r(q: float) -> RMatrix:
    """``(I + (q-1)(X11 X11 + X22 X22) + (q - 1/q) X12 X21) / sqrt(q)``."""
    if not q > 0:
        raise ValueError("q must be positive")
    r = (
        np.eye(4)
        + (q - 1) * (np.kron(hubbard(1, 1), hubbard(1, 1)) + np.kron(hubbard(2, 2), hubbard(2, 2)))
        + (q - 1 / q) * np.kron(hubbard(1, 2), hubbard(2, 1))
    ) / np.sqrt(q)
    return RMatrix(q, r)


def embed(r: np.ndarray, i: int, j: int) -> np.ndarray:
    """Lift a two-spin operator to act on factors ``i, j`` of three spins (0-based)."""
    r4 = r.reshape(2, 2, 2, 2)  # out_i, out_j, in_i, in_j
    k = 3 - i - j
    eye = np.eye(2)
    letters_out = ["a", "b", "c"]
    letters_in = ["d", "e", "f"]
    subscripts = (
        letters_out[i] + letters_out[j] + letters_in[i] + letters_in[j]
        + "," + letters_out[k] + letters_in[k]
        + "->" + "".join(letters_out) + "".join(letters_in)
    )
    full = np.einsum(subscripts, r4, eye)
    return full.reshape(8, 8)


def ybz_residual(q: float, relative: bool = True) -> float:
    """Max-norm of ``R12 R13 R23 - R23 R13 R12`` on three spins.

    With ``relative`` the norm is divided by ``max(1, max|R12 R13 R23|)``;
    entries grow like ``q^{-9/2}`` and round-off scales with them.
    """
    r = build_r(q).entries
    r12, r13, r23 = embed(r, 0, 1), embed(r, 0, 2), embed(r, 1, 2)
    lhs = r12 @ r13 @ r23
    res = float(np.max(np.abs(lhs - r23 @ r13 @ r12)))
    if relative:
        res /= max(1.0, float(np.max(np.abs(lhs))))
    return res


def sigma_matrix(q: float) -> np.ndarray:
    return SWAP @ build_r(q).entries


def sigma_eigenvalues(q: float) -> np.ndarray:
    """Sorted eigenvalues of ``swap * R`` (real for ``q > 0``)."""
    w = np.linalg.eigvals(sigma_matrix(q))
    if np.max(np.abs(w.imag)) > 1e-12 * max(1.0, np.max(np.abs(w))):
        raise ArithmeticError("unexpected complex eigenvalues")
    return np.sort(w.real)


def expected_sigma_eigenvalues(q: float) -> np.ndarray:
    return np.sort([-(q**-1.5), np.sqrt(q), np.sqrt(q), np.sqrt(q)])


def verification_report(q: float) -> dict:
    res = ybz_residual(q)
    ev = sigma_eigenvalues(q)
    exp = expected_sigma_eigenvalues(q)
    scale = max(1.0, float(np.max(np.abs(exp))))
    eig_err = float(np.max(np.abs(ev - exp)) / scale)
    return {
        "q": q,
        "ybz_residual": res,
        "eigenvalues": ev.tolist(),
        "expected": exp.tolist(),
        "eigenvalue_error": eig_err,
        "pass": bool(res <= 1e-12 and eig_err <= 1e-12),
    }
