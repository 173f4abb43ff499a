"""Small dense matrix kernels for the reduction path.

Double precision on purpose: the square root of I + aa^T is irrational in
general, so downstream membership checks are tolerance-based.
"""

from __future__ import annotations

import numpy as np

from .errors import NotPositiveDefinite, Singular

PIVOT_TOL = 1e-12
COND_LIMIT = 1e12


def sqrt_decompose(q_mat: np.ndarray) -> np.ndarray:
    """Upper-triangular V with V^T V = q_mat (Cholesky of an SPD matrix)."""
    q_mat = np.asarray(q_mat, dtype=float)
    n = q_mat.shape[0]
    if q_mat.shape != (n, n) or not np.allclose(q_mat, q_mat.T, atol=1e-12):
        raise ValueError("expected a symmetric square matrix")
    # Row-by-row Cholesky, L lower triangular with L L^T = Q.
    low = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            s = q_mat[i, j] - low[i, :j] @ low[j, :j]
            if i == j:
                if s <= PIVOT_TOL:
                    raise NotPositiveDefinite(f"pivot {s:.3e} at row {i}")
                low[i, i] = np.sqrt(s)
            else:
                low[i, j] = s / low[j, j]
    return low.T


def invert(a: np.ndarray) -> np.ndarray:
    """Inverse by Gaussian elimination with partial pivoting."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("expected a square matrix")
    aug = np.hstack([a.copy(), np.eye(n)])
    for col in range(n):
        piv = col + int(np.argmax(np.abs(aug[col:, col])))
        if abs(aug[piv, col]) < PIVOT_TOL:
            raise Singular(f"pivot {aug[piv, col]:.3e} in column {col}")
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        aug[col] /= aug[col, col]
        for row in range(n):
            if row != col and aug[row, col] != 0.0:
                aug[row] -= aug[row, col] * aug[col]
    inv = aug[:, n:]
    if np.linalg.cond(a) > COND_LIMIT:
        raise Singular("condition estimate above 1e12")
    return inv
