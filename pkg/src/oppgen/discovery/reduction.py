"""Deterministic dimensionality reduction.

Principal components are found by power iteration with deflation on the
covariance matrix, seeded and sign-fixed so the same input always yields
the same projection.
"""

from __future__ import annotations

import numpy as np

from ..errors import TooFewPoints

__all__ = ["reduce_dimensions", "project_2d"]

_TOLERANCE = 1e-8
_MAX_ITERATIONS = 1000


def _orthogonalize(v: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
    for b in basis:
        v = v - np.dot(v, b) * b
    return v


def reduce_dimensions(
    vectors: np.ndarray,
    k: int,
    seed: int = 0,
    tol: float = _TOLERANCE,
    max_iter: int = _MAX_ITERATIONS,
) -> np.ndarray:
    """Project n vectors onto their top-k principal components.

    Components are computed by power iteration with deflation; directions
    of zero variance fall back to the (seeded) random orthonormal start, so
    k may be as large as the ambient dimension. With k equal to the
    ambient dimension the projection is an orthonormal change of basis and
    pairwise distances are preserved exactly.
    """
    matrix = np.asarray(vectors, dtype=np.float64)
    if matrix.ndim != 2:
        raise ValueError("expected a 2-D array of row vectors")
    n, dim = matrix.shape
    if n < 2:
        raise TooFewPoints(f"need at least 2 vectors, got {n}")
    if not 1 <= k <= dim:
        raise ValueError(f"k must be in [1, {dim}], got {k}")
    centered = matrix - matrix.mean(axis=0)
    cov = centered.T @ centered
    rng = np.random.default_rng(seed)
    components: list[np.ndarray] = []
    for _ in range(k):
        v = rng.normal(size=dim)
        v = _orthogonalize(v, components)
        v /= np.linalg.norm(v)
        for _ in range(max_iter):
            w = cov @ v
            w = _orthogonalize(w, components)
            norm = np.linalg.norm(w)
            if norm < 1e-200:
                break  # zero-variance direction; keep the start vector
            w /= norm
            if min(np.linalg.norm(w - v), np.linalg.norm(w + v)) < tol:
                v = w
                break
            v = w
        # sign convention: largest-magnitude coordinate is positive
        pivot = int(np.argmax(np.abs(v)))
        if v[pivot] < 0:
            v = -v
        eigenvalue = float(v @ cov @ v)
        cov = cov - eigenvalue * np.outer(v, v)
        components.append(v)
    basis = np.column_stack(components)
    return centered @ basis


def project_2d(vectors: np.ndarray, seed: int = 0) -> np.ndarray:
    """Two-component projection scaled into the unit square.

    An axis with no spread maps to 0.5.
    """
    points = reduce_dimensions(vectors, k=2, seed=seed)
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    span = hi - lo
    out = np.empty_like(points)
    for axis in range(2):
        if span[axis] < 1e-12:
            out[:, axis] = 0.5
        else:
            out[:, axis] = (points[:, axis] - lo[axis]) / span[axis]
    return out
