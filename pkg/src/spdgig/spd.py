"""Symmetric-matrix arithmetic and SPD-cone primitives.

Matrices are plain ``numpy`` float arrays.  The cone membership test, the
inverse, the square root and the log-determinant all route through a single
Cholesky factorization so that every answer is backed by the same
certificate.  Vectorization uses sqrt(2)-weighted off-diagonal coordinates,
which makes it an isometry for the trace inner product <x,y> = tr(xy).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimMismatch, IllConditioned, NotPositiveDefinite, SymmetryLoss

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ConditionGuard:
    """Bound on the eigenvalue ratio accepted by cone operations."""

    max_condition: float = 1e8
    tolerance_scale: float = 100.0

    def __post_init__(self):
        if self.max_condition < 1.0:
            raise ValueError("max_condition must be >= 1")


DEFAULT_GUARD = ConditionGuard()


def as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {m.shape}")
    return m


def sym_part(m) -> np.ndarray:
    m = as_matrix(m)
    return 0.5 * (m + m.T)


def check_same_dim(x: np.ndarray, y: np.ndarray) -> None:
    if x.shape != y.shape:
        raise DimMismatch(f"shape mismatch: {x.shape} vs {y.shape}")


def cholesky_factor(m) -> np.ndarray:
    """Lower Cholesky factor of an SPD matrix, with a pivot-positivity bound.

    The membership criterion is that factorization succeeds and every pivot
    exceeds ``dim * eps * max|entry|``.
    """
    m = as_matrix(m)
    try:
        lower = np.linalg.cholesky(m)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("Cholesky factorization failed") from exc
    floor = m.shape[0] * _EPS * max(np.abs(m).max(), _EPS)
    if np.any(np.diag(lower) <= floor):
        raise NotPositiveDefinite("Cholesky pivot below positivity threshold")
    return lower


def is_spd(m) -> bool:
    """True iff ``m`` is symmetric positive definite (total function)."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    if not np.allclose(m, m.T, rtol=0.0, atol=1e-12 * max(np.abs(m).max(), 1.0)):
        return False
    try:
        cholesky_factor(m)
    except NotPositiveDefinite:
        return False
    return True


def condition_number(m) -> float:
    """Eigenvalue-ratio condition number of a symmetric matrix."""
    vals = np.linalg.eigvalsh(sym_part(m))
    lo, hi = vals[0], vals[-1]
    if lo <= 0.0:
        return np.inf
    return hi / lo


def _enforce_guard(m: np.ndarray, guard: ConditionGuard) -> None:
    kappa = condition_number(m)
    if kappa > guard.max_condition:
        raise IllConditioned(f"condition number {kappa:.3e} exceeds guard {guard.max_condition:.1e}")


def spd_inverse(m, guard: ConditionGuard = DEFAULT_GUARD) -> np.ndarray:
    """Inverse of an SPD matrix via its Cholesky factor."""
    m = as_matrix(m)
    lower = cholesky_factor(m)
    _enforce_guard(m, guard)
    inv = scipy.linalg.cho_solve((lower, True), np.eye(m.shape[0]))
    return 0.5 * (inv + inv.T)


def spd_sqrt(m, guard: ConditionGuard = DEFAULT_GUARD) -> np.ndarray:
    """Symmetric square root via eigendecomposition."""
    m = as_matrix(m)
    cholesky_factor(m)  # membership certificate
    _enforce_guard(m, guard)
    vals, vecs = np.linalg.eigh(sym_part(m))
    root = (vecs * np.sqrt(vals)) @ vecs.T
    return 0.5 * (root + root.T)


def logdet(m) -> float:
    """log det of an SPD matrix, read off the Cholesky diagonal."""
    lower = cholesky_factor(m)
    return 2.0 * float(np.sum(np.log(np.diag(lower))))


def trace_inner(x, y) -> float:
    """Trace inner product tr(xy) of symmetric matrices."""
    x, y = as_matrix(x), as_matrix(y)
    check_same_dim(x, y)
    return float(np.sum(x * y))


def quad_rep(x, y) -> np.ndarray:
    """Quadratic representation P{x} y = x y x."""
    x, y = as_matrix(x), as_matrix(y)
    check_same_dim(x, y)
    out = x @ y @ x
    return 0.5 * (out + out.T)


def sym_dim(r: int) -> int:
    return r * (r + 1) // 2


def vectorize(m) -> np.ndarray:
    """Isometric coordinates of a symmetric matrix.

    Lower triangle in row-major order, off-diagonal entries scaled by
    sqrt(2) so that the Euclidean norm equals the trace-inner-product norm.
    """
    m = as_matrix(m)
    i, j = np.tril_indices(m.shape[0])
    weights = np.where(i == j, 1.0, np.sqrt(2.0))
    return m[i, j] * weights


def devectorize(v, r: int) -> np.ndarray:
    """Inverse of :func:`vectorize`."""
    v = np.asarray(v, dtype=float)
    if v.shape != (sym_dim(r),):
        raise DimMismatch(f"expected vector of length {sym_dim(r)}, got {v.shape}")
    m = np.zeros((r, r))
    i, j = np.tril_indices(r)
    weights = np.where(i == j, 1.0, np.sqrt(2.0))
    m[i, j] = v / weights
    return m + m.T - np.diag(np.diag(m))


def symmetrize_checked(m, rel_tol: float = 1e-8) -> np.ndarray:
    """Symmetrize a matrix that should already be symmetric.

    Raises :class:`SymmetryLoss` when the skew part exceeds ``rel_tol``
    relative to the matrix norm, which signals conditioning trouble
    upstream rather than a recoverable rounding artifact.
    """
    m = as_matrix(m)
    scale = max(np.linalg.norm(m), _EPS)
    skew = np.linalg.norm(m - m.T)
    if skew > rel_tol * scale:
        raise SymmetryLoss(f"relative asymmetry {skew / scale:.3e} exceeds {rel_tol:.1e}")
    return 0.5 * (m + m.T)


def rel_residual(lhs, rhs) -> float:
    """Frobenius difference relative to the larger side."""
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    scale = max(np.linalg.norm(lhs), np.linalg.norm(rhs))
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(lhs - rhs) / scale)
