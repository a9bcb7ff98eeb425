"""Matrix factorizations: SVD, pivoted QR, interpolative column selection, pseudoinverse."""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .exceptions import RankDeficiencyError, RankError
from .validation import check_matrix

# Downdated column norms are recomputed once they lose about half the mantissa.
_NORM_RECOMPUTE_TOL = np.sqrt(np.finfo(np.float64).eps)
R11_RTOL = 1e-12


@dataclass(frozen=True)
class SingularSpectrum:
    """Thin SVD ``A = U diag(values) V^T``.

    Each column of ``U`` is signed so that its largest-magnitude entry is
    nonnegative (first such entry on ties); ``V`` is flipped to match.
    """
    values: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray


@dataclass(frozen=True)
class PqrFactorization:
    """``A[:, permutation] = Q @ R`` from Householder QR with column pivoting."""
    permutation: np.ndarray
    Q: np.ndarray
    R: np.ndarray

    def split(self, r):
        """Return the blocks ``(Q1, Q2, R11, R12, R22, P1, P2)`` at rank ``r``.

        ``P1`` and ``P2`` are index arrays (column selections), not
        permutation matrices.
        """
        k = self.R.shape[0]
        if not 0 <= r <= k:
            raise RankError(f"split rank {r} outside [0, {k}]")
        R = self.R
        return (self.Q[:, :r], self.Q[:, r:], R[:r, :r], R[:r, r:], R[r:, r:],
                self.permutation[:r], self.permutation[r:])


@dataclass(frozen=True)
class InterpolativeSelection:
    """Column skeleton ``A ~ C @ F`` with ``C = A[:, indices]``."""
    C: np.ndarray
    indices: np.ndarray
    F: np.ndarray
    residual_norm: float


def _signed(U, Vt):
    idx = np.argmax(np.abs(U), axis=0)
    signs = np.sign(U[idx, np.arange(U.shape[1])])
    signs[signs == 0] = 1.0
    return U * signs, Vt * signs[:, None]


def svd(A):
    A = check_matrix(A)
    U, s, Vt = np.linalg.svd(A, full_matrices=False)
    U, Vt = _signed(U, Vt)
    return SingularSpectrum(values=s, left_vectors=U, right_vectors=Vt.T)


def singular_values(A):
    return np.linalg.svd(check_matrix(A), compute_uv=False)


def leading_left_singular_vectors(A, r):
    """Orthonormal basis of the dominant ``r``-dimensional left singular subspace."""
    A = check_matrix(A)
    if not 1 <= r <= min(A.shape):
        raise RankError(f"rank {r} outside [1, {min(A.shape)}] for {A.shape} matrix")
    return svd(A).left_vectors[:, :r].copy()


def _householder(x):
    """Reflector ``H = I - beta v v^T`` with ``H x = alpha e_1`` (LAPACK dlarfg style).

    Returns ``(v, beta, alpha)``; ``beta == 0`` when ``x`` already has a zero tail.
    """
    tail = np.linalg.norm(x[1:])
    if tail == 0.0:
        return None, 0.0, x[0]
    alpha = -np.copysign(np.hypot(x[0], tail), x[0])
    v = x.copy()
    v[0] -= alpha
    v /= v[0]
    beta = (alpha - x[0]) / alpha
    return v, beta, alpha


def _pivoted_householder(A, steps, want_q):
    """Run ``steps`` Businger-Golub pivoting steps on a copy of ``A``.

    The pivot at each step is the remaining column of largest residual
    2-norm, ties going to the smallest original column index. Returns the
    partially reduced matrix (upper trapezoidal in its first ``steps``
    columns), the permutation and, if requested, the accumulated reflectors.
    """
    R = np.array(A, dtype=np.float64, copy=True)
    m, n = R.shape
    perm = np.arange(n)
    partial = np.linalg.norm(R, axis=0)
    original = partial.copy()
    reflectors = []
    for k in range(steps):
        rest = partial[k:]
        ties = np.flatnonzero(rest == rest.max())
        p = k + ties[np.argmin(perm[k + ties])]
        if p != k:
            R[:, [k, p]] = R[:, [p, k]]
            perm[[k, p]] = perm[[p, k]]
            partial[[k, p]] = partial[[p, k]]
            original[[k, p]] = original[[p, k]]
        v, beta, alpha = _householder(R[k:, k])
        if beta != 0.0:
            R[k:, k + 1:] -= beta * np.outer(v, v @ R[k:, k + 1:])
            R[k, k] = alpha
            R[k + 1:, k] = 0.0
        if want_q:
            reflectors.append((k, v, beta))
        # Downdate the remaining column norms, recomputing where cancellation bites.
        j = np.arange(k + 1, n)
        live = partial[j] != 0.0
        j = j[live]
        if j.size:
            ratio = np.abs(R[k, j]) / partial[j]
            temp = np.maximum(0.0, (1.0 + ratio) * (1.0 - ratio))
            lost = temp * (partial[j] / original[j]) ** 2 <= _NORM_RECOMPUTE_TOL
            redo = j[lost]
            if redo.size:
                partial[redo] = np.linalg.norm(R[k + 1:, redo], axis=0)
                original[redo] = partial[redo]
            keep = j[~lost]
            partial[keep] *= np.sqrt(temp[~lost])
    return R, perm, reflectors


def pqr(A):
    """QR factorization with column pivoting, ``A[:, perm] = Q @ R``.

    ``Q`` is ``m x min(m, n)`` with orthonormal columns and ``R`` is
    ``min(m, n) x n`` upper triangular with exact zeros below the diagonal.
    """
    A = check_matrix(A)
    m, n = A.shape
    k = min(m, n)
    R, perm, reflectors = _pivoted_householder(A, k, want_q=True)
    Q = np.eye(m, k)
    for j, v, beta in reversed(reflectors):
        if beta != 0.0:
            Q[j:, :] -= beta * np.outer(v, v @ Q[j:, :])
    R = np.triu(R[:k, :])
    return PqrFactorization(permutation=perm, Q=Q, R=R)


def interpolative_select(A, r):
    """Select ``r`` columns of ``A`` by pivoted QR and build ``A = C F + E``.

    Only the first ``r`` elimination steps are run: the leading ``r`` rows of
    the reduced matrix give ``[R11 R12]`` and the trailing block has the same
    Frobenius norm as ``R22`` of the complete factorization.

    Raises
    ------
    RankError
        If ``r`` is outside ``[1, min(A.shape)]``.
    RankDeficiencyError
        If ``|R11[i, i]| <= 1e-12 * |R11[0, 0]|`` for some ``i < r``.
    """
    A = check_matrix(A)
    m, n = A.shape
    if not 1 <= r <= min(m, n):
        raise RankError(f"rank {r} outside [1, {min(m, n)}] for {A.shape} matrix")
    R, perm, _ = _pivoted_householder(A, r, want_q=False)
    diag = np.abs(np.diag(R[:r, :r]))
    bad = np.flatnonzero(diag <= R11_RTOL * diag[0]) if diag[0] > 0 else np.array([0])
    if bad.size:
        step = int(bad[0])
        raise RankDeficiencyError(
            f"R11 is numerically singular: pivot {step} has |R[{step},{step}]| = "
            f"{diag[step]:.3e}", step=step)
    R11 = np.triu(R[:r, :r])
    R12 = R[:r, r:]
    F = np.zeros((r, n))
    F[:, perm[:r]] = np.eye(r)
    if n > r:
        F[:, perm[r:]] = solve_triangular(R11, R12)
    residual = float(np.linalg.norm(R[r:, r:])) if m > r and n > r else 0.0
    indices = perm[:r].copy()
    return InterpolativeSelection(C=A[:, indices].copy(), indices=indices, F=F,
                                  residual_norm=residual)


def pseudoinverse(A, tol=1e-12):
    """Moore-Penrose inverse via SVD; singular values ``<= tol * s_1`` are dropped."""
    A = check_matrix(A)
    U, s, Vt = np.linalg.svd(A, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros(A.T.shape)
    keep = s > tol * s[0]
    return (Vt[keep].T / s[keep]) @ U[:, keep].T
