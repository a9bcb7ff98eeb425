"""Computable upper bounds on the squared Frobenius error of the decompositions.

All totals bound ``||A - A_hat||_F ** 2`` (squared). Singular values that sit
at roundoff level, ``sigma <= rtol * sigma_1`` with the default
``rtol = max(unfolding shape) * eps``, are treated as exact zeros so that
bounds vanish on exactly low-rank input.
"""
from dataclasses import dataclass, field

import numpy as np

from .exceptions import RankError
from .linalg import singular_values
from .tensor_core import unfold
from .validation import check_fiber_modes, check_matrix, check_ranks, check_tensor


@dataclass(frozen=True)
class BoundTerm:
    mode: int
    kind: str  # "pqr" or "svd"
    value: float


@dataclass(frozen=True)
class BoundBreakdown:
    total: float
    terms: list = field(default_factory=list)
    sigma_next: list = field(default_factory=list)


def p_factor(r, n):
    """Pivoted-QR amplification factor ``(1 + 2r + sum_{j<r} 4^j (r-j)) (n - r)``.

    Evaluated in exact integer arithmetic.

    >>> p_factor(1, 7), p_factor(2, 10), p_factor(3, 5)
    (18, 72, 62)
    """
    r, n = int(r), int(n)
    if not 1 <= r <= n:
        raise RankError(f"p_factor needs 1 <= r <= n, got r={r}, n={n}")
    head = 1 + 2 * r + sum(4 ** j * (r - j) for j in range(1, r))
    return head * (n - r)


def _sigma_after(A, r, rtol):
    s = singular_values(A)
    if r >= s.size:
        return 0.0
    if rtol is None:
        rtol = max(A.shape) * np.finfo(np.float64).eps
    sigma = float(s[r])
    return 0.0 if sigma <= rtol * s[0] else sigma


def hybrid_bound(X, ranks, fiber_modes=(), rtol=None):
    """Bound for the hybrid approximation with interpolatory factors in ``fiber_modes``.

    Modes in ``fiber_modes`` contribute ``p(r, n) (n - r) sigma_{r+1}^2`` of
    their unfolding, all other modes ``(n - r) sigma_{r+1}^2``.
    """
    X = check_tensor(X)
    ranks = check_ranks(ranks, X.shape)
    fiber_modes = set(check_fiber_modes(fiber_modes, X.ndim))
    terms, sigmas = [], []
    for mode, (r, n) in enumerate(zip(ranks, X.shape)):
        sigma = _sigma_after(unfold(X, mode), r, rtol)
        if mode in fiber_modes:
            value = p_factor(r, n) * (n - r) * sigma ** 2
            terms.append(BoundTerm(mode, "pqr", float(value)))
        else:
            terms.append(BoundTerm(mode, "svd", float((n - r) * sigma ** 2)))
        sigmas.append(sigma)
    return BoundBreakdown(total=float(sum(t.value for t in terms)), terms=terms,
                          sigma_next=sigmas)


def cur_bound(X, ranks, rtol=None):
    """Bound for the all-interpolatory (HOID) approximation."""
    X = check_tensor(X)
    return hybrid_bound(X, ranks, "all", rtol=rtol)


def matrix_hybrid_bound(A, k, rtol=None):
    """``p(k, m) (m - k) sigma_{k+1}^2 + (n - k) sigma_{k+1}^2`` for an ``m x n`` matrix."""
    A = check_matrix(A)
    m, n = A.shape
    if not 1 <= k <= min(m, n):
        raise RankError(f"rank {k} outside [1, {min(m, n)}]")
    sigma = _sigma_after(A, k, rtol)
    return float(p_factor(k, m) * (m - k) * sigma ** 2 + (n - k) * sigma ** 2)


def svd_error_floor(A, k):
    """Frobenius error of the best rank-``k`` approximation, ``sqrt(sum_{i>k} sigma_i^2)``."""
    A = check_matrix(A)
    if not 0 <= k <= min(A.shape):
        raise RankError(f"rank {k} outside [0, {min(A.shape)}]")
    s = singular_values(A)
    return float(np.sqrt(np.sum(s[k:] ** 2)))
