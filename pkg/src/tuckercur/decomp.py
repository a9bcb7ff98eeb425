"""Tucker-format approximations: T-HOSVD, HOID and the hybrid interpolatory/SVD method.

All three tensor algorithms share one pipeline. Every factor is computed
from an unfolding of the *original* tensor:

* modes in ``fiber_modes`` get an interpolatory factor ``C`` made of actual
  mode fibers chosen by pivoted QR;
* the remaining modes get the leading left singular vectors ``U``.

The core is ``X x_j pinv(C_j)`` on interpolatory modes and ``X x_j U_j^T`` on
the others, which is the Frobenius-optimal core for the chosen factors.
T-HOSVD is the case ``fiber_modes = ()`` and HOID the case ``"all"``.
"""
from dataclasses import dataclass, field

import numpy as np

from . import bounds
from .exceptions import RankDeficiencyError, RankError, ShapeError
from .linalg import (interpolative_select, leading_left_singular_vectors,
                     pseudoinverse, svd)
from .tensor_core import frobenius_norm, multi_mode_product, unfold
from .validation import check_fiber_modes, check_matrix, check_ranks, check_tensor

INTERPOLATORY = "interpolatory"
ORTHONORMAL = "orthonormal"


@dataclass(frozen=True)
class ModeFactor:
    kind: str
    matrix: np.ndarray
    # Column indices into the mode unfolding; only for interpolatory factors.
    indices: np.ndarray = None

    @property
    def rank(self):
        return self.matrix.shape[1]

    def projector_factor(self):
        """Matrix applied to the data to form the core: ``pinv(C)`` or ``U^T``."""
        if self.kind == INTERPOLATORY:
            return pseudoinverse(self.matrix)
        return self.matrix.T


@dataclass(frozen=True)
class TuckerFactorization:
    core: np.ndarray
    factors: list
    source_shape: tuple

    def __post_init__(self):
        if len(self.factors) != self.core.ndim:
            raise ShapeError("need one factor per core mode")
        for mode, f in enumerate(self.factors):
            if f.matrix.shape != (self.source_shape[mode], self.core.shape[mode]):
                raise ShapeError(f"factor {mode} has shape {f.matrix.shape}, expected "
                                 f"{(self.source_shape[mode], self.core.shape[mode])}")

    @property
    def ranks(self):
        return tuple(self.core.shape)

    @property
    def fiber_modes(self):
        return tuple(m for m, f in enumerate(self.factors) if f.kind == INTERPOLATORY)


@dataclass(frozen=True)
class ErrorReport:
    abs_error: float
    rel_error: float
    bound: float
    per_mode_terms: list = field(default_factory=list)


def _mode_factor(X, mode, rank, interpolatory):
    A = unfold(X, mode)
    if not interpolatory:
        return ModeFactor(ORTHONORMAL, leading_left_singular_vectors(A, rank))
    try:
        sel = interpolative_select(A, rank)
    except RankDeficiencyError as exc:
        raise RankDeficiencyError(f"mode {mode}: {exc}", step=exc.step, mode=mode) from exc
    return ModeFactor(INTERPOLATORY, sel.C, sel.indices)


def core_for_factors(X, factors):
    """Optimal core ``X x_j pinv(C_j) / U_j^T`` for fixed factors."""
    return multi_mode_product(X, [(f.projector_factor(), m) for m, f in enumerate(factors)])


def hybrid(X, ranks, fiber_modes=(0,)):
    """Hybrid Tucker approximation keeping original fibers in ``fiber_modes``.

    Parameters
    ----------
    X : array_like of shape (n_1, ..., n_d)
    ranks : int or sequence of int
        Target multilinear rank; a scalar is used for every mode.
    fiber_modes : iterable of int or "all"
        0-based modes whose factor is built from actual fibers of ``X``.

    Returns
    -------
    TuckerFactorization
    """
    X = check_tensor(X)
    ranks = check_ranks(ranks, X.shape)
    fiber_modes = set(check_fiber_modes(fiber_modes, X.ndim))
    factors = [_mode_factor(X, m, r, m in fiber_modes) for m, r in enumerate(ranks)]
    return TuckerFactorization(core=core_for_factors(X, factors), factors=factors,
                               source_shape=X.shape)


def t_hosvd(X, ranks):
    """Truncated HOSVD: orthonormal factors in every mode."""
    return hybrid(X, ranks, ())


def hoid(X, ranks):
    """Higher-order interpolatory decomposition: fiber factors in every mode."""
    return hybrid(X, ranks, "all")


def reconstruct(F):
    return multi_mode_product(F.core, [(f.matrix, m) for m, f in enumerate(F.factors)])


def error_report(X, F, rtol=None):
    """Measured error of ``F`` against ``X`` plus the matching squared-error bound."""
    X = check_tensor(X)
    if tuple(X.shape) != tuple(F.source_shape):
        raise ShapeError(f"tensor shape {X.shape} does not match factorization "
                         f"{F.source_shape}")
    abs_error = frobenius_norm(X - reconstruct(F))
    norm = frobenius_norm(X)
    rel_error = abs_error / norm if norm > 0 else 0.0
    bd = bounds.hybrid_bound(X, F.ranks, F.fiber_modes, rtol=rtol)
    return ErrorReport(abs_error=abs_error, rel_error=rel_error, bound=bd.total,
                       per_mode_terms=[t.value for t in bd.terms])


# Matrix specialisations.

def _check_k(A, k):
    if not 1 <= k <= min(A.shape):
        raise RankError(f"rank {k} outside [1, {min(A.shape)}] for {A.shape} matrix")


def _select_columns(A, k):
    try:
        return interpolative_select(A, k).C
    except RankDeficiencyError as exc:
        raise RankDeficiencyError(str(exc), step=exc.step) from exc


def matrix_hybrid_cols(A, k):
    """Column-preserving hybrid ``A ~ C S V^T``.

    Returns ``(C, S, V, approx)`` with ``C`` the pivoted-QR columns, ``V``
    the leading right singular vectors and ``S = pinv(C) A V``.
    """
    A = check_matrix(A)
    _check_k(A, k)
    C = _select_columns(A, k)
    V = svd(A).right_vectors[:, :k]
    S = pseudoinverse(C) @ A @ V
    return C, S, V, C @ S @ V.T


def matrix_hybrid_rows(A, k):
    """Row-preserving hybrid ``A ~ U S R`` with ``R`` made of actual rows of ``A``."""
    A = check_matrix(A)
    _check_k(A, k)
    R = _select_columns(A.T, k).T
    U = svd(A).left_vectors[:, :k]
    S = U.T @ A @ pseudoinverse(R)
    return U, S, R, U @ S @ R


def matrix_cx(A, k):
    A = check_matrix(A)
    _check_k(A, k)
    C = _select_columns(A, k)
    return C @ (pseudoinverse(C) @ A)


def matrix_cur(A, k):
    """``C U R`` with columns and rows picked by pivoted QR and ``U = pinv(C) A pinv(R)``."""
    A = check_matrix(A)
    _check_k(A, k)
    C = _select_columns(A, k)
    R = _select_columns(A.T, k).T
    U = pseudoinverse(C) @ A @ pseudoinverse(R)
    return C @ U @ R


def matrix_tsvd(A, k):
    A = check_matrix(A)
    _check_k(A, k)
    s = svd(A)
    return (s.left_vectors[:, :k] * s.values[:k]) @ s.right_vectors[:, :k].T
