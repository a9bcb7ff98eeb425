"""Dense tensor algebra: unfolding, folding, mode products and norms.

Tensors are plain ``numpy.ndarray`` objects of dtype float64. Modes are
0-based axis indices. Entry ``(i_1, ..., i_d)`` of the mathematical tensor
(1-based) is ``X[i_1 - 1, ..., i_d - 1]``; its linear offset in the
serialised layout is first-index-fastest, i.e. ``X.ravel(order="F")``.

The mode-``m`` unfolding is the ``n_m x prod(n_k, k != m)`` matrix whose
columns are the mode-``m`` fibers, with the remaining indices ordered
earliest-mode-fastest (the Kolda-Bader convention). Every routine in the
package uses this single convention.
"""
import numpy as np

from .exceptions import InvalidModeError, ShapeError
from .validation import check_mode


def unfold(X, mode):
    """Mode-``mode`` matricization of ``X``.

    Parameters
    ----------
    X : ndarray of shape (n_1, ..., n_d)
    mode : int
        0-based mode index.

    Returns
    -------
    ndarray of shape (n_mode, prod of the other dimensions)
    """
    X = np.asarray(X)
    mode = check_mode(mode, X.ndim)
    return np.moveaxis(X, mode, 0).reshape((X.shape[mode], -1), order="F")


def fold(M, mode, shape):
    """Inverse of :func:`unfold`."""
    M = np.asarray(M)
    shape = tuple(int(n) for n in shape)
    mode = check_mode(mode, len(shape))
    rest = shape[:mode] + shape[mode + 1:]
    expected = (shape[mode], int(np.prod(rest, dtype=np.int64)))
    if M.ndim != 2 or M.shape != expected:
        raise ShapeError(f"cannot fold {M.shape} matrix into {shape} along mode {mode}; "
                         f"expected {expected}")
    return np.moveaxis(M.reshape((shape[mode],) + rest, order="F"), 0, mode)


def mode_product(X, U, mode):
    """Mode-``mode`` product ``X x_mode U``.

    Computed literally as ``fold(U @ unfold(X, mode))`` so that the unfolding
    identity holds bit-for-bit; the contraction order is whatever the BLAS
    GEMM uses for that single matrix product.
    """
    X = np.asarray(X, dtype=np.float64)
    U = np.asarray(U, dtype=np.float64)
    mode = check_mode(mode, X.ndim)
    if U.ndim != 2 or U.shape[1] != X.shape[mode]:
        raise ShapeError(f"factor of shape {U.shape} incompatible with mode {mode} "
                         f"of size {X.shape[mode]}")
    shape = X.shape[:mode] + (U.shape[0],) + X.shape[mode + 1:]
    return fold(U @ unfold(X, mode), mode, shape)


def multi_mode_product(X, factors):
    """Apply ``(matrix, mode)`` pairs to ``X``.

    Products are evaluated in ascending mode order regardless of the order
    in which ``factors`` is given, which keeps the result deterministic.
    Mathematically the order is irrelevant since products in distinct modes
    commute.
    """
    X = np.asarray(X, dtype=np.float64)
    factors = list(factors)
    modes = [check_mode(m, X.ndim) for _, m in factors]
    if len(set(modes)) != len(modes):
        raise InvalidModeError(f"duplicate modes in factor list: {modes}")
    for mode, (U, _) in sorted(zip(modes, factors), key=lambda t: t[0]):
        X = mode_product(X, U, mode)
    return X


def frobenius_norm(X):
    X = np.asarray(X, dtype=np.float64)
    return float(np.sqrt(np.sum(X * X)))


def kron_unfolding(X, matrices, mode):
    """Mode-``mode`` unfolding of ``X x_1 M_1 ... x_d M_d`` via Kronecker products.

    Evaluates ``M_mode @ X_(mode) @ kron(M_d, ..., M_{mode+1}, M_{mode-1}, ..., M_1).T``.
    Expensive; meant as an independent cross-check of :func:`multi_mode_product`
    on small inputs.
    """
    X = np.asarray(X, dtype=np.float64)
    mode = check_mode(mode, X.ndim)
    if len(matrices) != X.ndim:
        raise ShapeError("need exactly one matrix per mode")
    K = np.ones((1, 1))
    for k in reversed(range(X.ndim)):
        if k != mode:
            K = np.kron(K, matrices[k])
    return matrices[mode] @ unfold(X, mode) @ K.T
