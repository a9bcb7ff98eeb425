"""Input validation helpers shared by the functional API and the estimators."""
from collections.abc import Iterable

import numpy as np

from .exceptions import InvalidModeError, NumericInputError, RankError, ShapeError


def check_tensor(X, min_order=1, name="X"):
    """Return ``X`` as a float64 ndarray, rejecting empty or non-finite input."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim < min_order:
        raise ShapeError(f"{name} must have order >= {min_order}, got {X.ndim}")
    if X.size == 0:
        raise ShapeError(f"{name} has an empty dimension: shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise NumericInputError(f"{name} contains non-finite entries")
    return X


def check_matrix(A, name="A"):
    A = check_tensor(A, min_order=2, name=name)
    if A.ndim != 2:
        raise ShapeError(f"{name} must be a matrix, got order {A.ndim}")
    return A


def check_mode(mode, order):
    if isinstance(mode, bool) or not isinstance(mode, (int, np.integer)):
        raise InvalidModeError(f"mode must be an integer, got {mode!r}")
    if not 0 <= mode < order:
        raise InvalidModeError(f"mode {mode} out of range for order-{order} tensor")
    return int(mode)


def check_ranks(ranks, shape):
    """Normalise ``ranks`` to a tuple matching ``shape``.

    A scalar broadcasts to every mode. Each rank must satisfy ``1 <= r <= n``
    and may not exceed the column count of the mode unfolding.
    """
    shape = tuple(shape)
    if isinstance(ranks, (int, np.integer)) and not isinstance(ranks, bool):
        ranks = (int(ranks),) * len(shape)
    ranks = tuple(int(r) for r in ranks)
    if len(ranks) != len(shape):
        raise RankError(f"got {len(ranks)} ranks for an order-{len(shape)} tensor")
    total = int(np.prod(shape, dtype=np.int64))
    for mode, (r, n) in enumerate(zip(ranks, shape)):
        limit = min(n, total // n)
        if not 1 <= r <= limit:
            raise RankError(f"rank {r} for mode {mode} outside [1, {limit}]")
    return ranks


def check_fiber_modes(fiber_modes, order):
    """Normalise a set of modes; the string ``"all"`` selects every mode."""
    if isinstance(fiber_modes, str):
        if fiber_modes != "all":
            raise InvalidModeError(f"unknown fiber mode spec {fiber_modes!r}")
        return tuple(range(order))
    if fiber_modes is None:
        return ()
    if not isinstance(fiber_modes, Iterable):
        fiber_modes = (fiber_modes,)
    modes = [check_mode(m, order) for m in fiber_modes]
    if len(set(modes)) != len(modes):
        raise InvalidModeError(f"duplicate fiber modes in {list(fiber_modes)}")
    return tuple(sorted(modes))
