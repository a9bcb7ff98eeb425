import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tuckercur.exceptions import InvalidModeError, ShapeError
from tuckercur.tensor_core import (fold, frobenius_norm, kron_unfolding, mode_product,
                                   multi_mode_product, unfold)

shapes = st.lists(st.integers(1, 4), min_size=1, max_size=6).map(tuple)


def unfold_by_enumeration(X, mode):
    """Place every entry by the explicit column formula (earliest remaining mode fastest)."""
    shape = X.shape
    others = [k for k in range(X.ndim) if k != mode]
    M = np.empty((shape[mode], X.size // shape[mode]))
    for idx in np.ndindex(*shape):
        col, stride = 0, 1
        for k in others:
            col += idx[k] * stride
            stride *= shape[k]
        M[idx[mode], col] = X[idx]
    return M


def test_unfold_examples(x123):
    assert np.array_equal(unfold(x123, 0), [[1, 3, 5, 7], [2, 4, 6, 8]])
    assert np.array_equal(unfold(x123, 1), [[1, 2, 5, 6], [3, 4, 7, 8]])
    v = np.array([4.0, 5.0, 6.0])
    assert np.array_equal(unfold(v, 0), v[:, None])


def test_unfold_matches_enumeration(rng):
    X = rng.standard_normal((3, 2, 4, 2))
    for mode in range(4):
        assert np.array_equal(unfold(X, mode), unfold_by_enumeration(X, mode))


def test_unfold_bad_mode(x123):
    with pytest.raises(InvalidModeError):
        unfold(x123, 3)
    with pytest.raises(InvalidModeError):
        unfold(x123, -1)


def test_fold_examples(x123):
    assert np.array_equal(fold(unfold(x123, 1), 1, (2, 2, 2)), x123)
    assert np.array_equal(fold(np.array([[1.0], [2.0]]), 0, (2,)), [1.0, 2.0])
    assert np.array_equal(fold(np.array([[1, 3, 5, 7], [2, 4, 6, 8]]), 0, (2, 2, 2)), x123)


def test_fold_shape_mismatch():
    with pytest.raises(ShapeError):
        fold(np.zeros((2, 3)), 0, (2, 2, 2))


@settings(max_examples=60, deadline=None)
@given(shapes, st.data())
def test_fold_unfold_roundtrip(shape, data):
    X = np.arange(np.prod(shape), dtype=float).reshape(shape)
    mode = data.draw(st.integers(0, len(shape) - 1))
    assert np.array_equal(fold(unfold(X, mode), mode, shape), X)


def test_mode_product_examples(x123):
    assert np.array_equal(mode_product(x123, np.eye(2), 1), x123)
    Y = mode_product(x123, np.array([[1.0, 1.0]]), 0)
    assert Y.shape == (1, 2, 2)
    assert np.array_equal(unfold(Y, 0), [[3, 7, 11, 15]])


def test_mode_product_shape_error(x123):
    with pytest.raises(ShapeError):
        mode_product(x123, np.ones((2, 3)), 0)


@settings(max_examples=40, deadline=None)
@given(shapes, st.data())
def test_mode_product_unfolding_identity(shape, data):
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    X = rng.standard_normal(shape)
    mode = data.draw(st.integers(0, len(shape) - 1))
    U = rng.standard_normal((3, shape[mode]))
    lhs = unfold(mode_product(X, U, mode), mode)
    rhs = U @ unfold(X, mode)
    assert np.linalg.norm(lhs - rhs) <= 1e-13 * max(np.linalg.norm(rhs), 1e-300)


def test_associativity(rng):
    X = rng.standard_normal((3, 4, 5))
    M = rng.standard_normal((6, 4))
    N = rng.standard_normal((2, 6))
    lhs = mode_product(mode_product(X, M, 1), N, 1)
    rhs = mode_product(X, N @ M, 1)
    assert np.linalg.norm(lhs - rhs) <= 1e-12 * np.linalg.norm(rhs)
    P = rng.standard_normal((2, 3))
    a = mode_product(mode_product(X, M, 1), P, 0)
    b = mode_product(mode_product(X, P, 0), M, 1)
    assert np.linalg.norm(a - b) <= 1e-12 * np.linalg.norm(a)


def test_multi_mode_product(rng):
    X = rng.standard_normal((3, 3, 3))
    assert np.array_equal(multi_mode_product(X, []), X)
    assert np.allclose(multi_mode_product(X, [(np.eye(3), m) for m in range(3)]), X,
                       rtol=0, atol=1e-15)
    Ms = [rng.standard_normal((2, 3)) for _ in range(3)]
    order_123 = X
    for m in (0, 1, 2):
        order_123 = mode_product(order_123, Ms[m], m)
    order_312 = X
    for m in (2, 0, 1):
        order_312 = mode_product(order_312, Ms[m], m)
    assert np.linalg.norm(order_123 - order_312) <= 1e-12 * np.linalg.norm(order_123)
    Y = multi_mode_product(X, [(Ms[2], 2), (Ms[0], 0), (Ms[1], 1)])
    assert np.linalg.norm(Y - order_123) <= 1e-12 * np.linalg.norm(Y)


def test_multi_mode_product_errors(rng):
    X = rng.standard_normal((3, 3))
    with pytest.raises(InvalidModeError):
        multi_mode_product(X, [(np.eye(3), 0), (np.eye(3), 0)])
    with pytest.raises(ShapeError):
        multi_mode_product(X, [(np.eye(2), 1)])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=4).map(tuple), st.data())
def test_kronecker_identity(shape, data):
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    X = rng.standard_normal(shape)
    Ms = [rng.standard_normal((data.draw(st.integers(1, 4)), n)) for n in shape]
    Y = multi_mode_product(X, [(M, m) for m, M in enumerate(Ms)])
    for mode in range(len(shape)):
        K = kron_unfolding(X, Ms, mode)
        assert np.linalg.norm(unfold(Y, mode) - K) <= 1e-10 * max(np.linalg.norm(K), 1e-300)


def test_frobenius_examples(x123):
    assert frobenius_norm(np.ones((2, 3, 4))) == pytest.approx(np.sqrt(24), rel=1e-15)
    assert frobenius_norm(np.zeros((2, 2))) == 0.0
    assert frobenius_norm(x123) == pytest.approx(np.sqrt(204), rel=1e-15)


@settings(max_examples=40, deadline=None)
@given(shapes, st.data())
def test_frobenius_unfolding_invariance(shape, data):
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    X = rng.standard_normal(shape)
    nrm = frobenius_norm(X)
    for mode in range(len(shape)):
        assert abs(np.linalg.norm(unfold(X, mode)) - nrm) <= 1e-14 * nrm
