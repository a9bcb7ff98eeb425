import numpy as np
import pytest

ACCEPTANCE_LINES = []


def random_orthonormal(rng, n, r):
    Q, _ = np.linalg.qr(rng.standard_normal((n, r)))
    return Q


def exact_rank_tensor(rng, shape, ranks):
    """Random core times random orthonormal factors: multilinear rank exactly ``ranks``."""
    X = rng.standard_normal(ranks)
    for mode, (n, r) in enumerate(zip(shape, ranks)):
        U = random_orthonormal(rng, n, r)
        X = np.moveaxis(np.tensordot(U, X, axes=(1, mode)), 0, mode)
    return X


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def x123():
    """2x2x2 tensor with x[i1, i2, i3] = i1 + 2 (i2 - 1) + 4 (i3 - 1), 1-based."""
    X = np.empty((2, 2, 2))
    for i1 in range(1, 3):
        for i2 in range(1, 3):
            for i3 in range(1, 3):
                X[i1 - 1, i2 - 1, i3 - 1] = i1 + 2 * (i2 - 1) + 4 * (i3 - 1)
    return X


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
