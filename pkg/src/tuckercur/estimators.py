"""scikit-learn style wrappers around the Tucker decompositions.

``fit`` computes the factors and core for one tensor; ``transform`` projects
a tensor of the same shape onto the fitted factors (returning its optimal
core) and ``inverse_transform`` maps a core back to full size.
"""
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import decomp
from .exceptions import ShapeError
from .tensor_core import multi_mode_product
from .validation import check_tensor


class HybridTucker(TransformerMixin, BaseEstimator):
    """Tucker approximation with original fibers kept in ``fiber_modes``.

    Parameters
    ----------
    ranks : int or tuple of int, default=1
        Target multilinear rank; a scalar applies to every mode.
    fiber_modes : tuple of int or "all", default=(0,)
        0-based modes whose factor consists of actual fibers of the input.
        ``()`` gives T-HOSVD and ``"all"`` gives HOID.

    Attributes
    ----------
    factorization_ : TuckerFactorization
    core_ : ndarray
    factors_ : list of ndarray
    fiber_indices_ : dict
        Mode -> selected column indices of that mode's unfolding.
    """

    def __init__(self, ranks=1, fiber_modes=(0,)):
        self.ranks = ranks
        self.fiber_modes = fiber_modes

    def _fiber_modes(self):
        return self.fiber_modes

    def fit(self, X, y=None):
        X = check_tensor(X)
        F = decomp.hybrid(X, self.ranks, self._fiber_modes())
        self.factorization_ = F
        self.core_ = F.core
        self.factors_ = [f.matrix for f in F.factors]
        self.fiber_indices_ = {m: f.indices for m, f in enumerate(F.factors)
                               if f.kind == decomp.INTERPOLATORY}
        self.ranks_ = F.ranks
        self.source_shape_ = F.source_shape
        return self

    def _check_shape(self, X):
        if X.shape != self.source_shape_:
            raise ShapeError(f"expected shape {self.source_shape_}, got {X.shape}")

    def transform(self, X):
        check_is_fitted(self, "factorization_")
        X = check_tensor(X)
        self._check_shape(X)
        return decomp.core_for_factors(X, self.factorization_.factors)

    def inverse_transform(self, core):
        check_is_fitted(self, "factorization_")
        core = np.asarray(core, dtype=np.float64)
        if core.shape != self.ranks_:
            raise ShapeError(f"expected core of shape {self.ranks_}, got {core.shape}")
        return multi_mode_product(core, [(U, m) for m, U in enumerate(self.factors_)])

    def error_report(self, X):
        check_is_fitted(self, "factorization_")
        X = check_tensor(X)
        self._check_shape(X)
        return decomp.error_report(X, decomp.TuckerFactorization(
            self.transform(X), self.factorization_.factors, self.source_shape_))

    def score(self, X, y=None):
        """Negative relative Frobenius error of the projection of ``X``."""
        return -self.error_report(X).rel_error


class THOSVD(HybridTucker):
    """Truncated HOSVD (orthonormal factors in every mode)."""

    def __init__(self, ranks=1):
        self.ranks = ranks

    def _fiber_modes(self):
        return ()


class HOID(HybridTucker):
    """Higher-order interpolatory decomposition (fiber factors in every mode)."""

    def __init__(self, ranks=1):
        self.ranks = ranks

    def _fiber_modes(self):
        return "all"
