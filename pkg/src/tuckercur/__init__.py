"""Interpolatory (CUR-type) low multilinear-rank approximation of dense tensors."""
from .bounds import cur_bound, hybrid_bound, matrix_hybrid_bound, p_factor, svd_error_floor
from .decomp import (ErrorReport, ModeFactor, TuckerFactorization, error_report, hoid, hybrid,
                     matrix_cur, matrix_cx, matrix_hybrid_cols, matrix_hybrid_rows, matrix_tsvd,
                     reconstruct, t_hosvd)
from .estimators import HOID, THOSVD, HybridTucker
from .exceptions import (InvalidModeError, NumericInputError, RankDeficiencyError, RankError,
                         ShapeError, TuckerCurError)
from .linalg import interpolative_select, leading_left_singular_vectors, pqr, pseudoinverse, svd
from .tensor_core import fold, frobenius_norm, mode_product, multi_mode_product, unfold

__version__ = "0.1.0"
