from dataclasses import dataclass
from numbers import Number
from typing import Optional

import numpy as np
import scipy.linalg
import scipy.signal

from app_config import logging
from cqt.exceptions import ToleranceError
from cqt.symbol import LaurentSymbol, MACHINE_EPS

logger = logging.getLogger(__name__)

# noise level of a factor product relative to ||F|| ||G||, below which singular values are cancellation residue
_CANCELLATION_FLOOR = 16 * MACHINE_EPS


@dataclass(frozen=True, eq=False)
class Correction:
    """
    Semi-infinite correction E = F G^T whose support is the leading f x g block.
    F is f x k, G is g x k. The zero correction always has k = 0 and empty factors.
    """
    F: np.ndarray
    G: np.ndarray

    def __post_init__(self):
        F = np.asarray(self.F)
        G = np.asarray(self.G)
        if F.ndim != 2 or G.ndim != 2:
            raise ValueError(f"Correction factors must be 2-d, got shapes {F.shape} and {G.shape}")
        if F.shape[1] != G.shape[1]:
            raise ValueError(f"Correction factors must have the same number of columns, got {F.shape[1]} and {G.shape[1]}")

        dtype = np.result_type(F.dtype, G.dtype, np.float64)
        if F.shape[1] == 0 or F.shape[0] == 0 or G.shape[0] == 0:
            F = np.zeros((0, 0), dtype=dtype)
            G = np.zeros((0, 0), dtype=dtype)
        else:
            F = F.astype(dtype)
            G = G.astype(dtype)
        F.flags.writeable = False
        G.flags.writeable = False
        object.__setattr__(self, 'F', F)
        object.__setattr__(self, 'G', G)

    @classmethod
    def zero(cls) -> "Correction":
        return cls(np.zeros((0, 0)), np.zeros((0, 0)))

    @classmethod
    def from_dense(cls, E: np.ndarray, eps: float = 0.0) -> "Correction":
        E = np.atleast_2d(np.asarray(E))
        if E.size == 0 or not np.any(E):
            return cls.zero()
        U, s, Vh = scipy.linalg.svd(E, full_matrices=False)
        rank = int(np.sum(s > eps * s[0]))
        root = np.sqrt(s[:rank])
        F = U[:, :rank] * root
        G = Vh[:rank].T * root
        return cls(F[:nonzero_rows(F)], G[:nonzero_rows(G)])

    @property
    def rows(self) -> int:
        return self.F.shape[0]

    @property
    def cols(self) -> int:
        return self.G.shape[0]

    @property
    def rank(self) -> int:
        return self.F.shape[1]

    @property
    def dtype(self):
        return self.F.dtype

    def is_zero(self) -> bool:
        return self.rank == 0

    def to_dense(self, rows: Optional[int] = None, cols: Optional[int] = None) -> np.ndarray:
        rows = self.rows if rows is None else rows
        cols = self.cols if cols is None else cols
        dense = np.zeros((rows, cols), dtype=self.dtype)
        if self.is_zero():
            return dense
        r, c = min(rows, self.rows), min(cols, self.cols)
        dense[:r, :c] = self.F[:r] @ self.G[:c].T
        return dense

    def scale(self, alpha: Number) -> "Correction":
        if self.is_zero() or alpha == 0:
            return Correction.zero()
        return Correction(self.F * alpha, self.G)

    def negate(self) -> "Correction":
        return self.scale(-1)


def nonzero_rows(M: np.ndarray, eps: float = 0.0) -> int:
    """
    Number of leading rows of M up to the last one whose norm exceeds eps times the largest row norm.
    """
    if M.size == 0:
        return 0
    row_norms = np.linalg.norm(M, axis=1)
    significant = np.nonzero(row_norms > eps * np.max(row_norms))[0]
    return int(significant[-1]) + 1 if len(significant) else 0


def _pad_rows(M: np.ndarray, rows: int) -> np.ndarray:
    if M.shape[0] >= rows:
        return M
    return np.vstack([M, np.zeros((rows - M.shape[0], M.shape[1]), dtype=M.dtype)])


def f_norm(E: Correction) -> float:
    if E.is_zero():
        return 0.0
    return float(np.sum(np.abs(E.F @ E.G.T)))


def concat(E1: Correction, E2: Correction) -> Correction:
    if E1.is_zero():
        return E2
    if E2.is_zero():
        return E1
    rows = max(E1.rows, E2.rows)
    cols = max(E1.cols, E2.cols)
    F = np.hstack([_pad_rows(E1.F, rows), _pad_rows(E2.F, rows)])
    G = np.hstack([_pad_rows(E1.G, cols), _pad_rows(E2.G, cols)])
    return Correction(F, G)


def _reduced_qr(M: np.ndarray, eps: float):
    # pivoted QR without the negligible rows of R; R comes back with the permutation undone
    Q, R, permutation = scipy.linalg.qr(M, mode='economic', pivoting=True)
    row_norms = np.linalg.norm(R, axis=1)
    if len(row_norms) == 0 or np.max(row_norms) == 0:
        return Q[:, :0], np.zeros((0, M.shape[1]), dtype=R.dtype)
    keep = row_norms >= eps * np.max(row_norms)
    R_unpermuted = np.zeros((int(np.sum(keep)), M.shape[1]), dtype=R.dtype)
    R_unpermuted[:, permutation] = R[keep]
    return Q[:, keep], R_unpermuted


def compress(E: Correction, eps: float) -> Correction:
    """
    Reduces the number of columns of the factors of E.

    Pivoted QR of F and G, negligible rows of both R factors dropped, SVD of the small middle matrix
    R_f P_f P_g^T R_g^T, singular values below eps * sigma_1 discarded. Returns
    F~ = Q_f U S^(1/2), G~ = Q_g V S^(1/2) with trailing negligible rows trimmed.
    """
    if not 0 <= eps < 1:
        raise ToleranceError(eps)
    if E.is_zero():
        return E

    Q_f, R_f = _reduced_qr(E.F, eps)
    Q_g, R_g = _reduced_qr(E.G, eps)
    if R_f.shape[0] == 0 or R_g.shape[0] == 0:
        return Correction.zero()

    middle = R_f @ R_g.T
    U, s, Vh = scipy.linalg.svd(middle, full_matrices=False)
    if len(s) == 0 or s[0] == 0:
        return Correction.zero()

    factor_scale = np.linalg.norm(R_f, 2) * np.linalg.norm(R_g, 2)
    threshold = max(eps * s[0], _CANCELLATION_FLOOR * factor_scale)
    rank = int(np.sum(s > threshold))
    if rank == 0:
        return Correction.zero()

    root = np.sqrt(s[:rank])
    F = Q_f @ (U[:, :rank] * root)
    G = Q_g @ (Vh[:rank].T * root)
    F = F[:nonzero_rows(F, eps)]
    G = G[:nonzero_rows(G, eps)]
    if rank != E.rank:
        logger.debug(f"Compressed correction rank {E.rank} -> {rank} ({E.rows}x{E.cols} -> {F.shape[0]}x{G.shape[0]})")
    return Correction(F, G)


def toeplitz_apply(a: LaurentSymbol, M: np.ndarray, rows_out: int) -> np.ndarray:
    """
    Leading `rows_out` rows of T(a) [M; 0]. Exact when rows_out >= rows(M) + n_minus(a).

    (T(a) M)_i = sum_k a_{k-i} M_k is a convolution of M with the reversed coefficient vector.
    """
    M = np.atleast_2d(np.asarray(M))
    dtype = np.result_type(a.dtype, M.dtype)
    result = np.zeros((rows_out, M.shape[1]), dtype=dtype)
    if M.shape[1] == 0 or M.shape[0] == 0 or rows_out == 0:
        return result

    reversed_coefficients = a.dense()[::-1]
    convolution = scipy.signal.convolve(reversed_coefficients[:, np.newaxis], M, method='direct')
    window = convolution[a.n_plus: a.n_plus + rows_out]
    result[:window.shape[0]] = window
    return result
