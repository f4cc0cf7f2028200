from dataclasses import dataclass, field
from numbers import Number
import warnings

import numpy as np
import scipy.linalg

from app_config import logging, settings
from cqt.exceptions import SingularCorrectionError
from cqt.symbol import LaurentSymbol, w_norm, w1_norm, sym_add, sym_mul, sym_scale, sym_reverse, sym_truncate
from cqt.correction import Correction, f_norm, concat, compress, toeplitz_apply
from cqt.factorization import wiener_hopf, reciprocal_plus, reciprocal_minus

logger = logging.getLogger(__name__)

# rows added below the correction and band when estimating the infinity norm
_INF_NORM_EXTRA_ROWS = 32


@dataclass(frozen=True, eq=False)
class CqtMatrix:
    """
    Semi-infinite matrix T(a) + E with a finitely supported symbol a and a correction E = F G^T.
    `tol` is the local truncation/compression tolerance applied to every result computed from it.
    """
    symbol: LaurentSymbol
    corr: Correction = field(default_factory=Correction.zero)
    tol: float = settings.CQT_TOL

    @classmethod
    def identity(cls, tol: float = settings.CQT_TOL) -> "CqtMatrix":
        return cls(LaurentSymbol.constant(1.0), Correction.zero(), tol)

    @classmethod
    def toeplitz(cls, symbol: LaurentSymbol, tol: float = settings.CQT_TOL) -> "CqtMatrix":
        return cls(symbol, Correction.zero(), tol)

    @classmethod
    def from_parts(cls, symbol: LaurentSymbol, F: np.ndarray, G: np.ndarray, tol: float = settings.CQT_TOL) -> "CqtMatrix":
        return cls(symbol, Correction(F, G), tol)

    def __add__(self, other: "CqtMatrix") -> "CqtMatrix":
        return cqt_add(self, other)

    def __sub__(self, other: "CqtMatrix") -> "CqtMatrix":
        return cqt_sub(self, other)

    def __neg__(self) -> "CqtMatrix":
        return cqt_neg(self)

    def __matmul__(self, other: "CqtMatrix") -> "CqtMatrix":
        return cqt_mul(self, other)

    def __mul__(self, alpha: Number) -> "CqtMatrix":
        if not isinstance(alpha, Number):
            return NotImplemented
        return cqt_scale(self, alpha)

    __rmul__ = __mul__

    def inv(self) -> "CqtMatrix":
        return cqt_inv(self)

    def section(self, n: int) -> np.ndarray:
        return finite_section(self, n)

    def __repr__(self):
        return f"CqtMatrix(band={self.symbol.band}, corr={self.corr.rows}x{self.corr.cols} rank {self.corr.rank}, tol={self.tol:.1e})"


@dataclass(frozen=True)
class MatrixStructure:
    band: int
    rows: int
    columns: int
    rank: int


def structure(A: CqtMatrix) -> MatrixStructure:
    return MatrixStructure(band=A.symbol.band, rows=A.corr.rows, columns=A.corr.cols, rank=A.corr.rank)


def qt_norm(A: CqtMatrix) -> float:
    return w_norm(A.symbol) + f_norm(A.corr)


def cqt_norm(A: CqtMatrix) -> float:
    return w1_norm(A.symbol) + f_norm(A.corr)


def hankel_product_factors(am: LaurentSymbol, bp: LaurentSymbol, eps: float = 0.0) -> Correction:
    """
    Factors F G^T = H(a^-) H(b^+), where only the negative part of `am` and the positive part of `bp`
    are read (h_ij = b_{i+j-1}, constant terms never enter a Hankel matrix).
    """
    inner = min(am.n_minus, bp.n_plus)
    if inner == 0:
        return Correction.zero()
    H_minus = scipy.linalg.hankel(am.neg[1:])
    H_plus = scipy.linalg.hankel(bp.pos[1:])
    hankel_factors = Correction(H_minus[:, :inner], H_plus[:, :inner])
    if eps > 0:
        return compress(hankel_factors, eps)
    return hankel_factors


def cqt_add(A: CqtMatrix, B: CqtMatrix) -> CqtMatrix:
    tol = max(A.tol, B.tol)
    symbol = sym_truncate(sym_add(A.symbol, B.symbol), tol)
    corr = compress(concat(A.corr, B.corr), tol)
    return CqtMatrix(symbol, corr, tol)


def cqt_scale(A: CqtMatrix, alpha: Number) -> CqtMatrix:
    return CqtMatrix(sym_scale(A.symbol, alpha), A.corr.scale(alpha), A.tol)


def cqt_neg(A: CqtMatrix) -> CqtMatrix:
    return cqt_scale(A, -1)


def cqt_sub(A: CqtMatrix, B: CqtMatrix) -> CqtMatrix:
    return cqt_add(A, cqt_neg(B))


def cqt_mul(A: CqtMatrix, B: CqtMatrix) -> CqtMatrix:
    """
    (T(a) + E_a)(T(b) + E_b) = T(ab) + E_c with
        E_c = -H(a^-)H(b^+) + T(a)E_b + E_a T(b) + E_a E_b
            = [-F, T(a)F_b, F_a] [G, G_b, T(b)^T G_a + G_b (F_b^T G_a)]^T
    """
    a, b = A.symbol, B.symbol
    tol = max(A.tol, B.tol)
    symbol = sym_truncate(sym_mul(a, b), tol)

    hankel = hankel_product_factors(a, b, tol)
    corr = hankel.negate()

    if not B.corr.is_zero():
        F_b, G_b = B.corr.F, B.corr.G
        corr = concat(corr, Correction(toeplitz_apply(a, F_b, F_b.shape[0] + a.n_minus), G_b))

    if not A.corr.is_zero():
        F_a, G_a = A.corr.F, A.corr.G
        right = toeplitz_apply(sym_reverse(b), G_a, G_a.shape[0] + b.n_plus)
        if not B.corr.is_zero():
            F_b, G_b = B.corr.F, B.corr.G
            common = min(F_b.shape[0], G_a.shape[0])
            coupled = G_b @ (F_b[:common].T @ G_a[:common])
            rows = max(right.shape[0], coupled.shape[0])
            padded = np.zeros((rows, right.shape[1]), dtype=np.result_type(right, coupled))
            padded[:right.shape[0]] += right
            padded[:coupled.shape[0]] += coupled
            right = padded
        corr = concat(corr, Correction(F_a, right))

    return CqtMatrix(symbol, compress(corr, tol), tol)


def _capacitance_solve(Y: np.ndarray, F1: np.ndarray) -> np.ndarray:
    # F1 Y^-1
    scale = float(np.max(np.abs(Y)))
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', scipy.linalg.LinAlgWarning)
        lu, pivots = scipy.linalg.lu_factor(Y)
    pivot = float(np.min(np.abs(np.diag(lu))))
    if pivot <= 1e-12 * scale:
        raise SingularCorrectionError(pivot, scale)
    return scipy.linalg.lu_solve((lu, pivots), F1.T, trans=1).T


def cqt_inv(A: CqtMatrix) -> CqtMatrix:
    """
    Inverse of T(a) + F_a G_a^T:
      1. a = u l (canonical Wiener-Hopf factorization)
      2. u~ = 1/u, l~ = 1/l, so T(a)^-1 = T(l~) T(u~)
      3. T(l~) T(u~) = T(c) - H(l~^-) H(u~^+), c = l~ u~
      4. G_1 = T(l~)^T G_a, F_1 = T(u~) F_a
      5. Y = I + G_1^T F_1, F_2 = F_1 Y^-1, F_3 = T(l~) F_2, G_2 = T(u~)^T G_1
      6. correction [-H factors, -F_3] [H factors, G_2]^T
    """
    tol = A.tol
    factorization = wiener_hopf(A.symbol, tol)
    u_inv = reciprocal_plus(factorization.u, tol)
    l_inv = reciprocal_minus(factorization.l, tol)

    symbol = sym_truncate(sym_mul(l_inv, u_inv), tol)
    corr = hankel_product_factors(l_inv, u_inv, tol).negate()

    if not A.corr.is_zero():
        F_a, G_a = A.corr.F, A.corr.G
        F_1 = toeplitz_apply(u_inv, F_a, F_a.shape[0])
        G_1 = toeplitz_apply(sym_reverse(l_inv), G_a, G_a.shape[0])

        common = min(F_1.shape[0], G_1.shape[0])
        Y = np.eye(A.corr.rank) + G_1[:common].T @ F_1[:common]
        F_2 = _capacitance_solve(Y, F_1)

        F_3 = toeplitz_apply(l_inv, F_2, F_2.shape[0] + l_inv.n_minus)
        G_2 = toeplitz_apply(sym_reverse(u_inv), G_1, G_1.shape[0] + u_inv.n_plus)
        corr = concat(corr, Correction(-F_3, G_2))

    return CqtMatrix(symbol, compress(corr, tol), tol)


def finite_section(A: CqtMatrix, n: int) -> np.ndarray:
    if n < 1:
        raise ValueError(f"Section size must be at least 1, got {n}")
    dtype = np.result_type(A.symbol.dtype, A.corr.dtype)
    first_column = np.zeros(n, dtype=dtype)
    first_row = np.zeros(n, dtype=dtype)
    first_column[:min(n, A.symbol.n_minus + 1)] = A.symbol.neg[:n]
    first_row[:min(n, A.symbol.n_plus + 1)] = A.symbol.pos[:n]
    return scipy.linalg.toeplitz(first_column, first_row) + A.corr.to_dense(n, n)


def inf_norm_estimate(A: CqtMatrix) -> float:
    """
    Max row sum over the leading rows that the correction and the lower band can touch, compared with
    ||a||_W which is the row sum of every row further down.
    """
    rows = A.corr.rows + A.symbol.n_minus + _INF_NORM_EXTRA_ROWS
    size = rows + A.symbol.n_plus + A.corr.cols
    leading = finite_section(A, size)[:rows]
    return max(float(np.max(np.sum(np.abs(leading), axis=1))), w_norm(A.symbol))
