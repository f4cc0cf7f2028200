import numpy as np

from cqt.symbol import LaurentSymbol, sym_mul, evaluate_fourier, symbol_values_to_coefficients
from cqt.correction import Correction
from cqt.matrix import CqtMatrix


def random_symbol(rng, n_minus: int, n_plus: int, scale: float = 1.0) -> LaurentSymbol:
    dense = rng.standard_normal(n_minus + n_plus + 1) * scale
    return LaurentSymbol.from_dense(dense, n_minus)


def random_correction(rng, rows: int, cols: int, rank: int, scale: float = 1.0) -> Correction:
    F = rng.standard_normal((rows, rank)) * scale
    G = rng.standard_normal((cols, rank))
    return Correction(F, G)


def random_cqt(rng, max_degree: int = 4, max_support: int = 16, max_rank: int = 4) -> CqtMatrix:
    symbol = random_symbol(rng, int(rng.integers(0, max_degree + 1)), int(rng.integers(0, max_degree + 1)))
    rank = int(rng.integers(0, max_rank + 1))
    rows = int(rng.integers(1, max_support + 1))
    cols = int(rng.integers(1, max_support + 1))
    return CqtMatrix(symbol, random_correction(rng, rows, cols, rank))


def dominant_cqt(rng, max_degree: int = 3, max_support: int = 8, max_rank: int = 3) -> CqtMatrix:
    """
    T(a) + E with |a_0| > sum of the other |a_i| by 2 and ||E||_inf <= 0.5, so that A is invertible.
    """
    n_minus, n_plus = int(rng.integers(0, max_degree + 1)), int(rng.integers(0, max_degree + 1))
    dense = rng.standard_normal(n_minus + n_plus + 1)
    dense[n_minus] = np.sign(rng.standard_normal()) * (np.sum(np.abs(dense)) - abs(dense[n_minus]) + 2)
    symbol = LaurentSymbol.from_dense(dense, n_minus)

    E = random_correction(rng, int(rng.integers(1, max_support + 1)), int(rng.integers(1, max_support + 1)),
                          int(rng.integers(1, max_rank + 1)))
    dense_E = E.to_dense()
    row_sum = np.max(np.sum(np.abs(dense_E), axis=1))
    return CqtMatrix(symbol, E.scale(0.5 / row_sum))


def winding_free_symbol(rng, inner: int, outer: int) -> LaurentSymbol:
    """
    Product of factors (1 - s/z) with |s| <= 0.8 and (1 - r z) with |r| <= 0.8, times a constant:
    every root lies in |z| <= 0.8 or |z| >= 1.25.
    """
    symbol = LaurentSymbol.constant(float(rng.uniform(0.5, 2.0)))
    for _ in range(inner):
        s = rng.uniform(-0.8, 0.8)
        symbol = sym_mul(symbol, LaurentSymbol.from_coefficients({0: 1.0, -1: -s}))
    for _ in range(outer):
        r = rng.uniform(-0.8, 0.8)
        symbol = sym_mul(symbol, LaurentSymbol.from_coefficients({0: 1.0, 1: -r}))
    return symbol


def laurent_inverse(a: LaurentSymbol, N: int = 1024) -> LaurentSymbol:
    # 1/a(z) interpolated on N points; the tails of symbols from winding_free_symbol decay like 0.8^k
    return symbol_values_to_coefficients(1 / evaluate_fourier(a, N), N // 2 - 1, N // 2 - 1, real=a.is_real)


def dense_toeplitz(a: LaurentSymbol, rows: int, cols: int = None) -> np.ndarray:
    cols = rows if cols is None else cols
    T = np.zeros((rows, cols), dtype=a.dtype)
    for i in range(rows):
        for j in range(cols):
            T[i, j] = a.coefficient(j - i)
    return T


def dense_hankel(b: LaurentSymbol, n: int) -> np.ndarray:
    # h_ij = b_{i+j-1} with 1-based indices
    H = np.zeros((n, n), dtype=b.dtype)
    for i in range(n):
        for j in range(n):
            H[i, j] = b.coefficient(i + j + 1)
    return H


def dense_hankel_minus(a: LaurentSymbol, n: int) -> np.ndarray:
    # H(a^-) with a^-(z) read as a series in 1/z: entries a_{-(i+j-1)}
    H = np.zeros((n, n), dtype=a.dtype)
    for i in range(n):
        for j in range(n):
            H[i, j] = a.coefficient(-(i + j + 1))
    return H


def dense_product_section(A: CqtMatrix, B: CqtMatrix, m: int, N: int) -> np.ndarray:
    return (A.section(N) @ B.section(N))[:m, :m]
