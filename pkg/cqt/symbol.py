from dataclasses import dataclass
from numbers import Number
from typing import Optional, Union
import math

import numpy as np

from app_config import logging, settings
from cqt.exceptions import GridTooSmallError, SymbolVanishesError, FactorizationConvergenceError, ToleranceError

logger = logging.getLogger(__name__)

MACHINE_EPS = np.finfo(float).eps

# coefficients below this fraction of the symbol's w-norm are dropped from the ends
_CANONICAL_TRIM = 1e-3 * MACHINE_EPS


def _trim_trailing(values: np.ndarray, threshold: float) -> np.ndarray:
    last = len(values) - 1
    while last > 0 and abs(values[last]) <= threshold:
        last -= 1
    return values[:last + 1]


def next_power_of_two(n: int) -> int:
    return 1 << max(0, int(n - 1).bit_length())


@dataclass(frozen=True, eq=False)
class LaurentSymbol:
    """
    Finitely supported Laurent polynomial a(z) = sum_{i=-n_minus}^{n_plus} a_i z^i.

    Stored as two vectors sharing the constant coefficient:
        neg = (a_0, a_-1, ..., a_-n_minus)
        pos = (a_0, a_1, ..., a_n_plus)
    Trailing coefficients that are negligible relative to the w-norm are trimmed on construction.
    """
    neg: np.ndarray
    pos: np.ndarray

    def __post_init__(self):
        neg = np.atleast_1d(np.asarray(self.neg))
        pos = np.atleast_1d(np.asarray(self.pos))
        if neg.ndim != 1 or pos.ndim != 1 or len(neg) == 0 or len(pos) == 0:
            raise ValueError("neg and pos must be non-empty coefficient vectors")
        if neg[0] != pos[0]:
            raise ValueError(f"neg[0]={neg[0]} and pos[0]={pos[0]} must hold the same constant coefficient")

        dtype = np.result_type(neg.dtype, pos.dtype, np.float64)
        neg = neg.astype(dtype)
        pos = pos.astype(dtype)

        norm = np.sum(np.abs(neg)) + np.sum(np.abs(pos[1:]))
        threshold = _CANONICAL_TRIM * norm
        neg = _trim_trailing(neg, threshold)
        pos = _trim_trailing(pos, threshold)
        neg.flags.writeable = False
        pos.flags.writeable = False

        object.__setattr__(self, 'neg', neg)
        object.__setattr__(self, 'pos', pos)

    @classmethod
    def zero(cls) -> "LaurentSymbol":
        return cls(np.zeros(1), np.zeros(1))

    @classmethod
    def constant(cls, value: Number) -> "LaurentSymbol":
        return cls(np.array([value]), np.array([value]))

    @classmethod
    def monomial(cls, power: int, value: Number = 1.0) -> "LaurentSymbol":
        return cls.from_coefficients({power: value})

    @classmethod
    def from_coefficients(cls, coefficients: dict) -> "LaurentSymbol":
        """
        Builds a symbol from a {power: coefficient} mapping, e.g. {-1: 1, 0: 2, 1: 1} for z^-1 + 2 + z.
        """
        if len(coefficients) == 0:
            return cls.zero()
        n_minus = max(0, -min(coefficients))
        n_plus = max(0, max(coefficients))
        dtype = np.result_type(*[np.asarray(value).dtype for value in coefficients.values()], np.float64)
        dense = np.zeros(n_minus + n_plus + 1, dtype=dtype)
        for power, value in coefficients.items():
            dense[power + n_minus] += value
        return cls.from_dense(dense, n_minus)

    @classmethod
    def from_dense(cls, dense: np.ndarray, n_minus: int) -> "LaurentSymbol":
        dense = np.asarray(dense)
        if not 0 <= n_minus < len(dense):
            raise ValueError(f"n_minus={n_minus} does not index into a vector of length {len(dense)}")
        return cls(dense[n_minus::-1].copy(), dense[n_minus:].copy())

    @property
    def n_minus(self) -> int:
        return len(self.neg) - 1

    @property
    def n_plus(self) -> int:
        return len(self.pos) - 1

    @property
    def band(self) -> int:
        return self.n_minus + self.n_plus + 1

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.pos)

    @property
    def dtype(self):
        return self.pos.dtype

    def coefficient(self, power: int):
        if power >= 0:
            return self.pos[power] if power <= self.n_plus else self.pos.dtype.type(0)
        return self.neg[-power] if -power <= self.n_minus else self.neg.dtype.type(0)

    def dense(self) -> np.ndarray:
        return np.concatenate([self.neg[:0:-1], self.pos])

    def is_zero(self) -> bool:
        return self.band == 1 and self.pos[0] == 0

    def __add__(self, other):
        return sym_add(self, _as_symbol(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sym_sub(self, _as_symbol(other))

    def __rsub__(self, other):
        return sym_sub(_as_symbol(other), self)

    def __mul__(self, other):
        if isinstance(other, Number):
            return sym_scale(self, other)
        return sym_mul(self, _as_symbol(other))

    __rmul__ = __mul__

    def __neg__(self):
        return sym_neg(self)

    def __repr__(self):
        terms = [f"{self.coefficient(power):.6g}*z^{power}" for power in range(-self.n_minus, self.n_plus + 1)]
        return f"LaurentSymbol({' + '.join(terms)})"


def _as_symbol(value: Union[LaurentSymbol, Number]) -> LaurentSymbol:
    if isinstance(value, LaurentSymbol):
        return value
    if isinstance(value, Number):
        return LaurentSymbol.constant(value)
    raise TypeError(f"Cannot use {type(value).__name__} as a Laurent symbol")


def w_norm(a: LaurentSymbol) -> float:
    return float(np.sum(np.abs(a.neg)) + np.sum(np.abs(a.pos[1:])))


def w1_norm(a: LaurentSymbol) -> float:
    derivative_norm = np.sum(np.abs(a.pos) * np.arange(a.n_plus + 1)) + np.sum(np.abs(a.neg) * np.arange(a.n_minus + 1))
    return w_norm(a) + float(derivative_norm)


def sym_add(a: LaurentSymbol, b: LaurentSymbol) -> LaurentSymbol:
    n_minus = max(a.n_minus, b.n_minus)
    n_plus = max(a.n_plus, b.n_plus)
    dtype = np.result_type(a.dtype, b.dtype)
    dense = np.zeros(n_minus + n_plus + 1, dtype=dtype)
    dense[n_minus - a.n_minus: n_minus + a.n_plus + 1] += a.dense()
    dense[n_minus - b.n_minus: n_minus + b.n_plus + 1] += b.dense()
    return LaurentSymbol.from_dense(dense, n_minus)


def sym_scale(a: LaurentSymbol, alpha: Number) -> LaurentSymbol:
    return LaurentSymbol(a.neg * alpha, a.pos * alpha)


def sym_neg(a: LaurentSymbol) -> LaurentSymbol:
    return sym_scale(a, -1)


def sym_sub(a: LaurentSymbol, b: LaurentSymbol) -> LaurentSymbol:
    return sym_add(a, sym_neg(b))


def sym_mul(a: LaurentSymbol, b: LaurentSymbol) -> LaurentSymbol:
    # degrees add: n_c^- = n_a^- + n_b^-, n_c^+ = n_a^+ + n_b^+
    return LaurentSymbol.from_dense(np.convolve(a.dense(), b.dense()), a.n_minus + b.n_minus)


def sym_reverse(a: LaurentSymbol) -> LaurentSymbol:
    # a(1/z), the symbol of T(a)^T
    return LaurentSymbol(a.pos.copy(), a.neg.copy())


def sym_negative_part(a: LaurentSymbol) -> LaurentSymbol:
    # strictly negative powers only
    neg = a.neg.copy()
    neg[0] = 0
    return LaurentSymbol(neg, np.zeros(1, dtype=a.dtype))


def sym_positive_part(a: LaurentSymbol) -> LaurentSymbol:
    pos = a.pos.copy()
    pos[0] = 0
    return LaurentSymbol(np.zeros(1, dtype=a.dtype), pos)


def sym_truncate(a: LaurentSymbol, eps: float) -> LaurentSymbol:
    """
    Drops outer coefficients while the w-norm of everything dropped stays below eps * max(1, ||a||_W).
    The smaller of the two outermost coefficients goes first; the constant term is never dropped.
    """
    if not 0 <= eps < 1:
        raise ToleranceError(eps)
    if eps == 0:
        return a

    budget = eps * max(1.0, w_norm(a))
    dropped = 0.0
    n_minus, n_plus = a.n_minus, a.n_plus
    while n_minus > 0 or n_plus > 0:
        low = abs(a.neg[n_minus]) if n_minus > 0 else math.inf
        high = abs(a.pos[n_plus]) if n_plus > 0 else math.inf
        smallest = min(low, high)
        if dropped + smallest > budget:
            break
        dropped += smallest
        if low <= high:
            n_minus -= 1
        else:
            n_plus -= 1

    if n_minus == a.n_minus and n_plus == a.n_plus:
        return a
    return LaurentSymbol(a.neg[:n_minus + 1].copy(), a.pos[:n_plus + 1].copy())


def evaluate(a: LaurentSymbol, z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    values = np.polyval(a.pos[::-1], z)
    if a.n_minus > 0:
        w = 1.0 / z
        values = values + w * np.polyval(a.neg[:0:-1], w)
    return values


def _check_grid(N: int, required: int):
    if N < required or N & (N - 1) != 0:
        raise GridTooSmallError(N, required)


def evaluate_fourier(a: LaurentSymbol, N: int) -> np.ndarray:
    """
    Values a(w^j), j = 0..N-1, with w = exp(2*pi*i/N), computed with one FFT of the zero padded,
    cyclically shifted coefficient vector.
    """
    _check_grid(N, a.band)
    buffer = np.zeros(N, dtype=complex)
    buffer[:a.n_plus + 1] = a.pos
    if a.n_minus > 0:
        buffer[N - a.n_minus:] = a.neg[:0:-1]
    return np.fft.ifft(buffer) * N


def symbol_values_to_coefficients(values: np.ndarray, n_minus: int, n_plus: int, real: bool = False) -> LaurentSymbol:
    """
    Interpolates values at the N Fourier points back to the coefficients of the powers -n_minus..n_plus.
    Anything outside that window is assumed to be negligible (aliased into the kept coefficients otherwise).
    """
    N = len(values)
    _check_grid(N, n_minus + n_plus + 1)
    coefficients = np.fft.fft(values) / N
    if real:
        coefficients = coefficients.real
    pos = coefficients[:n_plus + 1]
    neg = np.concatenate([coefficients[:1], coefficients[::-1][:n_minus]])
    return LaurentSymbol(neg, pos)


def _winding_on_grid(a: LaurentSymbol, N: int, threshold: float) -> int:
    values = evaluate_fourier(a, N)
    min_modulus = float(np.min(np.abs(values)))
    if min_modulus <= threshold:
        raise SymbolVanishesError(min_modulus, threshold)
    increments = np.angle(np.roll(values, -1) / values)
    return int(round(np.sum(increments) / (2 * np.pi)))


def winding_number(a: LaurentSymbol, N: Optional[int] = None, eps: float = 1e3 * MACHINE_EPS) -> int:
    """
    Number of times a(z) winds around the origin as z runs over the unit circle.

    Phase increments between consecutive grid points are summed on the principal branch; the grid is
    doubled until two successive estimates agree.
    """
    threshold = eps * w_norm(a)
    N = next_power_of_two(max(N or settings.WINDING_GRID, a.band))
    previous = _winding_on_grid(a, N, threshold)
    while N < settings.FOURIER_GRID_CAP:
        N *= 2
        current = _winding_on_grid(a, N, threshold)
        if current == previous:
            return current
        logger.debug(f"Winding number estimate changed from {previous} to {current} at N={N}")
        previous = current
    raise FactorizationConvergenceError(N, "winding number")
