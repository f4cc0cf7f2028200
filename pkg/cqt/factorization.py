from dataclasses import dataclass, replace
import math

import numpy as np

from app_config import logging, settings
from cqt.exceptions import NonzeroWindingError, SymbolVanishesError, FactorizationConvergenceError
from cqt.symbol import (
    LaurentSymbol, MACHINE_EPS, w_norm, sym_mul, sym_sub, sym_scale, sym_reverse, sym_truncate,
    evaluate_fourier, symbol_values_to_coefficients, winding_number, next_power_of_two
)

logger = logging.getLogger(__name__)

# a residual that stops improving is accepted at round-off level: this many ulps of ||a||_W
_STAGNATION_ULPS = 1e3


@dataclass(frozen=True, eq=False)
class WhFactorization:
    """
    Canonical Wiener-Hopf factorization a(z) = u(z) l(z) with u a power series in z, l a power series
    in 1/z normalized so that l_0 = 1. T(a) = T(u) T(l).
    residual is ||a - u l||_W as measured when the factorization was computed.
    """
    u: LaurentSymbol
    l: LaurentSymbol
    residual: float = 0.0

    def __post_init__(self):
        if self.u.n_minus != 0:
            raise ValueError("u must not have negative powers")
        if self.l.n_plus != 0:
            raise ValueError("l must not have positive powers")
        if self.l.pos[0] != 1:
            raise ValueError(f"l must be normalized with l_0 = 1, got {self.l.pos[0]}")

    def product(self) -> LaurentSymbol:
        return sym_mul(self.u, self.l)


def _min_modulus_check(values: np.ndarray, scale: float):
    min_modulus = float(np.min(np.abs(values)))
    threshold = 1e3 * MACHINE_EPS * scale
    if min_modulus <= threshold:
        raise SymbolVanishesError(min_modulus, threshold)


def _normalized(u: LaurentSymbol, l: LaurentSymbol) -> WhFactorization:
    l0 = l.pos[0]
    u = sym_scale(u, l0)
    l = sym_scale(l, 1 / l0)
    # l0/l0 can be off by one ulp; the constant is set exactly
    neg = l.neg.copy()
    neg[0] = 1
    return WhFactorization(u=u, l=LaurentSymbol(neg, np.ones(1, dtype=neg.dtype)))


def _cepstral_split(a: LaurentSymbol, N: int, eps: float) -> WhFactorization:
    values = evaluate_fourier(a, N)
    _min_modulus_check(values, w_norm(a))

    # continuous phase; winding number 0 makes it periodic
    log_values = np.log(np.abs(values)) + 1j * np.unwrap(np.angle(values))
    cepstrum = np.fft.fft(log_values) / N

    half = N // 2
    u_cepstrum = np.zeros(N, dtype=complex)
    u_cepstrum[:half] = cepstrum[:half]
    l_cepstrum = np.zeros(N, dtype=complex)
    l_cepstrum[half + 1:] = cepstrum[half + 1:]

    u_values = np.exp(np.fft.ifft(u_cepstrum) * N)
    l_values = np.exp(np.fft.ifft(l_cepstrum) * N)

    # z^n_minus a(z) is a polynomial with exactly n_minus roots in the unit disk, so u has degree
    # n_plus and l degree n_minus; interpolating wider only picks up round-off
    u = symbol_values_to_coefficients(u_values, 0, a.n_plus, real=a.is_real)
    l = symbol_values_to_coefficients(l_values, a.n_minus, 0, real=a.is_real)
    return _normalized(sym_truncate(u, eps), sym_truncate(l, eps))


def wiener_hopf(a: LaurentSymbol, eps: float = settings.CQT_TOL) -> WhFactorization:
    """
    Computes a(z) = u(z) l(z) by cepstral splitting: log a(z) is sampled at N Fourier points and
    interpolated, its power-series half is exponentiated into u and the rest into l.
    N is doubled until the residual ||a - u l||_W reaches 10*eps*||a||_W. A residual that stops
    improving is only accepted at round-off level, with a warning; anything larger raises
    FactorizationConvergenceError once the grid cap is hit.
    """
    kappa = winding_number(a)
    if kappa != 0:
        raise NonzeroWindingError(kappa)

    # one-sided symbols are already factored
    if a.n_minus == 0:
        return WhFactorization(u=a, l=LaurentSymbol.constant(1.0))
    if a.n_plus == 0:
        return _normalized(LaurentSymbol.constant(1.0), a)

    norm = w_norm(a)
    target = 10 * eps * norm
    floor = _STAGNATION_ULPS * MACHINE_EPS * norm
    N = next_power_of_two(max(settings.WINDING_GRID, 4 * a.band))
    best, best_residual = None, math.inf
    previous_residual = math.inf
    while N <= settings.FOURIER_GRID_CAP:
        factorization = _cepstral_split(a, N, eps)
        residual = w_norm(sym_sub(a, factorization.product()))
        logger.debug(f"Wiener-Hopf factorization on {N} points: residual {residual:.3e} (target {target:.3e})")

        if residual < best_residual:
            best, best_residual = replace(factorization, residual=residual), residual
        if residual <= target:
            return best
        if residual > 0.5 * previous_residual and best_residual <= floor:
            logger.warning(f"Wiener-Hopf factorization stalled at residual {best_residual:.3e} on {N} points, "
                           f"above the target {target:.3e}; accepted at round-off level")
            return best

        previous_residual = residual
        N *= 2

    raise FactorizationConvergenceError(N // 2, "Wiener-Hopf factorization", best_residual)


def _power_series_reciprocal(u: LaurentSymbol, eps: float, what: str) -> LaurentSymbol:
    if u.n_minus != 0:
        raise ValueError(f"{what} expects a power series without negative powers")
    if u.pos[0] == 0:
        raise SymbolVanishesError(0.0, 0.0)
    if u.n_plus == 0:
        return LaurentSymbol.constant(1 / u.pos[0])

    floor = max(eps, 64 * MACHINE_EPS)
    N = next_power_of_two(max(settings.WINDING_GRID, 4 * u.band))
    while N <= settings.FOURIER_GRID_CAP:
        values = evaluate_fourier(u, N)
        _min_modulus_check(values, w_norm(u))
        coefficients = np.fft.fft(1 / values) / N
        if u.is_real:
            coefficients = coefficients.real

        # the upper half only holds aliased tail of the series; it must have decayed away
        half = N // 2
        tail = float(np.max(np.abs(coefficients[half:])))
        scale = float(np.sum(np.abs(coefficients[:half])))
        if tail <= floor * scale:
            series = LaurentSymbol(coefficients[:1].copy(), coefficients[:half].copy())
            return sym_truncate(series, eps)

        logger.debug(f"{what}: tail {tail:.3e} above {floor * scale:.3e} on {N} points, doubling grid")
        N *= 2

    raise FactorizationConvergenceError(N // 2, what)


def reciprocal_plus(u: LaurentSymbol, eps: float = settings.CQT_TOL) -> LaurentSymbol:
    """
    Power series of 1/u(z) for u nonvanishing on the closed unit disk.
    """
    return _power_series_reciprocal(u, eps, "reciprocal_plus")


def reciprocal_minus(l: LaurentSymbol, eps: float = settings.CQT_TOL) -> LaurentSymbol:
    return sym_reverse(_power_series_reciprocal(sym_reverse(l), eps, "reciprocal_minus"))
