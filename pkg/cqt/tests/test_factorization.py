import numpy as np
import pytest

from app_config import settings
from cqt import factorization as factorization_module
from cqt.exceptions import NonzeroWindingError, SymbolVanishesError, FactorizationConvergenceError
from cqt.factorization import WhFactorization, wiener_hopf, reciprocal_plus, reciprocal_minus
from cqt.symbol import LaurentSymbol, MACHINE_EPS, w_norm, sym_mul, sym_sub, evaluate_fourier, next_power_of_two
from cqt.tests.helpers import winding_free_symbol, dense_toeplitz


def grid_residual(a: LaurentSymbol, b: LaurentSymbol) -> float:
    difference = sym_sub(a, b)
    N = next_power_of_two(max(256, 2 * difference.band))
    return float(np.max(np.abs(evaluate_fourier(difference, N))))


# Test case 1: power series symbols are already factored
def test_one_sided_shortcuts():
    a = LaurentSymbol.from_coefficients({0: 2, 1: 1})
    factorization = wiener_hopf(a)
    assert factorization.u is a
    assert factorization.l.band == 1 and factorization.l.pos[0] == 1

    b = LaurentSymbol.from_coefficients({-1: 1, 0: 4})
    factorization = wiener_hopf(b)
    assert factorization.u.band == 1
    assert factorization.u.pos[0] == 4
    assert factorization.l.pos[0] == 1
    assert abs(factorization.l.coefficient(-1) - 0.25) < 1e-16


# Test case 2: (2 + z)(1 - 0.5/z) splits into its two factors
def test_two_sided_factorization():
    u = LaurentSymbol.from_coefficients({0: 2, 1: 1})
    l = LaurentSymbol.from_coefficients({-1: -0.5, 0: 1})
    a = sym_mul(u, l)
    factorization = wiener_hopf(a)
    assert factorization.u.n_minus == 0
    assert factorization.l.n_plus == 0
    assert factorization.l.pos[0] == 1
    assert factorization.u.is_real and factorization.l.is_real
    assert abs(factorization.u.coefficient(0) - 2) < 1e-12
    assert abs(factorization.u.coefficient(1) - 1) < 1e-12
    assert abs(factorization.l.coefficient(-1) + 0.5) < 1e-12


# Test case 3: random winding-free symbols, roots away from the unit circle
def test_random_factorizations(rng):
    for _ in range(20):
        a = winding_free_symbol(rng, int(rng.integers(1, 4)), int(rng.integers(1, 4)))
        factorization = wiener_hopf(a)
        assert factorization.u.n_minus == 0
        assert factorization.l.n_plus == 0
        assert factorization.l.pos[0] == 1
        assert grid_residual(a, factorization.product()) < 1e-10 * w_norm(a)


def test_nonzero_winding():
    with pytest.raises(NonzeroWindingError) as error:
        wiener_hopf(LaurentSymbol.from_coefficients({0: 0.1, 1: 1}))
    assert error.value.winding == 1

    with pytest.raises(NonzeroWindingError):
        wiener_hopf(LaurentSymbol.from_coefficients({-1: 1, 0: 0.5}))


def test_vanishing_symbol():
    with pytest.raises(SymbolVanishesError):
        wiener_hopf(LaurentSymbol.from_coefficients({-1: 1, 0: 2, 1: 1}))


def test_factorization_validation():
    with pytest.raises(ValueError):
        WhFactorization(u=LaurentSymbol.monomial(-1), l=LaurentSymbol.constant(1))
    with pytest.raises(ValueError):
        WhFactorization(u=LaurentSymbol.constant(1), l=LaurentSymbol.constant(2))


def test_reciprocal_plus():
    u = LaurentSymbol.from_coefficients({0: 2, 1: 1})
    inverse = reciprocal_plus(u)
    assert inverse.n_minus == 0
    # 1/(2+z) = sum (-1)^k z^k / 2^(k+1)
    for k in range(10):
        assert abs(inverse.coefficient(k) - (-1) ** k / 2 ** (k + 1)) < 1e-15
    assert grid_residual(sym_mul(u, inverse), LaurentSymbol.constant(1)) < 1e-13


def test_reciprocal_of_constant():
    assert reciprocal_plus(LaurentSymbol.constant(4)).pos[0] == 0.25
    with pytest.raises(SymbolVanishesError):
        reciprocal_plus(LaurentSymbol.from_coefficients({1: 1}))


def test_reciprocal_minus():
    l = LaurentSymbol.from_coefficients({-1: -0.5, 0: 1})
    inverse = reciprocal_minus(l)
    assert inverse.n_plus == 0
    for k in range(10):
        assert abs(inverse.coefficient(-k) - 0.5 ** k) < 1e-15



# Test case 4: z(7 + 2/z + 3z) has roots -2 and -1/3, so u = 6 + 3z and l = 1 + 1/(3z)
def test_factors_have_minimal_support():
    a = LaurentSymbol.from_coefficients({-1: 2, 0: 7, 1: 3})
    factorization = wiener_hopf(a)
    assert factorization.u.n_minus == 0 and factorization.u.n_plus == 1
    assert factorization.l.n_minus == 1 and factorization.l.n_plus == 0
    assert abs(factorization.u.coefficient(0) - 6) < 1e-13
    assert abs(factorization.u.coefficient(1) - 3) < 1e-13
    assert abs(factorization.l.coefficient(-1) - 1 / 3) < 1e-13
    assert factorization.residual <= 10 * settings.CQT_TOL * w_norm(a)


def test_residual_bound(rng):
    eps = 1e-13
    for _ in range(10):
        a = winding_free_symbol(rng, int(rng.integers(1, 4)), int(rng.integers(1, 4)))
        factorization = wiener_hopf(a, eps)
        residual = w_norm(sym_sub(a, factorization.product()))
        assert residual <= 10 * eps * w_norm(a)
        assert abs(residual - factorization.residual) <= 1e-3 * eps * w_norm(a)
        # the exact factors are polynomials of the same degrees as a
        assert factorization.u.n_plus <= a.n_plus
        assert factorization.l.n_minus <= a.n_minus


def test_toeplitz_factorization_on_sections(rng):
    a = winding_free_symbol(rng, 2, 3)
    factorization = wiener_hopf(a)
    for m in (8, 32, 64):
        N = m + factorization.u.band
        product = dense_toeplitz(factorization.u, N) @ dense_toeplitz(factorization.l, N)
        assert np.max(np.abs(product[:m, :m] - dense_toeplitz(a, m))) < 1e-10


def test_reciprocals_of_the_factors():
    eps = 1e-14
    factorization = wiener_hopf(LaurentSymbol.from_coefficients({-1: 2, 0: 7, 1: 3}))
    one = LaurentSymbol.constant(1.0)
    u_inv = reciprocal_plus(factorization.u, eps)
    l_inv = reciprocal_minus(factorization.l, eps)
    assert w_norm(sym_sub(sym_mul(factorization.u, u_inv), one)) <= 10 * eps
    assert w_norm(sym_sub(sym_mul(factorization.l, l_inv), one)) <= 10 * eps
    # 1/(1 + 1/(3z)) = 1 - 1/(3z) + 1/(9z^2) - ...
    assert abs(l_inv.coefficient(-2) - 1 / 9) < 1e-14


# Test case 5: an unreachable target stalls at round-off, accepted with a warning
def test_stalled_residual_is_reported(rng, caplog):
    a = winding_free_symbol(rng, 2, 2)
    factorization = wiener_hopf(a, eps=1e-30)
    assert 0 < factorization.residual <= factorization_module._STAGNATION_ULPS * MACHINE_EPS * w_norm(a)
    assert 'stalled' in caplog.text


def test_stalled_residual_above_round_off_raises(rng, monkeypatch):
    monkeypatch.setattr(factorization_module, '_STAGNATION_ULPS', 0.0)
    monkeypatch.setattr(settings, 'FOURIER_GRID_CAP', 1024)
    with pytest.raises(FactorizationConvergenceError) as error:
        wiener_hopf(winding_free_symbol(rng, 2, 2), eps=1e-30)
    assert error.value.grid_size == 1024
    assert error.value.residual > 0
