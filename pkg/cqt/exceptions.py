from typing import Optional


class CqtError(Exception):
    """
    Base class of every error raised by the CQT arithmetic and the solvers built on it.
    """


class ToleranceError(CqtError, ValueError):
    def __init__(self, eps: float):
        self.eps = eps
        super().__init__(f"Tolerance must lie in [0, 1), got {eps!r}")


class GridTooSmallError(CqtError, ValueError):
    def __init__(self, grid_size: int, required: int):
        self.grid_size = grid_size
        self.required = required
        super().__init__(f"Fourier grid of {grid_size} points cannot hold a symbol with {required} coefficients (need a power of two >= {required})")


class SymbolVanishesError(CqtError, ArithmeticError):
    def __init__(self, min_modulus: float, threshold: float):
        self.min_modulus = min_modulus
        self.threshold = threshold
        super().__init__(f"Symbol vanishes on the unit circle: min |a(z)| = {min_modulus:.3e} <= {threshold:.3e}")


class NonzeroWindingError(CqtError, ArithmeticError):
    def __init__(self, winding: int):
        self.winding = winding
        super().__init__(f"Symbol has winding number {winding}; a canonical factorization needs winding number 0")


class FactorizationConvergenceError(CqtError, ArithmeticError):
    def __init__(self, grid_size: int, what: str = "factorization", residual: Optional[float] = None):
        self.grid_size = grid_size
        self.residual = residual
        stalled = "" if residual is None else f" (residual stalled at {residual:.3e})"
        super().__init__(f"{what} did not converge before the grid reached {grid_size} points{stalled}")


class SingularCorrectionError(CqtError, ArithmeticError):
    def __init__(self, pivot: float, scale: float):
        self.pivot = pivot
        self.scale = scale
        super().__init__(f"Matrix is not invertible: capacitance matrix pivot {pivot:.3e} is below 1e-12 * {scale:.3e}")


class CyclicReductionBreakdown(CqtError):
    def __init__(self, iteration: int, norms: dict, cause: Optional[Exception] = None):
        self.iteration = iteration
        self.norms = norms
        self.cause = cause
        norms_str = ", ".join(f"{name}={value:.3e}" for name, value in norms.items())
        super().__init__(f"Cyclic reduction broke down at step {iteration} ({norms_str}): {cause}")


class MaxIterationsExceeded(CqtError):
    def __init__(self, iterations: int, product_norm: float, increment_norm: Optional[float]):
        self.iterations = iterations
        self.product_norm = product_norm
        self.increment_norm = increment_norm
        increment = "n/a" if increment_norm is None else f"{increment_norm:.3e}"
        super().__init__(f"Cyclic reduction did not converge in {iterations} iterations (|A1||A-1| = {product_norm:.3e}, |G_h - G_h-1| = {increment})")


class ScalarCrConvergenceError(CqtError, ArithmeticError):
    def __init__(self, point: complex, ratio: float, iterations: int):
        self.point = point
        self.ratio = ratio
        self.iterations = iterations
        super().__init__(f"Scalar cyclic reduction did not converge at z = {point:.6g} after {iterations} iterations (|a1 a-1 / a~^2| = {ratio:.3e})")


class CyclicReductionDivergence(MaxIterationsExceeded):
    def __init__(self, iterations: int, product_norm: float, increment_norm: Optional[float], reason: str):
        self.iterations = iterations
        self.product_norm = product_norm
        self.increment_norm = increment_norm
        self.reason = reason
        CqtError.__init__(self, f"Cyclic reduction diverges at step {iterations}: {reason} (|A1||A-1| = {product_norm:.3e})")
