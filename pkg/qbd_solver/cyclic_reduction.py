from dataclasses import dataclass
from typing import Callable, Optional, Tuple
import time

import numpy as np

from app_config import logging, settings
from cqt.exceptions import (
    CqtError, CyclicReductionBreakdown, CyclicReductionDivergence, MaxIterationsExceeded, ScalarCrConvergenceError
)
from cqt.symbol import LaurentSymbol, evaluate_fourier
from cqt.matrix import CqtMatrix, qt_norm, cqt_norm, inf_norm_estimate, structure

logger = logging.getLogger(__name__)

LEFT = 'left'
RIGHT = 'right'
ITERATES = ('Am1', 'A0', 'A1', 'Atilde', 'Ahat')


@dataclass(frozen=True)
class CrState:
    """
    Iterates of cyclic reduction after h steps:
        A0'     = A0 - A1 S A-1 - A-1 S A1,   S = A0^-1
        A1'     = -A1 S A1
        A-1'    = -A-1 S A-1
        Atilde' = Atilde - A-1 S A1
        Ahat'   = Ahat - A1 S A-1
    """
    Am1: CqtMatrix
    A0: CqtMatrix
    A1: CqtMatrix
    Atilde: CqtMatrix
    Ahat: CqtMatrix
    h: int = 0

    @classmethod
    def initial(cls, Am1: CqtMatrix, A0: CqtMatrix, A1: CqtMatrix) -> "CrState":
        return cls(Am1=Am1, A0=A0, A1=A1, Atilde=A0, Ahat=A0, h=0)

    def norms(self) -> dict:
        return {name: qt_norm(getattr(self, name)) for name in ITERATES}

    def support(self) -> int:
        return max(max(getattr(self, name).corr.rows, getattr(self, name).corr.cols) for name in ITERATES)


@dataclass(frozen=True)
class QuadraticSolveReport:
    solution: CqtMatrix
    side: str
    iterations: int
    residual_inf: float
    residual_cqt: float
    band: int
    corr_rows: int
    corr_cols: int
    corr_rank: int
    converged_by: str
    cpu_time: float


def cr_step(s: CrState) -> CrState:
    S = s.A0.inv()
    X = S @ s.Am1
    Y = S @ s.A1
    A1X = s.A1 @ X
    Am1Y = s.Am1 @ Y
    return CrState(
        Am1=-(s.Am1 @ X),
        A0=s.A0 - A1X - Am1Y,
        A1=-(s.A1 @ Y),
        Atilde=s.Atilde - Am1Y,
        Ahat=s.Ahat - A1X,
        h=s.h + 1,
    )


def _solution(state: CrState, Am1: CqtMatrix, A1: CqtMatrix, side: str) -> CqtMatrix:
    # A1 G = R A-1 = U - A0, with U the limit of Ahat; both solutions come from its inverse
    U_inv = state.Ahat.inv()
    if side == LEFT:
        return -(U_inv @ Am1)
    return -(A1 @ U_inv)


def _solve(Am1: CqtMatrix, A0: CqtMatrix, A1: CqtMatrix, side: str, tol: float, max_iter: int,
           callback: Optional[Callable[[CrState], None]], max_rows: int) -> QuadraticSolveReport:
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be at least 1, got {max_iter}")
    if max_rows < 1:
        raise ValueError(f"max_rows must be at least 1, got {max_rows}")

    start = time.perf_counter()
    state = CrState.initial(Am1, A0, A1)
    solution, previous, last_increment = None, None, None
    growth = 0
    while True:
        product = qt_norm(state.A1) * qt_norm(state.Am1)
        increment = None
        solution = None
        if state.h >= 2 or product < tol:
            try:
                solution = _solution(state, Am1, A1, side)
            except CqtError as e:
                logger.error(f"Cyclic reduction breakdown forming the solution at step {state.h}: {e}")
                raise CyclicReductionBreakdown(state.h, state.norms(), e)
            if previous is not None:
                increment = qt_norm(solution - previous)
            previous = solution

        increment_str = "n/a" if increment is None else f"{increment:.3e}"
        logger.info(f"CR step {state.h}: |A1||A-1| = {product:.3e}, increment = {increment_str}")

        if product < tol:
            converged_by = 'product'
            break
        if increment is not None and increment < tol:
            converged_by = 'increment'
            break
        if increment is not None:
            growth = growth + 1 if last_increment is not None and increment > last_increment else 0
            last_increment = increment
        if growth >= settings.CR_DIVERGENCE_STEPS:
            logger.error(f"CR increment grew in {growth} consecutive steps, last {increment:.3e}")
            raise CyclicReductionDivergence(state.h, product, increment,
                                            f"G increment grew in {growth} consecutive steps")
        if state.h >= max_iter:
            raise MaxIterationsExceeded(state.h, product, increment)

        try:
            state = cr_step(state)
        except CqtError as e:
            logger.error(f"Cyclic reduction breakdown at step {state.h}: {e}")
            raise CyclicReductionBreakdown(state.h, state.norms(), e)
        if callback is not None:
            callback(state)

        rows = state.support()
        if rows > max_rows:
            logger.error(f"CR step {state.h}: correction support of {rows} rows exceeds {max_rows}")
            raise CyclicReductionDivergence(state.h, qt_norm(state.A1) * qt_norm(state.Am1), increment,
                                            f"correction support reached {rows} rows (cap {max_rows})")

    cpu_time = time.perf_counter() - start
    residual_inf, residual_cqt = residual(Am1, A0, A1, solution, side)
    shape = structure(solution)
    return QuadraticSolveReport(
        solution=solution,
        side=side,
        iterations=state.h,
        residual_inf=residual_inf,
        residual_cqt=residual_cqt,
        band=shape.band,
        corr_rows=shape.rows,
        corr_cols=shape.columns,
        corr_rank=shape.rank,
        converged_by=converged_by,
        cpu_time=cpu_time,
    )


def solve_G(Am1: CqtMatrix, A0: CqtMatrix, A1: CqtMatrix, tol: float = settings.CR_TOL,
            max_iter: int = settings.CR_MAX_ITER, callback: Optional[Callable[[CrState], None]] = None,
            max_rows: int = settings.CR_MAX_CORRECTION_ROWS) -> QuadraticSolveReport:
    """
    Minimal solution of A1 X^2 + A0 X + A-1 = 0.
    Stops once |A1^(h)| |A-1^(h)| < tol or, from h = 2 on, |G^(h) - G^(h-1)| < tol (QT norms).
    Gives up with CyclicReductionDivergence when the increment keeps growing or a correction
    outgrows max_rows rows.
    """
    return _solve(Am1, A0, A1, LEFT, tol, max_iter, callback, max_rows)


def solve_R(Am1: CqtMatrix, A0: CqtMatrix, A1: CqtMatrix, tol: float = settings.CR_TOL,
            max_iter: int = settings.CR_MAX_ITER, callback: Optional[Callable[[CrState], None]] = None,
            max_rows: int = settings.CR_MAX_CORRECTION_ROWS) -> QuadraticSolveReport:
    """
    Minimal solution of X^2 A-1 + X A0 + A1 = 0, same iteration and stopping rule as solve_G.
    """
    return _solve(Am1, A0, A1, RIGHT, tol, max_iter, callback, max_rows)


def residual(Am1: CqtMatrix, A0: CqtMatrix, A1: CqtMatrix, X: CqtMatrix, side: str = LEFT) -> Tuple[float, float]:
    """
    (infinity-norm estimate, CQT norm) of A1 X^2 + A0 X + A-1 (left) or X^2 A-1 + X A0 + A1 (right).
    """
    if side == LEFT:
        E = A1 @ X @ X + A0 @ X + Am1
    elif side == RIGHT:
        E = X @ X @ Am1 + X @ A0 + A1
    else:
        raise ValueError(f"side must be '{LEFT}' or '{RIGHT}', got {side!r}")
    return inf_norm_estimate(E), cqt_norm(E)


@dataclass(frozen=True)
class ScalarIterates:
    """
    Symbol values of the five CR iterates on the N-point Fourier grid after h steps.
    """
    am1: np.ndarray
    a0: np.ndarray
    a1: np.ndarray
    atilde: np.ndarray
    ahat: np.ndarray
    h: int


def _scalar_step(s: ScalarIterates) -> ScalarIterates:
    with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
        coupling = s.a1 * s.am1 / s.a0
        return ScalarIterates(
            am1=-s.am1 ** 2 / s.a0,
            a0=s.a0 - 2 * coupling,
            a1=-s.a1 ** 2 / s.a0,
            atilde=s.atilde - coupling,
            ahat=s.ahat - coupling,
            h=s.h + 1,
        )


def _scalar_initial(am1: LaurentSymbol, a0: LaurentSymbol, a1: LaurentSymbol, N: int) -> ScalarIterates:
    a0_values = evaluate_fourier(a0, N)
    return ScalarIterates(am1=evaluate_fourier(am1, N), a0=a0_values, a1=evaluate_fourier(a1, N),
                          atilde=a0_values, ahat=a0_values.copy(), h=0)


def scalar_cr_iterates(am1: LaurentSymbol, a0: LaurentSymbol, a1: LaurentSymbol, N: int, steps: int) -> ScalarIterates:
    """
    Runs `steps` steps of the scalar recurrences pointwise on the grid w^j, w = exp(2 pi i / N).
    """
    state = _scalar_initial(am1, a0, a1, N)
    for _ in range(steps):
        state = _scalar_step(state)
    return state


def scalar_cr(am1: LaurentSymbol, a0: LaurentSymbol, a1: LaurentSymbol, N: int, tol: float = settings.CR_TOL,
              max_iter: int = settings.CR_MAX_ITER) -> np.ndarray:
    """
    Samples of g(z) = lim -a-1(z) / atilde^(h)(z), the root of a1(z) x^2 + a0(z) x + a-1(z) inside the
    unit disk, at the N Fourier points. This is Graeffe's iteration applied at every point.
    """
    state = _scalar_initial(am1, a0, a1, N)
    am1_values = state.am1
    while True:
        with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
            ratio = np.abs(state.a1 * state.am1 / state.atilde ** 2)
        # nan compares false, so a breakdown at some point counts as not converged
        converged = ratio < tol
        if np.all(converged):
            logger.debug(f"Scalar CR converged on {N} points after {state.h} steps")
            return -am1_values / state.atilde
        if state.h >= max_iter:
            failing = np.flatnonzero(~converged)
            worst = int(failing[np.argmax(np.nan_to_num(ratio[failing], nan=np.inf))])
            point = complex(np.exp(2j * np.pi * worst / N))
            raise ScalarCrConvergenceError(point, float(ratio[worst]), state.h)
        state = _scalar_step(state)
