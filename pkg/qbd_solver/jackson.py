from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union
import math

import numpy as np
from pydantic import ValidationError

from app_config import logging, settings
from cqt.symbol import LaurentSymbol, evaluate
from cqt.matrix import CqtMatrix
from qbd_solver.models import JacksonParams, HypothesisReport

logger = logging.getLogger(__name__)

# relative tolerance of the zero-sum hypothesis and of the |x| = 1 comparison of roots
_SUM_TOL = 1e-12
_MODULUS_TOL = 1e-12


@dataclass(frozen=True)
class QbdTriple:
    """
    Blocks A-1, A0, A1 of the level-homogeneous part of a QBD generator.
    """
    Am1: CqtMatrix
    A0: CqtMatrix
    A1: CqtMatrix

    def symbols(self) -> Tuple[LaurentSymbol, LaurentSymbol, LaurentSymbol]:
        return self.Am1.symbol, self.A0.symbol, self.A1.symbol


@dataclass(frozen=True)
class RootSplit:
    """
    Roots of p_z(x) = a1(z) x^2 + a0(z) x + a-1(z). A vanishing a1(z) gives a root at infinity.
    `split` is None when the hypotheses of the splitting theorem do not hold.
    """
    z: complex
    roots: Tuple[complex, complex]
    inside: int
    outside: int
    split: Optional[bool]
    hypotheses_met: bool

    def __bool__(self):
        return bool(self.split)


def jackson_blocks(params: JacksonParams, tol: float = settings.CQT_TOL) -> QbdTriple:
    """
    Level = queue length at node 2, phase = queue length at node 1.
      A-1 = T((1-q) mu2 + q mu2 z)
      A1  = T(lambda2 + p mu1 z^-1)
      A0  = T((1-p) mu1 z^-1 - (lambda1 + lambda2 + mu1 + mu2) + lambda1 z) + mu1 e1 e1^T
    The correction puts back the service rate that an empty node 1 cannot spend.
    """
    lambda1, lambda2, mu1, mu2, p, q = params.lambda1, params.lambda2, params.mu1, params.mu2, params.p, params.q
    am1 = LaurentSymbol.from_coefficients({0: (1 - q) * mu2, 1: q * mu2})
    a1 = LaurentSymbol.from_coefficients({-1: p * mu1, 0: lambda2})
    a0 = LaurentSymbol.from_coefficients({-1: (1 - p) * mu1, 0: -(lambda1 + lambda2 + mu1 + mu2), 1: lambda1})

    boundary = np.array([[mu1]])
    return QbdTriple(
        Am1=CqtMatrix.toeplitz(am1, tol),
        A0=CqtMatrix.from_parts(a0, boundary, np.ones((1, 1)), tol),
        A1=CqtMatrix.toeplitz(a1, tol),
    )


def scalar_triple(am1: float, a0: float, a1: float, tol: float = settings.CQT_TOL) -> QbdTriple:
    return QbdTriple(
        Am1=CqtMatrix.toeplitz(LaurentSymbol.constant(am1), tol),
        A0=CqtMatrix.toeplitz(LaurentSymbol.constant(a0), tol),
        A1=CqtMatrix.toeplitz(LaurentSymbol.constant(a1), tol),
    )


def validate_theorem_hypotheses(t: QbdTriple) -> HypothesisReport:
    """
    Checks the conditions under which p_z(x) has one root inside and one outside the unit disk
    for every z != 1 on the unit circle:
        sum a_ij = 0, a_00 < 0, every other a_ij >= 0,
        a_-1,0 > 0 or a_1,0 > 0, and some a_ij != 0 with j != 0.
    """
    symbols = t.symbols()
    tridiagonal = all(a.n_minus <= 1 and a.n_plus <= 1 for a in symbols)
    coefficients = {(i, j): a.coefficient(j) for i, a in zip((-1, 0, 1), symbols) for j in (-1, 0, 1)}
    values = np.array(list(coefficients.values()))
    if np.iscomplexobj(values) and np.any(values.imag != 0):
        logger.warning("Complex block coefficients cannot satisfy the sign hypotheses")
    values = values.real
    scale = float(np.sum(np.abs(values)))

    off_center = [value.real for key, value in coefficients.items() if key != (0, 0)]
    report = HypothesisReport(
        tridiagonal=tridiagonal,
        zero_sum=scale > 0 and abs(float(np.sum(values))) <= _SUM_TOL * scale,
        center_negative=coefficients[(0, 0)].real < 0,
        off_center_nonnegative=all(value >= 0 for value in off_center),
        constant_term_positive=coefficients[(-1, 0)].real > 0 or coefficients[(1, 0)].real > 0,
        has_phase_transitions=any(coefficients[(i, j)] != 0 for i in (-1, 0, 1) for j in (-1, 1)),
    )
    if not report.all_passed:
        logger.debug(f"Root splitting hypotheses failed: {report.failures()}")
    return report


def _quadratic_roots(a1: complex, a0: complex, am1: complex, scale: float) -> Tuple[complex, complex]:
    # cancellation-free form: q = -(a0 + sign * sqrt(disc)) / 2, x1 = q / a1, x2 = am1 / q
    if abs(a1) <= _MODULUS_TOL * scale:
        if abs(a0) <= _MODULUS_TOL * scale:
            return (complex(math.inf), complex(math.inf))
        return (-am1 / a0, complex(math.inf))

    root = np.sqrt(complex(a0 * a0 - 4 * a1 * am1))
    if abs(a0 + root) < abs(a0 - root):
        root = -root
    q = -(a0 + root) / 2
    if q == 0:
        return (0j, 0j)
    return (complex(q / a1), complex(am1 / q))


def check_root_split(t: QbdTriple, z: complex) -> RootSplit:
    if abs(abs(z) - 1) > _MODULUS_TOL:
        raise ValueError(f"z must lie on the unit circle, got |z| = {abs(z)}")

    hypotheses = validate_theorem_hypotheses(t)
    am1, a0, a1 = (complex(evaluate(a, z)) for a in t.symbols())
    scale = abs(am1) + abs(a0) + abs(a1)
    roots = _quadratic_roots(a1, a0, am1, scale)

    inside = sum(abs(root) < 1 - _MODULUS_TOL for root in roots)
    outside = sum(abs(root) > 1 + _MODULUS_TOL for root in roots)
    split = (inside == 1 and outside == 1) if hypotheses.all_passed else None
    return RootSplit(z=complex(z), roots=roots, inside=inside, outside=outside, split=split, hypotheses_met=hypotheses.all_passed)


def unit_circle_samples(count: int) -> np.ndarray:
    """
    `count` points on the unit circle, none of them equal to 1.
    """
    angles = 2 * np.pi * (np.arange(count) + 0.5) / count
    return np.exp(1j * angles)


def check_root_split_on_circle(t: QbdTriple, count: int = 64) -> List[RootSplit]:
    return [check_root_split(t, z) for z in unit_circle_samples(count)]


def traffic_intensities(params: JacksonParams) -> Tuple[float, float]:
    """
    Solves gamma1 = lambda1 + q gamma2, gamma2 = lambda2 + p gamma1 and returns (gamma1/mu1, gamma2/mu2).
    With p = q = 1 no customer ever leaves and both loads are infinite.
    """
    determinant = 1 - params.p * params.q
    if determinant <= 0:
        return (math.inf, math.inf)
    gamma1 = (params.lambda1 + params.q * params.lambda2) / determinant
    gamma2 = (params.lambda2 + params.p * params.lambda1) / determinant
    return (gamma1 / params.mu1, gamma2 / params.mu2)


_PARAM_NAMES = ('lambda1', 'lambda2', 'mu1', 'mu2', 'p', 'q')


def parse_params(text: str) -> JacksonParams:
    """
    Six labeled values, one per line:
        lambda1 1.0
        lambda2 2.0
        ...
    """
    values = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] not in _PARAM_NAMES:
            raise ValueError(f"Line {number}: expected '<name> <value>' with name in {_PARAM_NAMES}, got {line!r}")
        if parts[0] in values:
            raise ValueError(f"Line {number}: {parts[0]} given twice")
        try:
            values[parts[0]] = float(parts[1])
        except ValueError:
            raise ValueError(f"Line {number}: {parts[1]!r} is not a number")

    missing = [name for name in _PARAM_NAMES if name not in values]
    if missing:
        raise ValueError(f"Missing parameters: {', '.join(missing)}")
    return JacksonParams(**values)


def load_params(path: Union[str, Path]) -> JacksonParams:
    path = Path(path)
    try:
        return parse_params(path.read_text())
    except (ValueError, ValidationError) as e:
        logger.error(f"Invalid parameter file {path}: {e}")
        raise
