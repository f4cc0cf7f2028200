from typing import Dict

import numpy as np

from app_config import logging
from cqt.exceptions import CqtError
from cqt.matrix import CqtMatrix, finite_section

logger = logging.getLogger(__name__)


def oracle_size(m: int, *matrices: CqtMatrix) -> int:
    """
    Dense section size large enough for the leading m x m block of sums and products of `matrices`
    to be exact: every band and correction support is added on top of m.
    """
    return m + sum(A.symbol.band + A.corr.rows + A.corr.cols for A in matrices)


def _max_deviation(X: np.ndarray, Y: np.ndarray) -> float:
    return float(np.max(np.abs(X - Y)))


def section_deviations(A: CqtMatrix, B: CqtMatrix, m: int) -> Dict[str, float]:
    """
    Max absolute deviation between the leading m x m block of A + B, A B and A A^-1 computed in CQT
    arithmetic and the same block computed from dense sections. The inverse is checked through
    A A^-1 = I; a non-invertible A gives nan.
    """
    deviations = {}

    N = oracle_size(m, A, B)
    deviations['add'] = _max_deviation((A + B).section(m), (A.section(N) + B.section(N))[:m, :m])
    deviations['mul'] = _max_deviation((A @ B).section(m), (A.section(N) @ B.section(N))[:m, :m])

    try:
        A_inv = A.inv()
    except CqtError as e:
        logger.warning(f"Inverse check skipped: {e}")
        deviations['inv'] = float('nan')
    else:
        N = oracle_size(m, A, A_inv)
        product = (A.section(N) @ A_inv.section(N))[:m, :m]
        deviations['inv'] = _max_deviation(product, np.eye(m))
    return deviations
