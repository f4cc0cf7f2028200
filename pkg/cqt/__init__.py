from cqt.exceptions import (
    CqtError, ToleranceError, GridTooSmallError, SymbolVanishesError, NonzeroWindingError,
    FactorizationConvergenceError, SingularCorrectionError, CyclicReductionBreakdown, MaxIterationsExceeded,
    CyclicReductionDivergence, ScalarCrConvergenceError
)
from cqt.symbol import LaurentSymbol
from cqt.correction import Correction
from cqt.factorization import WhFactorization, wiener_hopf
from cqt.matrix import CqtMatrix
