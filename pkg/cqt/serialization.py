"""
Plain-text format of symbols, corrections and CQT matrices.

    tol 1.0000000000000000e-15
    neg: a_0 a_-1 ... a_-n_minus
    pos: a_0 a_1 ... a_n_plus
    F <rows> <rank>
    <one row of F per line>
    G <cols> <rank>
    <one row of G per line>

Values are written with 17 significant digits so that a dump/load cycle is exact.
"""
from pathlib import Path
from typing import Iterator, List, Union

import numpy as np

from app_config import logging
from cqt.exceptions import ToleranceError
from cqt.symbol import LaurentSymbol
from cqt.correction import Correction
from cqt.matrix import CqtMatrix

logger = logging.getLogger(__name__)


def _format_value(value) -> str:
    if np.iscomplexobj(value):
        return f"{value.real:.16e}{value.imag:+.16e}j"
    return f"{value:.16e}"


def _format_row(values: np.ndarray) -> str:
    return " ".join(_format_value(value) for value in values)


def _parse_values(tokens: List[str], where: str) -> np.ndarray:
    try:
        if any('j' in token for token in tokens):
            return np.array([complex(token) for token in tokens], dtype=complex)
        return np.array([float(token) for token in tokens], dtype=float)
    except ValueError:
        raise ValueError(f"Invalid number in {where}: {' '.join(tokens)!r}")


def _content_lines(text: str) -> Iterator[str]:
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith('#'):
            yield line


def _next_line(lines: Iterator[str], expected: str) -> str:
    try:
        return next(lines)
    except StopIteration:
        raise ValueError(f"Unexpected end of input, expected {expected}")


def dump_symbol(a: LaurentSymbol) -> str:
    return f"neg: {_format_row(a.neg)}\npos: {_format_row(a.pos)}\n"


def _read_symbol(lines: Iterator[str]) -> LaurentSymbol:
    vectors = {}
    for key in ('neg', 'pos'):
        line = _next_line(lines, f"'{key}:' line")
        label, _, values = line.partition(':')
        if label.strip() != key or not values.strip():
            raise ValueError(f"Expected '{key}: <values>', got {line!r}")
        vectors[key] = _parse_values(values.split(), f"symbol {key} line")
    return LaurentSymbol(vectors['neg'], vectors['pos'])


def load_symbol(text: str) -> LaurentSymbol:
    return _read_symbol(_content_lines(text))


def _dump_factor(name: str, M: np.ndarray) -> str:
    lines = [f"{name} {M.shape[0]} {M.shape[1]}"]
    lines.extend(_format_row(row) for row in M)
    return "\n".join(lines) + "\n"


def dump_correction(E: Correction) -> str:
    return _dump_factor('F', E.F) + _dump_factor('G', E.G)


def _read_factor(lines: Iterator[str], name: str) -> np.ndarray:
    header = _next_line(lines, f"'{name} <rows> <rank>' header").split()
    if len(header) != 3 or header[0] != name:
        raise ValueError(f"Expected '{name} <rows> <rank>', got {' '.join(header)!r}")
    try:
        rows, rank = int(header[1]), int(header[2])
    except ValueError:
        raise ValueError(f"Invalid {name} dimensions: {' '.join(header[1:])!r}")
    if rows < 0 or rank < 0:
        raise ValueError(f"{name} dimensions must be nonnegative, got {rows}x{rank}")

    if rows == 0 or rank == 0:
        return np.zeros((rows, rank))
    values = [_parse_values(_next_line(lines, f"row {i} of {name}").split(), f"{name} row {i}") for i in range(rows)]
    for i, row in enumerate(values):
        if len(row) != rank:
            raise ValueError(f"Row {i} of {name} has {len(row)} values, expected {rank}")
    return np.vstack(values)


def _read_correction(lines: Iterator[str]) -> Correction:
    F = _read_factor(lines, 'F')
    G = _read_factor(lines, 'G')
    return Correction(F, G)


def load_correction(text: str) -> Correction:
    return _read_correction(_content_lines(text))


def dump_matrix(A: CqtMatrix) -> str:
    return f"tol {A.tol:.16e}\n" + dump_symbol(A.symbol) + dump_correction(A.corr)


def load_matrix(text: str) -> CqtMatrix:
    lines = _content_lines(text)
    header = _next_line(lines, "'tol <value>' line").split()
    if len(header) != 2 or header[0] != 'tol':
        raise ValueError(f"Expected 'tol <value>', got {' '.join(header)!r}")
    tol = float(_parse_values(header[1:], "tol line")[0].real)
    if not 0 < tol < 1:
        raise ToleranceError(tol)
    symbol = _read_symbol(lines)
    corr = _read_correction(lines)
    return CqtMatrix(symbol, corr, tol)


def save_matrix(A: CqtMatrix, path: Union[str, Path]):
    path = Path(path)
    path.write_text(dump_matrix(A))
    logger.info(f"Saved CQT matrix ({A.symbol.band} diagonals, correction rank {A.corr.rank}) to {path}")


def read_matrix(path: Union[str, Path]) -> CqtMatrix:
    path = Path(path)
    try:
        return load_matrix(path.read_text())
    except ValueError as e:
        raise ValueError(f"{path}: {e}")
