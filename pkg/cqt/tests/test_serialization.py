import numpy as np
import pytest

from cqt.correction import Correction
from cqt.matrix import CqtMatrix
from cqt.serialization import (
    dump_symbol, load_symbol, dump_correction, load_correction, dump_matrix, load_matrix, save_matrix, read_matrix
)
from cqt.symbol import LaurentSymbol
from cqt.tests.helpers import random_cqt


def test_symbol_text_format():
    a = LaurentSymbol.from_coefficients({-1: 1, 0: 2.5, 1: -1})
    assert dump_symbol(a) == (
        "neg: 2.5000000000000000e+00 1.0000000000000000e+00\n"
        "pos: 2.5000000000000000e+00 -1.0000000000000000e+00\n"
    )


def test_symbol_text_is_exact(rng):
    a = LaurentSymbol.from_dense(rng.standard_normal(7), 3)
    b = load_symbol(dump_symbol(a))
    assert np.array_equal(a.neg, b.neg)
    assert np.array_equal(a.pos, b.pos)


def test_complex_symbol():
    a = LaurentSymbol.from_coefficients({-1: 1 - 2j, 0: 0.5j})
    b = load_symbol(dump_symbol(a))
    assert not b.is_real
    assert b.coefficient(-1) == 1 - 2j
    assert b.coefficient(0) == 0.5j


def test_zero_correction_text():
    assert dump_correction(Correction.zero()) == "F 0 0\nG 0 0\n"
    assert load_correction("F 0 0\nG 0 0\n").is_zero()


def test_matrix_text_is_exact(rng):
    A = random_cqt(rng)
    B = load_matrix(dump_matrix(A))
    assert B.tol == A.tol
    assert np.array_equal(A.section(24), B.section(24))


def test_comments_and_blank_lines_are_skipped():
    text = "# shift\ntol 1e-15\n\nneg: 0\npos: 0 1\nF 1 1\n1\nG 1 1\n2\n"
    A = load_matrix(text)
    assert np.array_equal(A.section(2), [[2, 1], [0, 0]])


def test_save_and_read(tmp_path, rng):
    A = random_cqt(rng)
    path = tmp_path / "A.cqt"
    save_matrix(A, path)
    B = read_matrix(path)
    assert np.array_equal(A.section(16), B.section(16))


@pytest.mark.parametrize("text", [
    "",
    "tol abc\nneg: 1\npos: 1\nF 0 0\nG 0 0\n",
    "tol -1\nneg: 1\npos: 1\nF 0 0\nG 0 0\n",
    "tol 2\nneg: 1\npos: 1\nF 0 0\nG 0 0\n",
    "tol 1e-15\npos: 1\nneg: 1\nF 0 0\nG 0 0\n",
    "tol 1e-15\nneg: 1\npos: 2\nF 0 0\nG 0 0\n",
    "tol 1e-15\nneg: 1\npos: 1\nF 2 1\n1\n",
    "tol 1e-15\nneg: 1\npos: 1\nF 1 2\n1\nG 0 0\n",
    "tol 1e-15\nneg: 1\npos: 1\nF 1 1\n1\nG 1 2\n1 1\n",
])
def test_malformed_matrix(text):
    with pytest.raises(ValueError):
        load_matrix(text)
