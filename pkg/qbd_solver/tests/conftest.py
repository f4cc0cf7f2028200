import numpy as np
import pytest

from qbd_solver.constants.presets import JACKSON_PRESETS
from qbd_solver.jackson import jackson_blocks


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture(scope='module')
def jackson1():
    return jackson_blocks(JACKSON_PRESETS['jackson1'])
