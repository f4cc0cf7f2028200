from dotenv import load_dotenv
import os

load_dotenv()

def _read_number(name: str, default, cast=float):
    raw = os.environ.get(name)
    if raw is None or len(raw.strip()) == 0:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise ValueError(f"Environment variable {name}={raw!r} is not a valid {cast.__name__}")

# tolerance used for truncation/compression of every newly built CQT matrix
CQT_TOL = _read_number('CQT_TOL', 1e-15)

# cyclic reduction defaults
CR_TOL = _read_number('CR_TOL', 1e-12)
CR_MAX_ITER = _read_number('CR_MAX_ITER', 60, int)

# evaluation/interpolation grids
WINDING_GRID = _read_number('WINDING_GRID', 256, int)
FOURIER_GRID_CAP = _read_number('FOURIER_GRID_CAP', 2**20, int)

# divergence guard of cyclic reduction: consecutive growing G increments, largest correction support
CR_DIVERGENCE_STEPS = _read_number('CR_DIVERGENCE_STEPS', 3, int)
CR_MAX_CORRECTION_ROWS = _read_number('CR_MAX_CORRECTION_ROWS', 4096, int)
