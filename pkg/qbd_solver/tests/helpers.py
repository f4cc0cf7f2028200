import numpy as np

from qbd_solver.jackson import QbdTriple


def dense_blocks(triple: QbdTriple, N: int):
    return triple.Am1.section(N), triple.A0.section(N), triple.A1.section(N)


def dense_cr_step(Am1: np.ndarray, A0: np.ndarray, A1: np.ndarray, Atilde: np.ndarray, Ahat: np.ndarray):
    X = np.linalg.solve(A0, Am1)
    Y = np.linalg.solve(A0, A1)
    return (
        -Am1 @ X,
        A0 - A1 @ X - Am1 @ Y,
        -A1 @ Y,
        Atilde - Am1 @ Y,
        Ahat - A1 @ X,
    )


def dense_solve_G(Am1: np.ndarray, A0: np.ndarray, A1: np.ndarray, steps: int = 30) -> np.ndarray:
    """
    Cyclic reduction on N x N truncations of the blocks, the reference the CQT iteration is checked against.
    """
    iterates = (Am1, A0, A1, A0, A0)
    for _ in range(steps):
        iterates = dense_cr_step(*iterates)
        if np.max(np.abs(iterates[0])) * np.max(np.abs(iterates[2])) < 1e-30:
            break
    Ahat = iterates[4]
    return -np.linalg.solve(Ahat, Am1)
