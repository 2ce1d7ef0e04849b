import pathlib
import sys

import numpy as np
import pytest

ROOT = pathlib.Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

import framescale as fs  # noqa: E402


@pytest.fixture
def onb2():
    return fs.build_frame(2, [(1, 0), (0, 1)])


@pytest.fixture
def mercedes():
    s3 = np.sqrt(3.0)
    return fs.build_frame(2, [(0, 1), (-s3 / 2, -0.5), (s3 / 2, -0.5)])


@pytest.fixture
def onb_plus():
    r = 1 / np.sqrt(2.0)
    return fs.build_frame(2, [(1, 0), (0, 1), (r, r)])


@pytest.fixture
def quadrant():
    return fs.build_frame(2, [
        (1 / np.sqrt(2), 1 / np.sqrt(2)),
        (2 / np.sqrt(5), 1 / np.sqrt(5)),
        (1 / np.sqrt(5), 2 / np.sqrt(5)),
    ])


@pytest.fixture
def witness_base():
    r = 1 / np.sqrt(3.0)
    return fs.build_frame(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (r, r, r)])


def random_orthogonal(rng, n):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diagonal(r))


def parseval_from(matrix):
    """Canonically tighten a full-rank matrix: (Phi Phi^T)^{-1/2} Phi."""
    g = matrix @ matrix.T
    vals, vecs = np.linalg.eigh(g)
    root_inv = vecs @ np.diag(1.0 / np.sqrt(vals)) @ vecs.T
    return root_inv @ matrix


def random_scalable_frame(rng, n, m):
    """Scalable by construction: tighten, then rescale columns positively."""
    while True:
        mat = rng.standard_normal((n, m))
        if fs.numerical_rank(mat) == n:
            break
    mat = parseval_from(mat)
    lam = rng.uniform(0.5, 2.0, size=m)
    return fs.build_frame(n, (mat * lam).T)
