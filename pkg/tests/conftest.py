import numpy as np
import pytest

from atiyah_config import Configuration


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_unit_spinors(rng, size):
    w = rng.normal(size=(size, 2)) + 1j * rng.normal(size=(size, 2))
    return w / np.linalg.norm(w, axis=-1, keepdims=True)


def random_directions(rng, size):
    d = rng.normal(size=(size, 3))
    return d / np.linalg.norm(d, axis=-1, keepdims=True)


def random_config(rng, n):
    return Configuration(rng.uniform(-1.0, 1.0, size=(n, 3)))


def random_rotation(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


@pytest.fixture
def equilateral():
    return Configuration([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, np.sqrt(3) / 2, 0.0]])


@pytest.fixture
def tetrahedron():
    return Configuration([[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
