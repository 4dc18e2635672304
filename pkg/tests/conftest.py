from functools import reduce

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_qubit(rng):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return v / np.linalg.norm(v)


def random_state(rng, n):
    v = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    return v / np.linalg.norm(v)


def random_unitary(rng, d=2):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (a + a.conj().T) / 2


def kron_all(mats):
    return reduce(np.kron, mats)


def embed(u, k, n):
    """Dense 2^n operator with ``u`` on qubit k (1-based)."""
    mats = [np.eye(2)] * n
    mats[k - 1] = u
    return kron_all(mats)


def controlled(c, t, u, n):
    p0 = [np.eye(2)] * n
    p0[c - 1] = np.diag([1, 0])
    p1 = [np.eye(2)] * n
    p1[c - 1] = np.diag([0, 1])
    p1[t - 1] = u
    return kron_all(p0) + kron_all(p1)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
