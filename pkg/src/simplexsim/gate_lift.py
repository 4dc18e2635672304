"""Lifting 2x2 operators to 8x8 real factors acting on slot deviations."""
from __future__ import annotations

import numpy as np

from .simplex_core import SimplexState

UNITARY_TOL = 1e-10

I4 = np.eye(4)

# cyclic block shuffle; on (x, -x, y, -y) it acts as multiplication by i
LAMBDA = np.array([
    [0, 0, 0, 1],
    [0, 0, 1, 0],
    [1, 0, 0, 0],
    [0, 1, 0, 0],
], dtype=float)

H_MAT = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
X_MAT = np.array([[0, 1], [1, 0]], dtype=complex)
Y_MAT = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z_MAT = np.array([[1, 0], [0, -1]], dtype=complex)
ID_MAT = np.eye(2, dtype=complex)
PROJ0 = np.diag([1.0, 0.0]).astype(complex)
PROJ1 = np.diag([0.0, 1.0]).astype(complex)


def rabi_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, s], [s, -c]], dtype=complex)


def phase_matrix(phi: float) -> np.ndarray:
    return np.array([[1, 0], [0, np.exp(1j * phi)]], dtype=complex)


def rk_matrix(k: int) -> np.ndarray:
    if k < 1:
        raise ValueError(f"rotation index must be >= 1, got {k}")
    return phase_matrix(2 * np.pi / 2 ** k)


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u, dtype=complex)
    return (u.shape == (2, 2) and bool(np.isfinite(u).all())
            and np.abs(u.conj().T @ u - np.eye(2)).max() <= tol)


def lift_operator(a: np.ndarray) -> np.ndarray:
    """``I4 (x) Re(a) + Lambda (x) Im(a)`` for any 2x2 complex matrix."""
    a = np.asarray(a, dtype=complex)
    if a.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {a.shape}")
    return np.kron(I4, a.real) + np.kron(LAMBDA, a.imag)


def lift_unitary(u: np.ndarray) -> np.ndarray:
    """8x8 factor tracking ``u`` on a slot deviation."""
    if not is_unitary(u):
        raise ValueError("matrix is not unitary within 1e-10")
    return lift_operator(u)


def is_phase_free(m: np.ndarray) -> bool:
    """True when ``m = I4 (x) R`` for a real 2x2 ``R`` (no imaginary part)."""
    m = np.asarray(m)
    return bool(np.array_equal(m, np.kron(I4, m[:2, :2])))


def apply_affine(m: np.ndarray, s: SimplexState) -> SimplexState:
    """``p -> m @ p`` on a one-slot state."""
    if s.n != 1:
        raise ValueError(f"single-slot transform applied to n={s.n} state")
    return SimplexState(1, m @ s.p, order=1)


def affine_full(m: np.ndarray, s_full: np.ndarray) -> np.ndarray:
    """The same map written on probabilities: ``(I - m) u / d + m s``."""
    d = m.shape[0]
    return (np.eye(d) - m) @ np.ones(d) / d + m @ s_full


def compose(m1: np.ndarray, m2: np.ndarray) -> np.ndarray:
    """Factor for ``m2`` followed by ``m1``."""
    return m1 @ m2


def row_square_sums(m: np.ndarray) -> np.ndarray:
    return (np.asarray(m) ** 2).sum(axis=1)


def hadamard() -> np.ndarray:
    return lift_unitary(H_MAT)


def rabi(theta: float) -> np.ndarray:
    return lift_unitary(rabi_matrix(theta))


def phase(phi: float) -> np.ndarray:
    return lift_unitary(phase_matrix(phi))


def pauli_x() -> np.ndarray:
    return lift_unitary(X_MAT)


def pauli_y() -> np.ndarray:
    return lift_unitary(Y_MAT)


def pauli_z() -> np.ndarray:
    return lift_unitary(Z_MAT)


def rotation_rk(k: int) -> np.ndarray:
    return lift_unitary(rk_matrix(k))


# The two projector factors used by controlled gates: even / odd support.
PROJ0_LIFT = lift_operator(PROJ0)
PROJ1_LIFT = lift_operator(PROJ1)
