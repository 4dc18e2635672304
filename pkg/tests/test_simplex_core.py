import numpy as np
import pytest
from hypothesis import given, strategies as st

from simplexsim.simplex_core import (MAX_QUBITS, CapacityError, NotInImageError,
                                     SimplexState, map_qubit, map_state, p_basis,
                                     p_general, unmap_qubit, validate_state)

from conftest import random_qubit

R2 = 1 / np.sqrt(2)

finite = st.floats(-1, 1, allow_nan=False)
angles = st.floats(0, 2 * np.pi, allow_nan=False)


@st.composite
def qubits(draw):
    v = np.array([complex(draw(finite), draw(finite)), complex(draw(finite), draw(finite))])
    nrm = np.linalg.norm(v)
    if nrm < 1e-3:
        return 1 + 0j, 0j
    v = v / nrm
    return complex(v[0]), complex(v[1])


def test_basis_zero_deviation():
    assert np.array_equal(map_qubit(1, 0).p, [1, 0, -1, 0, 0, 0, 0, 0])
    assert np.array_equal(p_basis(0), [1, 0, -1, 0, 0, 0, 0, 0])


def test_basis_one_deviation():
    assert np.array_equal(map_qubit(0, 1).p, [0, 1, 0, -1, 0, 0, 0, 0])
    assert np.array_equal(p_basis(1), [0, 1, 0, -1, 0, 0, 0, 0])


def test_plus_state_deviation():
    assert np.allclose(map_qubit(R2, R2).p, [R2, R2, -R2, -R2, 0, 0, 0, 0], atol=0)


def test_imaginary_one_deviation():
    assert np.array_equal(map_qubit(0, 1j).p, [0, 0, 0, 0, 0, 1, 0, -1])


def test_zero_state_full_vector():
    assert np.allclose(map_qubit(1, 0).full(), np.array([2, 1, 0, 1, 1, 1, 1, 1]) / 8)


@pytest.mark.parametrize("b", [0, 1])
def test_p_general_unit_is_basis(b):
    assert np.array_equal(p_general(b, 1), p_basis(b))


def test_p_general_zero_and_imag():
    assert not p_general(0, 0).any() and not p_general(1, 0).any()
    assert np.array_equal(p_general(1, 1j), [0, 0, 0, 0, 0, 1, 0, -1])


def test_reject_unnormalized():
    with pytest.raises(ValueError):
        map_qubit(1, 1)


def test_reject_non_finite():
    with pytest.raises(ValueError):
        map_qubit(np.nan, 0)


def test_unmap_rejects_sign_violation():
    with pytest.raises(NotInImageError):
        unmap_qubit(SimplexState(1, np.array([1, 1, 0, 0, 0, 0, 0, 0.0])))


def test_unmap_round_trip_many(rng):
    worst = 0.0
    for _ in range(1000):
        c = random_qubit(rng)
        back = unmap_qubit(map_qubit(*c))
        worst = max(worst, abs(back[0] - c[0]), abs(back[1] - c[1]))
    assert worst < 1e-12


def test_map_is_not_linear():
    # phi(a psi + b chi) differs from a phi(psi) + b phi(chi) on the full vectors
    a = b = R2
    lhs = map_qubit(R2, R2).full()
    rhs = a * map_qubit(1, 0).full() + b * map_qubit(0, 1).full()
    assert np.abs(lhs - rhs).max() > 1e-3


@given(qubits())
def test_single_qubit_invariants(c):
    s = map_qubit(*c)
    full = s.full()
    assert abs(full.sum() - 1) < 1e-10
    assert full.min() >= -1e-12 and full.max() <= 1 + 1e-12
    assert abs(s.p.sum()) < 1e-10
    assert abs(np.linalg.norm(s.p) - np.sqrt(2)) < 1e-10
    assert abs(np.linalg.norm(full) - np.sqrt(10) / 8) < 1e-10
    assert validate_state(s).ok()


@given(finite, finite, finite, finite, st.integers(0, 1))
def test_p_general_additive(a, b, c, d, bit):
    c1, c2 = complex(a, b), complex(c, d)
    assert np.allclose(p_general(bit, c1 + c2), p_general(bit, c1) + p_general(bit, c2),
                       atol=1e-12, rtol=0)


@given(st.floats(0, 3), angles, st.integers(0, 1))
def test_p_general_scaling(r, phi, bit):
    e = np.exp(1j * phi)
    assert np.allclose(p_general(bit, r * e), r * p_general(bit, e), atol=1e-12, rtol=0)


def test_validate_flags_bad_sum():
    s = SimplexState.from_full(map_qubit(1, 0).full() * 1.01, 1)
    d = validate_state(s)
    assert d.sum_deviation > 1e-3 and not d.ok()


def test_map_state_product_matches_kron(rng):
    a, b = random_qubit(rng), random_qubit(rng)
    s = map_state(np.kron(a, b), order=1)
    # order 1 puts the product amplitude c_q into slot 1 and gamma into slot 2
    t = s.p.reshape(4, 2, 4, 2)
    amps = np.kron(a, b).reshape(2, 2)
    assert np.allclose(t[0, :, 0, :], amps.real)
    assert np.allclose(t[2, :, 0, :], amps.imag)
    assert np.allclose(t[:, :, 1, :], -t[:, :, 0, :])
    assert validate_state(s).ok()


def test_capacity_cap():
    with pytest.raises(CapacityError):
        SimplexState(MAX_QUBITS + 1, np.zeros(1))
    with pytest.raises(CapacityError):
        map_state(np.eye(1, 2 ** (MAX_QUBITS + 1))[0])


def test_map_state_bad_length():
    with pytest.raises(ValueError):
        map_state([1, 0, 0])


def test_state_is_immutable():
    s = map_qubit(1, 0)
    with pytest.raises(ValueError):
        s.p[0] = 3.0
