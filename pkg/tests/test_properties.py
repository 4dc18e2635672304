"""Property tests over randomly drawn states, gates and observables."""
import numpy as np
from hypothesis import given, strategies as st

from simplexsim.circuit import run_simplex
from simplexsim.measurement import expect_p, extract_amplitudes, outcome_probabilities
from simplexsim.multiqubit import apply_lifted, lift_controlled, simplex_tensor_n, tau
from simplexsim.oracle_ref import random_circuit, sv_simulate
from simplexsim.phase_order import order_phases, reorder
from simplexsim.simplex_core import map_qubit, map_state, validate_state

from conftest import random_hermitian, random_qubit, random_state, random_unitary

seeds = st.integers(0, 2 ** 32 - 1)
small_n = st.integers(2, 4)


def product_state(rng, n):
    return simplex_tensor_n([map_qubit(*random_qubit(rng)) for _ in range(n)])


@given(seeds)
def test_tau_closure_and_associativity(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (map_qubit(*random_qubit(rng)) for _ in range(3))
    left, right = tau(tau(a, b), c), tau(a, tau(b, c))
    assert np.abs(left.p - right.p).max() < 1e-12
    assert validate_state(left).ok(1e-12)


@given(seeds, small_n)
def test_controlled_lift_valid_output(seed, n):
    rng = np.random.default_rng(seed)
    c, t = rng.choice(n, size=2, replace=False) + 1
    s = product_state(rng, n)
    out = apply_lifted(lift_controlled(int(c), int(t), random_unitary(rng), n), s)
    assert abs(out.p.sum()) < 1e-12
    assert validate_state(out).ok(1e-10)


@given(seeds, small_n)
def test_random_circuit_probabilities(seed, n):
    rng = np.random.default_rng(seed)
    circ = random_circuit(n, 12, rng)
    s = run_simplex(circ)
    ref = sv_simulate(circ).probabilities()
    assert np.abs(outcome_probabilities(s) - ref).max() < 1e-9
    assert validate_state(s).ok(1e-10)


@given(seeds, small_n)
def test_expectation_independent_of_order(seed, n):
    rng = np.random.default_rng(seed)
    a = random_hermitian(rng, 2 ** n)
    s = order_phases(product_state(rng, n), 1)
    vals = [expect_p(a, reorder(s, k)) for k in range(1, n + 1)]
    assert np.ptp(vals) < 1e-10


@given(seeds, small_n)
def test_ordering_recovers_amplitudes(seed, n):
    rng = np.random.default_rng(seed)
    circ = random_circuit(n, 10, rng)
    s = run_simplex(circ)
    sigma = int(rng.integers(1, n + 1))
    amps = extract_amplitudes(order_phases(s, sigma), sigma)
    assert np.abs(amps - sv_simulate(circ).amplitudes).max() < 1e-10


@given(seeds, st.integers(1, 4))
def test_map_extract_identity(seed, n):
    rng = np.random.default_rng(seed)
    c = random_state(rng, n)
    sigma = int(rng.integers(1, n + 1))
    assert np.abs(extract_amplitudes(map_state(c, sigma)) - c).max() < 1e-12
