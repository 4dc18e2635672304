"""Simulating qubits with vectors on 8^n-outcome probability simplices."""
__version__ = "0.1.0"

from .simplex_core import (CapacityError, NotInImageError, SimplexState,
                           map_qubit, map_state, unmap_qubit, validate_state)
from .multiqubit import (LiftedOp, apply_lifted, apply_sequence, lift_controlled,
                         lift_separable, lift_sum_separable, simplex_tensor_n, tau)
from .phase_order import gamma_n, omega_n, order_phases, reorder
from .measurement import (expect_overlap, expect_p, extract_amplitudes,
                          outcome_probabilities, projection_prob, qubit_probs)
from .algorithms import (BooleanOracle, qft_circuit, run_deutsch_jozsa,
                         run_inverse_qft, run_qft)
from .circuit import Circuit, GateSpec, parse_circuit, run_simplex
from .oracle_ref import StateVector, dft, differential_check, sv_simulate
