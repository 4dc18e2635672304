"""Deutsch-Jozsa and the quantum Fourier transform on simplex states."""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .circuit import Circuit, GateSpec, run_simplex
from .gate_lift import H_MAT, ID_MAT, PROJ0, PROJ1, X_MAT
from .multiqubit import (LiftedOp, apply_lifted, apply_sequence,
                         lift_separable, lift_sum_separable,
                         simplex_tensor_n, swap_op)
from .phase_order import order_phases, reorder
from .simplex_core import (MAX_QUBITS, CapacityError, SimplexState, map_qubit,
                           p_basis)

FACTOR_TOL = 1e-9
DJ_THRESHOLD = 0.5


@dataclass(frozen=True)
class BooleanOracle:
    """Truth table of ``f: {0,1}^n -> {0,1}``; entry ``z`` is big-endian."""

    n: int
    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(v) for v in self.table)
        if len(table) != 2 ** self.n:
            raise ValueError(f"table has {len(table)} entries, expected {2 ** self.n}")
        if any(v not in (0, 1) for v in table):
            raise ValueError("table entries must be 0 or 1")
        object.__setattr__(self, "table", table)

    @property
    def promise(self) -> str:
        ones = sum(self.table)
        if ones in (0, len(self.table)):
            return "constant"
        if 2 * ones == len(self.table):
            return "balanced"
        return "unknown"

    @classmethod
    def constant(cls, n: int, value: int = 0) -> "BooleanOracle":
        return cls(n, (value,) * 2 ** n)

    @classmethod
    def random_balanced(cls, n: int, rng: np.random.Generator) -> "BooleanOracle":
        table = np.zeros(2 ** n, dtype=int)
        table[rng.permutation(2 ** n)[: 2 ** (n - 1)]] = 1
        return cls(n, tuple(int(v) for v in table))


def build_dj_oracle(f: BooleanOracle) -> LiftedOp:
    """Lift of ``U_f = sum_z (x)_i P_{z_i} (x) X**f(z)`` (one real term per z)."""
    if f.n + 1 > MAX_QUBITS:
        raise CapacityError(f"{f.n + 1} slots exceeds cap {MAX_QUBITS}")
    proj = (PROJ0, PROJ1)
    terms = []
    for z, fz in zip(product((0, 1), repeat=f.n), f.table):
        mats = [proj[b] for b in z] + [X_MAT if fz else ID_MAT]
        terms.append((1.0, mats))
    return lift_sum_separable(terms)


def hadamard_all(n: int) -> LiftedOp:
    return lift_separable([H_MAT] * n)


def drop_last_slot(s: SimplexState, expected: np.ndarray,
                   tol: float = FACTOR_TOL) -> SimplexState:
    """Strip a known last-slot factor: ``P = P' (x) expected`` -> ``P'``."""
    if s.n < 2:
        raise ValueError("need at least two slots")
    e = np.asarray(expected, dtype=float).reshape(-1)
    if e.size != 8 or not e.any():
        raise ValueError("expected factor must be a nonzero length-8 deviation")
    mat = s.p.reshape(-1, 8)
    head = mat @ e / (e @ e)
    resid = float(np.abs(mat - np.outer(head, e)).max())
    if resid > tol:
        raise ValueError(f"last slot does not factor as expected (residual {resid:.3g})")
    order = s.order if s.order is not None and s.order < s.n else None
    return SimplexState(s.n - 1, head, order)


@dataclass(frozen=True)
class DJResult:
    verdict: str
    coefficient: float
    promise: str
    state: SimplexState
    oracle_terms: int

    @property
    def flag(self) -> Optional[str]:
        return None if self.promise != "unknown" else "promise-unverified"


def _all_zero_deviation(n: int) -> np.ndarray:
    return reduce(np.kron, [p_basis(0)] * n)


def run_deutsch_jozsa(f: BooleanOracle) -> DJResult:
    """Deutsch-Jozsa with deviation read-out of the all-zero coefficient."""
    n = f.n
    s = simplex_tensor_n([map_qubit(1, 0)] * n + [map_qubit(0, 1)])
    s = apply_lifted(hadamard_all(n + 1), s)
    oracle = build_dj_oracle(f)
    s = apply_lifted(oracle, s)
    minus = (p_basis(0) - p_basis(1)) / np.sqrt(2)
    s = drop_last_slot(s, minus)
    s = apply_lifted(hadamard_all(n), s)
    ref = _all_zero_deviation(n)
    coef = float(ref @ s.p / (ref @ ref))
    verdict = "constant" if abs(coef) > DJ_THRESHOLD else "balanced"
    return DJResult(verdict, coef, f.promise, s, len(oracle.terms))


def qft_circuit(n: int) -> Circuit:
    """Reversed-output QFT: H on slot i, then CR_k controlled by slot i+k-1."""
    if n < 1:
        raise ValueError("n must be positive")
    gates = []
    for i in range(1, n + 1):
        gates.append(GateSpec("H", (i,)))
        for k in range(2, n - i + 2):
            gates.append(GateSpec("CR", (i + k - 1, i), k=k))
    return Circuit(n, tuple(gates))


def swap_network(n: int) -> list[LiftedOp]:
    """SWAPs of pairs ``(1, n), (2, n-1), ...``."""
    return [swap_op(i, n + 1 - i, n) for i in range(1, n // 2 + 1)]


def _require_order(s: SimplexState) -> int:
    if s.order is None:
        raise ValueError("QFT input must carry a phase-order tag")
    return s.order


def run_qft(s: SimplexState) -> SimplexState:
    """Fourier transform of the encoded sequence, returned in the input order.

    The circuit leaves the phase spread over slots and the bits reversed, so
    the phase is collected into slot n, bits are swapped (phase registers stay
    put) and the phase is finally moved back to the caller's order.
    """
    sigma = _require_order(s)
    n = s.n
    out = run_simplex(qft_circuit(n), s)
    out = order_phases(out, n)
    out = apply_sequence(swap_network(n), out).with_order(n)
    return reorder(out, sigma)


def run_inverse_qft(s: SimplexState) -> SimplexState:
    """Inverse of :func:`run_qft` on a tagged state."""
    sigma = _require_order(s)
    n = s.n
    out = apply_sequence(swap_network(n), s)
    out = run_simplex(qft_circuit(n).inverse(), out)
    return order_phases(out, sigma)


__all__ = [
    "BooleanOracle", "build_dj_oracle", "hadamard_all", "drop_last_slot",
    "DJResult", "run_deutsch_jozsa", "qft_circuit", "swap_network",
    "run_qft", "run_inverse_qft",
]
