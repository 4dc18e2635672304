"""Conventional state-vector simulator and direct DFT used as test oracles."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .circuit import (Circuit, GateSpec, SimplexTable, reference_action,
                      run_simplex)
from .measurement import outcome_probabilities
from .simplex_core import MAX_QUBITS, CapacityError, map_state, validate_state

SV_NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class StateVector:
    n: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if a.size != 2 ** self.n:
            raise ValueError(f"{a.size} amplitudes for n={self.n}")
        norm = float(np.vdot(a, a).real)
        if abs(norm - 1.0) > SV_NORM_TOL:
            raise ValueError(f"state not normalized: {norm}")
        object.__setattr__(self, "amplitudes", a)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def _apply_1q(psi: np.ndarray, u: np.ndarray, q: int) -> np.ndarray:
    # psi has shape (2,)*n; qubit q (1-based) is axis q-1
    return np.moveaxis(np.tensordot(u, psi, axes=([1], [q - 1])), 0, q - 1)


def apply_gate(psi: np.ndarray, g: GateSpec) -> np.ndarray:
    """Apply one gate to a ``(2,)*n`` amplitude tensor."""
    action = reference_action(g)
    kind = action[0]
    if kind == "identity":
        return psi
    if kind == "single":
        return _apply_1q(psi, action[1], g.slots[0])
    if kind == "controlled":
        c, t = g.slots
        out = psi.copy()
        sel = [slice(None)] * psi.ndim
        sel[c - 1] = 1
        sub = psi[tuple(sel)]
        # target axis index shifts down by one when it follows the control
        t_ax = t - 1 if t < c else t - 2
        out[tuple(sel)] = np.moveaxis(
            np.tensordot(action[1], sub, axes=([1], [t_ax])), 0, t_ax)
        return out
    if kind == "swap":
        a, b = g.slots
        return np.swapaxes(psi, a - 1, b - 1)
    raise ValueError(f"unknown reference action {kind!r}")


def sv_simulate(circuit: Circuit, init: Optional[StateVector] = None) -> StateVector:
    """Run ``circuit`` gate by gate; the global phase is kept exactly."""
    if init is None:
        init = StateVector(circuit.n, circuit.init_amplitudes())
    if init.n != circuit.n:
        raise ValueError(f"init has {init.n} qubits, circuit has {circuit.n}")
    psi = init.amplitudes.reshape((2,) * circuit.n)
    for g in circuit.gates:
        psi = apply_gate(psi, g)
    return StateVector(circuit.n, psi.reshape(-1))


def _check_length(x: np.ndarray) -> int:
    size = x.size
    if size < 1 or size & (size - 1):
        raise ValueError(f"sequence length {size} is not a power of two")
    return size


def dft(x) -> np.ndarray:
    """``y_k = L**-0.5 * sum_j exp(2 pi i j k / L) x_j`` by direct summation."""
    x = np.asarray(x, dtype=complex).reshape(-1)
    size = _check_length(x)
    jk = np.outer(np.arange(size), np.arange(size))
    return np.exp(2j * np.pi * jk / size) @ x / np.sqrt(size)


def idft(y) -> np.ndarray:
    y = np.asarray(y, dtype=complex).reshape(-1)
    size = _check_length(y)
    jk = np.outer(np.arange(size), np.arange(size))
    return np.exp(-2j * np.pi * jk / size) @ y / np.sqrt(size)


@dataclass(frozen=True)
class DiffReport:
    n: int
    gate_count: int
    max_abs_dev: float
    tolerance: float
    state_residual: float

    @property
    def passed(self) -> bool:
        return self.max_abs_dev <= self.tolerance

    def as_dict(self) -> dict:
        return {"n": self.n, "gate_count": self.gate_count,
                "max_abs_dev": self.max_abs_dev, "tolerance": self.tolerance,
                "state_residual": self.state_residual, "passed": self.passed}


def differential_check(circuit: Circuit, init_amplitudes=None, tolerance: float = 1e-9,
                       table: Optional[SimplexTable] = None) -> DiffReport:
    """Run both engines from the same init and compare all outcome probabilities."""
    if circuit.n > MAX_QUBITS:
        raise CapacityError(f"{circuit.n} qubits exceeds cap {MAX_QUBITS}")
    amps = (circuit.init_amplitudes() if init_amplitudes is None
            else np.asarray(init_amplitudes, dtype=complex))
    s = run_simplex(circuit, map_state(amps, order=1), table=table)
    ref = sv_simulate(circuit, StateVector(circuit.n, amps))
    probs = outcome_probabilities(s)
    dev = float(np.abs(probs - ref.probabilities()).max())
    diag = validate_state(s)
    resid = max(diag.range_violation, diag.sum_deviation, abs(diag.u_dot_p))
    return DiffReport(circuit.n, len(circuit.gates), dev, tolerance, resid)


FUZZ_KINDS = ("H", "Y", "Z", "CR", "CX", "SWAP")


def random_circuit(n: int, depth: int, rng: np.random.Generator,
                   kinds=FUZZ_KINDS) -> Circuit:
    """Seeded random circuit over ``kinds``; two-qubit kinds need n >= 2."""
    usable = [k for k in kinds if n >= 2 or k in ("H", "Y", "Z", "R", "X")]
    gates = []
    for _ in range(depth):
        kind = usable[int(rng.integers(len(usable)))]
        if kind in ("CR", "CX", "CZ", "CY", "SWAP"):
            a, b = rng.choice(n, size=2, replace=False) + 1
            slots = (int(a), int(b))
        else:
            slots = (int(rng.integers(n)) + 1,)
        param = float(rng.uniform(0, 2 * np.pi)) if kind in ("Y", "Z", "CZ", "CY") else None
        k = int(rng.integers(2, n + 2)) if kind in ("R", "CR") else None
        gates.append(GateSpec(kind, slots, param, k))
    return Circuit(n, tuple(gates))


def random_product_init(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random product of normalized single-qubit states with random phases."""
    amps = np.ones(1, dtype=complex)
    for _ in range(n):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        amps = np.kron(amps, v / np.linalg.norm(v))
    return amps


__all__ = [
    "StateVector", "apply_gate", "sv_simulate", "dft", "idft", "DiffReport",
    "differential_check", "FUZZ_KINDS", "random_circuit", "random_product_init",
]
