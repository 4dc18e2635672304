"""Gate descriptors, circuits, and the JSON circuit-file format.

File format::

    {"n": 2, "init": ["0", "0"],
     "gates": [{"kind": "H", "slots": [1]}, {"kind": "CX", "slots": [1, 2]}]}

Slots are 1-based.  ``param`` carries an angle, ``k`` a rotation index.
Controlled kinds list ``[control, target]``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import gate_lift as gl
from .multiqubit import (LiftedOp, apply_sequence, lift_controlled,
                         lift_single, swap_op)
from .phase_order import gamma_n, omega_n
from .simplex_core import MAX_QUBITS, CapacityError, SimplexState, map_state

SINGLE_KINDS = ("H", "X", "Y", "Z", "R")
CONTROLLED_KINDS = ("CX", "CR", "CZ", "CY")
OTHER_KINDS = ("SWAP", "GAMMA", "OMEGA")
ALL_KINDS = SINGLE_KINDS + CONTROLLED_KINDS + OTHER_KINDS

SimplexTable = Callable[["GateSpec", int], list[LiftedOp]]

_ARITY = {**{k: 1 for k in SINGLE_KINDS}, **{k: 2 for k in CONTROLLED_KINDS},
          "SWAP": 2, "GAMMA": 0, "OMEGA": 1}


class CircuitFormatError(ValueError):
    """Malformed circuit description."""


@dataclass(frozen=True)
class GateSpec:
    kind: str
    slots: tuple[int, ...]
    param: Optional[float] = None
    k: Optional[int] = None

    def validate(self, n: int) -> None:
        if self.kind not in ALL_KINDS:
            raise CircuitFormatError(f"unknown gate kind {self.kind!r}")
        if len(self.slots) != _ARITY[self.kind]:
            raise CircuitFormatError(
                f"{self.kind} takes {_ARITY[self.kind]} slot(s), got {list(self.slots)}")
        for q in self.slots:
            if not 1 <= q <= n:
                raise CircuitFormatError(f"slot {q} outside 1..{n}")
        if len(set(self.slots)) != len(self.slots):
            raise CircuitFormatError(f"repeated slot in {list(self.slots)}")
        if self.kind in ("Y", "Z", "CZ", "CY") and self.param is None:
            raise CircuitFormatError(f"{self.kind} needs 'param'")
        if self.kind in ("R", "CR") and (self.k is None or self.k < 1):
            raise CircuitFormatError(f"{self.kind} needs integer 'k' >= 1")
        if self.kind == "GAMMA":
            if self.k is None or not 1 <= self.k <= n:
                raise CircuitFormatError(f"GAMMA needs order 'k' in 1..{n}")
        if self.kind == "OMEGA" and self.slots[0] >= n:
            raise CircuitFormatError("OMEGA acts on slots (j, j+1); j must be < n")

    def matrix(self) -> Optional[np.ndarray]:
        """2x2 unitary acting on the (target) qubit; None for structural kinds."""
        kind = self.kind.removeprefix("C") if self.kind in CONTROLLED_KINDS else self.kind
        if kind == "H":
            return gl.H_MAT
        if kind == "X":
            return gl.X_MAT
        if kind == "Y":
            return gl.rabi_matrix(self.param)
        if kind == "Z":
            return gl.phase_matrix(self.param)
        if kind == "R":
            return gl.rk_matrix(self.k)
        return None

    def inverse(self) -> "GateSpec":
        """Inverse gate; Rk inverts to a phase gate with the negated angle."""
        if self.kind in ("H", "X", "Y", "CX", "CY", "SWAP", "OMEGA"):
            return self
        if self.kind in ("Z", "CZ"):
            return GateSpec(self.kind, self.slots, param=-self.param)
        if self.kind == "R":
            return GateSpec("Z", self.slots, param=-2 * np.pi / 2 ** self.k)
        if self.kind == "CR":
            return GateSpec("CZ", self.slots, param=-2 * np.pi / 2 ** self.k)
        raise ValueError(f"{self.kind} has no inverse")

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "slots": list(self.slots)}
        if self.param is not None:
            d["param"] = self.param
        if self.k is not None:
            d["k"] = self.k
        return d


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[GateSpec, ...] = ()
    init: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise CircuitFormatError(f"n must be positive, got {self.n}")
        if self.n > MAX_QUBITS:
            raise CapacityError(f"{self.n} qubits exceeds cap {MAX_QUBITS}")
        if self.init and len(self.init) != self.n:
            raise CircuitFormatError(
                f"init has {len(self.init)} tokens, expected {self.n}")
        for tok in self.init:
            parse_init_token(tok)
        for g in self.gates:
            g.validate(self.n)

    def init_amplitudes(self) -> np.ndarray:
        """Big-endian product amplitudes of the declared init tokens."""
        toks = self.init or ("0",) * self.n
        amps = np.ones(1, dtype=complex)
        for tok in toks:
            amps = np.kron(amps, np.array(parse_init_token(tok)))
        return amps

    def inverse(self) -> "Circuit":
        return Circuit(self.n, tuple(g.inverse() for g in reversed(self.gates)),
                       self.init)

    def to_dict(self) -> dict:
        return {"n": self.n, "init": list(self.init),
                "gates": [g.to_dict() for g in self.gates]}


_AMP_RE = re.compile(r"^amp\(([^,()]+),([^,()]+),([^,()]+),([^,()]+)\)$")


def parse_init_token(tok: str) -> tuple[complex, complex]:
    """Single-qubit amplitudes for an init token."""
    t = tok.replace(" ", "")
    r = 1 / np.sqrt(2)
    if t == "0":
        return 1 + 0j, 0j
    if t == "1":
        return 0j, 1 + 0j
    if t == "+":
        return complex(r), complex(r)
    if t == "-":
        return complex(r), complex(-r)
    m = _AMP_RE.match(t)
    if m:
        try:
            a, b, c, d = (float(x) for x in m.groups())
        except ValueError as exc:
            raise CircuitFormatError(f"bad number in init token {tok!r}") from exc
        c0, c1 = complex(a, b), complex(c, d)
        if abs(abs(c0) ** 2 + abs(c1) ** 2 - 1) > 1e-9:
            raise CircuitFormatError(f"init token {tok!r} is not normalized")
        return c0, c1
    raise CircuitFormatError(f"unknown init token {tok!r}")


def circuit_from_dict(d: dict) -> Circuit:
    if not isinstance(d, dict):
        raise CircuitFormatError("circuit must be a JSON object")
    try:
        n = d["n"]
    except KeyError as exc:
        raise CircuitFormatError("missing key 'n'") from exc
    if not isinstance(n, int) or isinstance(n, bool):
        raise CircuitFormatError("'n' must be an integer")
    init = d.get("init", ["0"] * n)
    if not isinstance(init, list) or not all(isinstance(t, str) for t in init):
        raise CircuitFormatError("'init' must be a list of strings")
    gates = []
    for i, g in enumerate(d.get("gates", [])):
        if not isinstance(g, dict) or "kind" not in g or "slots" not in g:
            raise CircuitFormatError(f"gate {i} needs 'kind' and 'slots'")
        param = g.get("param")
        k = g.get("k")
        try:
            gates.append(GateSpec(str(g["kind"]).upper(),
                                  tuple(int(q) for q in g["slots"]),
                                  None if param is None else float(param),
                                  None if k is None else int(k)))
        except (TypeError, ValueError) as exc:
            raise CircuitFormatError(f"gate {i}: {exc}") from exc
    return Circuit(n, tuple(gates), tuple(init))


def parse_circuit(text: str) -> Circuit:
    """Parse circuit JSON; ``json.JSONDecodeError`` propagates with position."""
    return circuit_from_dict(json.loads(text))


# -- gate tables --------------------------------------------------------------

def simplex_ops(g: GateSpec, n: int) -> list[LiftedOp]:
    """Lifted operators implementing ``g`` on an n-slot simplex state."""
    if g.kind in SINGLE_KINDS:
        return [lift_single(g.matrix(), g.slots[0], n)]
    if g.kind in CONTROLLED_KINDS:
        return [lift_controlled(g.slots[0], g.slots[1], g.matrix(), n)]
    if g.kind == "SWAP":
        return [swap_op(g.slots[0], g.slots[1], n)]
    if g.kind == "GAMMA":
        return gamma_n(n, g.k)
    if g.kind == "OMEGA":
        return [omega_n(n, g.slots[0])]
    raise ValueError(f"no simplex lift for {g.kind!r}")


def run_simplex(circuit: Circuit, state: Optional[SimplexState] = None,
                order: int = 1, table: Optional[SimplexTable] = None) -> SimplexState:
    """Execute ``circuit`` on ``state`` (default: its init mapped with ``order``).

    GAMMA gates tag the result with their order.
    """
    table = table or simplex_ops
    if state is None:
        state = map_state(circuit.init_amplitudes(), order=order)
    for g in circuit.gates:
        before = state.order
        state = apply_sequence(table(g, circuit.n), state)
        if g.kind == "GAMMA":
            state = state.with_order(g.k)
        elif g.kind == "OMEGA" and before is not None:
            # a register swap moves the tag across the pair, else leaves it
            j = g.slots[0]
            state = state.with_order({j: j + 1, j + 1: j}.get(before, before))
    return state


# Reference action descriptors: ("single", U), ("controlled", U), ("swap",),
# ("identity",).  Structural phase-order gates do not change the wavefunction.
def reference_action(g: GateSpec) -> tuple:
    if g.kind in SINGLE_KINDS:
        return ("single", g.matrix())
    if g.kind in CONTROLLED_KINDS:
        return ("controlled", g.matrix())
    if g.kind == "SWAP":
        return ("swap",)
    if g.kind in ("GAMMA", "OMEGA"):
        return ("identity",)
    raise ValueError(f"no reference action for {g.kind!r}")


def check_tables_exhaustive(kinds: Sequence[str] = ALL_KINDS) -> None:
    """Every kind must have both a simplex lift and a reference action."""
    for kind in kinds:
        slots = tuple(range(1, _ARITY[kind] + 1))
        g = GateSpec(kind, slots, param=0.3, k=2 if kind != "GAMMA" else 1)
        simplex_ops(g, 3)
        reference_action(g)


__all__ = [
    "ALL_KINDS", "SINGLE_KINDS", "CONTROLLED_KINDS", "CircuitFormatError",
    "GateSpec", "Circuit", "parse_init_token", "circuit_from_dict",
    "parse_circuit", "simplex_ops", "run_simplex", "reference_action", "SimplexTable",
    "check_tables_exhaustive",
]
