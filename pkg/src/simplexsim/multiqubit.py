"""Combining slots and applying Kronecker-structured lifted operators.

A :class:`LiftedOp` on ``n`` slots is a sum of terms
``coef * F_1 (x) ... (x) F_n`` with 8x8 real factors.  It is never
materialized; :func:`apply_lifted` applies each factor along its own axis.
Qubit/slot indices are 1-based in the public API.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Optional, Sequence

import numpy as np

from .gate_lift import (ID_MAT, PROJ0, PROJ0_LIFT, PROJ1, PROJ1_LIFT, X_MAT,
                        is_phase_free, lift_operator, lift_unitary)
from .simplex_core import MAX_QUBITS, CapacityError, SimplexState

Factor = Optional[np.ndarray]  # None stands for the 8x8 identity


@dataclass(frozen=True, eq=False)
class LiftedOp:
    n: int
    terms: tuple[tuple[float, tuple[Factor, ...]], ...]

    def __post_init__(self):
        if self.n > MAX_QUBITS:
            raise CapacityError(f"{self.n} slots exceeds cap {MAX_QUBITS}")
        for coef, factors in self.terms:
            if len(factors) != self.n:
                raise ValueError(
                    f"term has {len(factors)} factors, expected {self.n}")
            if isinstance(coef, complex) and coef.imag != 0:
                raise ValueError("lifted-op coefficients must be real")

    def phase_slots(self) -> set[int]:
        """1-based slots where some factor can move phase (non ``I4 (x) R``)."""
        out = set()
        for _, factors in self.terms:
            for k, f in enumerate(factors):
                if f is not None and not is_phase_free(f):
                    out.add(k + 1)
        return out

    def dense(self) -> np.ndarray:
        """Full 8^n x 8^n matrix; for tests at small n only."""
        if self.n > 3:
            raise CapacityError("refusing to materialize a lifted op for n > 3")
        eye = np.eye(8)
        total = np.zeros((8 ** self.n, 8 ** self.n))
        for coef, factors in self.terms:
            mats = [eye if f is None else f for f in factors]
            total += coef * reduce(np.kron, mats)
        return total


def identity_op(n: int) -> LiftedOp:
    return LiftedOp(n, ((1.0, (None,) * n),))


def _support(f: np.ndarray):
    rows = np.flatnonzero(np.any(f != 0, axis=1))
    cols = np.flatnonzero(np.any(f != 0, axis=0))
    return rows, cols


def apply_to_tensor(op: LiftedOp, t: np.ndarray) -> np.ndarray:
    """Apply ``op`` to a deviation tensor of shape ``(8,) * n``.

    Each term gathers the sub-block selected by its factors' column supports,
    applies the restricted factors axis by axis and scatters into the rows'
    support, so projector-like factors cost only their support size.
    """
    n = op.n
    out = np.zeros_like(t, dtype=float)
    full = np.arange(8)
    for coef, factors in op.terms:
        if coef == 0:
            continue
        in_idx, out_idx, subs = [], [], []
        empty = False
        for f in factors:
            if f is None:
                in_idx.append(full)
                out_idx.append(full)
                subs.append(None)
                continue
            rows, cols = _support(f)
            if rows.size == 0:
                empty = True
                break
            in_idx.append(cols)
            out_idx.append(rows)
            subs.append(f[np.ix_(rows, cols)])
        if empty:
            continue
        restricted = any(i.size < 8 for i in in_idx) or any(
            o.size < 8 for o in out_idx)
        x = t[np.ix_(*in_idx)] if restricted else t
        for k, sub in enumerate(subs):
            if sub is None:
                continue
            if (sub.shape[0] == sub.shape[1]
                    and np.array_equal(in_idx[k], out_idx[k])
                    and np.count_nonzero(sub - np.diag(np.diag(sub))) == 0):
                shape = [1] * n
                shape[k] = sub.shape[0]
                x = x * np.diag(sub).reshape(shape)
            else:
                x = np.moveaxis(np.tensordot(sub, x, axes=([1], [k])), 0, k)
        if restricted:
            out[np.ix_(*out_idx)] += coef * x
        else:
            out += coef * x
    return out


def apply_lifted(op: LiftedOp, s: SimplexState) -> SimplexState:
    """``p -> sum_terms coef * (F_1 (x) ... (x) F_n) p``.

    The phase-order tag survives when every phase-moving factor sits in the
    tagged slot; otherwise the result is untagged.
    """
    if op.n != s.n:
        raise ValueError(f"operator on {op.n} slots applied to {s.n}-slot state")
    p = apply_to_tensor(op, s.tensor()).reshape(-1)
    order = s.order
    if order is not None and not op.phase_slots() <= {order}:
        order = None
    if s.n == 1:
        order = 1
    return SimplexState(s.n, p, order)


def apply_sequence(ops: Iterable[LiftedOp], s: SimplexState) -> SimplexState:
    for op in ops:
        s = apply_lifted(op, s)
    return s


def compose_lifted(*ops: LiftedOp) -> LiftedOp:
    """Single op equal to applying ``ops`` right to left (like matrix product).

    Terms whose factor product vanishes are dropped.
    """
    n = ops[0].n
    if any(o.n != n for o in ops):
        raise ValueError("slot counts differ")

    def mul(a: Factor, b: Factor) -> Factor:
        if a is None:
            return b
        if b is None:
            return a
        return a @ b

    terms = ops[-1].terms
    for op in reversed(ops[:-1]):
        new = []
        for ca, fa in op.terms:
            for cb, fb in terms:
                fs = tuple(mul(a, b) for a, b in zip(fa, fb))
                if any(f is not None and not f.any() for f in fs):
                    continue
                new.append((ca * cb, fs))
        terms = tuple(new)
    return LiftedOp(n, terms)


# -- combining slots ---------------------------------------------------------

def pi_reflect(s: SimplexState) -> SimplexState:
    """``p -> -p``: the sign-flipped copy used to cancel cross terms."""
    return SimplexState(s.n, -s.p, s.order)


def tau(s1: SimplexState, s2: SimplexState) -> SimplexState:
    """Bi-affine combination; in deviation form it is ``p1 (x) p2``."""
    n = s1.n + s2.n
    if n > MAX_QUBITS:
        raise CapacityError(f"{n} slots exceeds cap {MAX_QUBITS}")
    return SimplexState(n, np.kron(s1.p, s2.p), _joint_order(s1, s2))


def _joint_order(s1: SimplexState, s2: SimplexState) -> Optional[int]:
    # a combination stays phase-ordered only if one side carries no imaginary part
    def real(s):
        t = s.p.reshape((4, 2) * s.n)
        return all(not np.moveaxis(t, 2 * k, 0)[2:].any() for k in range(s.n))
    if s1.order is not None and real(s2):
        return s1.order
    if s2.order is not None and real(s1):
        return s1.n + s2.order
    return None


def tau_full(s1_full: np.ndarray, s2_full: np.ndarray) -> np.ndarray:
    """Literal probability-space form ``(s1 (x) s2 + Pi(s1) (x) Pi(s2)) / 2``."""
    d1, d2 = s1_full.size, s2_full.size
    pi1 = 2.0 / d1 - s1_full
    pi2 = 2.0 / d2 - s2_full
    return 0.5 * (np.kron(s1_full, s2_full) + np.kron(pi1, pi2))


def simplex_tensor_n(states: Sequence[SimplexState]) -> SimplexState:
    """Right fold ``tau(s1, tau(s2, ... tau(s_{n-1}, s_n)))``."""
    if not states:
        raise ValueError("need at least one state")
    return reduce(lambda acc, s: tau(s, acc), reversed(states[:-1]), states[-1])


# -- lifting operators -------------------------------------------------------

def _check_slot(k: int, n: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"slot {k} outside 1..{n}")


def lift_separable(us: Sequence[Optional[np.ndarray]]) -> LiftedOp:
    """One-term lift of ``U_1 (x) ... (x) U_n``; ``None`` means identity."""
    factors = tuple(None if u is None else lift_unitary(u) for u in us)
    return LiftedOp(len(factors), ((1.0, factors),))


def lift_single(u: np.ndarray, slot: int, n: int) -> LiftedOp:
    _check_slot(slot, n)
    us = [None] * n
    us[slot - 1] = u
    return lift_separable(us)


def lift_controlled(control: int, target: int, u: np.ndarray, n: int) -> LiftedOp:
    """``P0~ @ control`` plus ``P1~ @ control, M[u] @ target``."""
    _check_slot(control, n)
    _check_slot(target, n)
    if control == target:
        raise ValueError("control and target must differ")
    f0 = [None] * n
    f0[control - 1] = PROJ0_LIFT
    f1 = [None] * n
    f1[control - 1] = PROJ1_LIFT
    f1[target - 1] = lift_unitary(u)
    return LiftedOp(n, ((1.0, tuple(f0)), (1.0, tuple(f1))))


def lift_sum_separable(terms: Sequence[tuple[float, Sequence[np.ndarray]]]) -> LiftedOp:
    """Lift ``sum_j a_j (x)_i A_ji`` factor-wise; the ``a_j`` must be real."""
    if not terms:
        raise ValueError("need at least one term")
    n = len(terms[0][1])
    out = []
    for coef, mats in terms:
        if np.iscomplexobj(coef) and np.imag(coef) != 0:
            raise ValueError(f"coefficient {coef!r} is not real")
        if len(mats) != n:
            raise ValueError("terms act on different slot counts")
        factors = tuple(None if m is None or np.array_equal(m, ID_MAT)
                        else lift_operator(m) for m in mats)
        out.append((float(np.real(coef)), factors))
    return LiftedOp(n, tuple(out))


def cnot(control: int, target: int, n: int) -> LiftedOp:
    return lift_controlled(control, target, X_MAT, n)


def swap_op(a: int, b: int, n: int) -> LiftedOp:
    """SWAP of slots ``a``, ``b`` as CNOT(a,b) CNOT(b,a) CNOT(a,b)."""
    return compose_lifted(cnot(a, b, n), cnot(b, a, n), cnot(a, b, n))


def swap_sum_separable(a: int, b: int, n: int) -> LiftedOp:
    """SWAP as ``sum_{x,y} |x><y| (x) |y><x|`` (four real terms)."""
    _check_slot(a, n)
    _check_slot(b, n)
    if a == b:
        raise ValueError("swap slots must differ")
    kets = [np.array([1, 0]), np.array([0, 1])]
    terms = []
    for x in (0, 1):
        for y in (0, 1):
            mats = [None] * n
            mats[a - 1] = np.outer(kets[x], kets[y]).astype(complex)
            mats[b - 1] = np.outer(kets[y], kets[x]).astype(complex)
            terms.append((1.0, mats))
    return lift_sum_separable(terms)


__all__ = [
    "Factor", "LiftedOp", "identity_op", "apply_to_tensor", "apply_lifted",
    "apply_sequence", "compose_lifted", "pi_reflect", "tau", "tau_full",
    "simplex_tensor_n", "lift_separable", "lift_single", "lift_controlled",
    "lift_sum_separable", "cnot", "swap_op", "swap_sum_separable",
    "PROJ0", "PROJ1",
]
