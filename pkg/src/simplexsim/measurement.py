"""Measurement quantities computed in deviation space.

Expectations use the bilinear form ``P^T L[A] P / 2**n`` on a phase-ordered
state.  Untagged states are ordered first, because a quadratic form cannot
recombine a phase that is split across slots.  Each Pauli string is written
as ``i**m (x) R_k`` with real ``R_k`` in ``{I, X, J, Z}`` (``Y = iJ``); the
real factors lift as ``I4 (x) R_k`` and the scalar ``i**m`` is carried by
``Lambda**m`` on the phase slot only.
"""
from __future__ import annotations

from functools import reduce
from itertools import product
from typing import Optional, Sequence, Union

import numpy as np

from .gate_lift import I4, ID_MAT, LAMBDA, PROJ0_LIFT, PROJ1_LIFT, X_MAT, Y_MAT, Z_MAT
from .multiqubit import LiftedOp, apply_to_tensor
from .phase_order import order_phases
from .simplex_core import NotInImageError, SimplexState, map_state

HERMITIAN_TOL = 1e-10
STRUCTURE_TOL = 1e-8

PAULIS = (ID_MAT, X_MAT, Y_MAT, Z_MAT)
_J = np.array([[0.0, -1.0], [1.0, 0.0]])
# real part R and power of i for each Pauli: sigma = i**m * R
_REAL_PAULI = ((np.eye(2), 0), (np.array([[0.0, 1.0], [1.0, 0.0]]), 0),
               (_J, 1), (np.diag([1.0, -1.0]), 0))

PauliTerms = Sequence[tuple[float, tuple[int, ...]]]
Observable = Union[np.ndarray, PauliTerms]


def qubit_probs(s: SimplexState) -> tuple[float, float]:
    """``(|c0|^2, |c1|^2)`` of a one-slot state."""
    if s.n != 1:
        raise ValueError(f"expected a single-slot state, got n={s.n}")
    p = s.p
    return float(p[0] ** 2 + p[4] ** 2), float(p[1] ** 2 + p[5] ** 2)


def is_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and bool(
        np.abs(a - a.conj().T).max() <= tol)


def pauli_coefficients(a: np.ndarray) -> np.ndarray:
    """Real weights ``a_S = tr(S A) / 2**n`` as a ``(4,) * n`` array."""
    a = np.asarray(a, dtype=complex)
    if not is_hermitian(a):
        raise ValueError("observable is not Hermitian within 1e-10")
    dim = a.shape[0]
    n = int(round(np.log2(dim)))
    if 2 ** n != dim:
        raise ValueError(f"observable size {dim} is not a power of two")
    # contract tr(S_k A) one qubit at a time; string axes accumulate at the end
    t = a.reshape((2,) * (2 * n))
    paulis = np.stack(PAULIS)  # (4, j, i): tr(S A) = sum S[j, i] A[i, j]
    for k in range(n):
        t = np.tensordot(paulis, t, axes=([2, 1], [0, n - k]))
        t = np.moveaxis(t, 0, -1)
    return np.real(t).reshape((4,) * n) / dim


def pauli_decompose(a: np.ndarray, tol: float = 1e-14) -> list[tuple[float, tuple[int, ...]]]:
    """Nonzero Pauli weights of a Hermitian matrix as ``(weight, string)`` pairs.

    Strings are index tuples into ``(I, X, Y, Z)``.
    """
    coeffs = pauli_coefficients(a)
    out = []
    for idx in product(range(4), repeat=coeffs.ndim):
        w = float(coeffs[idx])
        if abs(w) > tol:
            out.append((w, idx))
    return out


def pauli_matrix(idx: Sequence[int]) -> np.ndarray:
    return reduce(np.kron, [PAULIS[i] for i in idx])


def lift_pauli_string(idx: Sequence[int], order: int) -> tuple:
    """Factors lifting one Pauli string with phase slot ``order``."""
    n = len(idx)
    if not 1 <= order <= n:
        raise ValueError(f"phase order {order} outside 1..{n}")
    m = sum(_REAL_PAULI[i][1] for i in idx) % 4
    factors = []
    for k, i in enumerate(idx):
        r = _REAL_PAULI[i][0]
        if k == order - 1:
            factors.append(np.kron(np.linalg.matrix_power(LAMBDA, m), r))
        elif i == 0:
            factors.append(None)
        else:
            factors.append(np.kron(I4, r))
    return tuple(factors)


def lift_observable(a: Observable, n: int, order: int = 1) -> LiftedOp:
    """Term-structured lift of a Hermitian observable for phase slot ``order``."""
    terms = _as_pauli_terms(a, n)
    return LiftedOp(n, tuple((w, lift_pauli_string(idx, order))
                             for w, idx in terms))


def _as_pauli_terms(a: Observable, n: int) -> list[tuple[float, tuple[int, ...]]]:
    if isinstance(a, np.ndarray):
        if a.shape != (2 ** n, 2 ** n):
            raise ValueError(f"observable shape {a.shape} does not match n={n}")
        return pauli_decompose(a)
    terms = []
    for w, idx in a:
        if np.iscomplexobj(w) and np.imag(w) != 0:
            raise ValueError("Pauli-string weights must be real")
        idx = tuple(int(i) for i in idx)
        if len(idx) != n or any(i not in (0, 1, 2, 3) for i in idx):
            raise ValueError(f"bad Pauli string {idx!r} for n={n}")
        terms.append((float(np.real(w)), idx))
    return terms


def ensure_ordered(s: SimplexState) -> SimplexState:
    """Return ``s`` if tagged, else its order-1 form."""
    if s.order is not None:
        return s
    return order_phases(s, 1)


def _bilinear(op: LiftedOp, s: SimplexState) -> float:
    t = s.tensor()
    return float(np.vdot(t, apply_to_tensor(op, t)))


def _coeff_tensor(a: Observable, n: int) -> np.ndarray:
    if isinstance(a, np.ndarray):
        if a.shape != (2 ** n, 2 ** n):
            raise ValueError(f"observable shape {a.shape} does not match n={n}")
        return pauli_coefficients(a)
    coeffs = np.zeros((4,) * n)
    for w, idx in _as_pauli_terms(a, n):
        coeffs[idx] += w
    return coeffs


_Y_COUNT = np.array([0, 0, 1, 0])
_REAL_STACK = np.stack([r for r, _ in _REAL_PAULI])  # (4, 2, 2)


def bit_blocks(a: Observable, n: int) -> list[np.ndarray]:
    """Real ``2**n`` matrices ``B_m`` with ``A = sum_m i**m B_m``.

    ``B_m`` collects the real parts ``(x)_k R_k`` of every string whose number
    of Y factors is ``m`` mod 4.
    """
    coeffs = _coeff_tensor(a, n)
    ycount = sum(np.ix_(*[_Y_COUNT] * n)) % 4 if n > 1 else _Y_COUNT
    blocks = []
    for m in range(4):
        t = np.where(ycount == m, coeffs, 0.0)
        for _ in range(n):
            t = np.tensordot(t, _REAL_STACK, axes=([0], [0]))
        # axes are now (i1, j1, ..., in, jn)
        t = t.transpose(list(range(0, 2 * n, 2)) + list(range(1, 2 * n, 2)))
        blocks.append(t.reshape(2 ** n, 2 ** n))
    return blocks


def apply_observable(a: Observable, t: np.ndarray, order: int) -> np.ndarray:
    """``L[A] t`` for a deviation tensor ``t`` of shape ``(8,) * n``.

    Equal to applying :func:`lift_observable` but grouped by the power of i:
    each ``B_m`` acts on the bit axes and ``Lambda**m`` on the register axis
    of the phase slot.
    """
    n = t.ndim
    x = t.reshape((4, 2) * n)
    regs, bits = list(range(0, 2 * n, 2)), list(range(1, 2 * n, 2))
    flat = x.transpose(regs + bits).reshape(4 ** n, 2 ** n)
    out = np.zeros((4,) * n + (2,) * n)
    for m, b in enumerate(bit_blocks(a, n)):
        if not b.any():
            continue
        y = (flat @ b.T).reshape((4,) * n + (2,) * n)
        if m:
            lam = np.linalg.matrix_power(LAMBDA, m)
            y = np.moveaxis(np.tensordot(lam, y, axes=([1], [order - 1])), 0, order - 1)
        out += y
    # back to (r1, b1, ..., rn, bn)
    perm = [None] * (2 * n)
    for k in range(n):
        perm[2 * k] = k
        perm[2 * k + 1] = n + k
    return out.transpose(perm).reshape((8,) * n)


def expect_p(a: Observable, s: SimplexState) -> float:
    """``<psi|A|psi>`` of the pre-image state via ``P^T L[A] P / 2**n``."""
    s = ensure_ordered(s)
    t = s.tensor()
    return float(np.vdot(t, apply_observable(a, t, s.order))) / 2 ** s.n


def expect_overlap(a: Observable, s: SimplexState, tol: float = 1e-10) -> float:
    """``s^T T[A](s)`` on full probability vectors.

    ``T[A](s) = (I - M) u / d + M s``.  The result is checked against
    ``(1 + <A> / 4**n) / 8**n``; a mismatch beyond ``tol`` (relative to
    ``1 / 8**n``) raises ``ArithmeticError``.
    """
    s = ensure_ordered(s)
    n, d = s.n, s.dim
    full = s.full().reshape((8,) * n)
    u = np.ones_like(full)
    tu = (u - apply_observable(a, u, s.order)) / d
    val = float(np.vdot(full, tu + apply_observable(a, full, s.order)))
    expected = (1.0 + expect_p(a, s) / 4 ** n) / 8 ** n
    if abs(val - expected) * 8 ** n > tol:
        raise ArithmeticError(
            f"overlap {val!r} disagrees with bridge value {expected!r}")
    return val


def _bits(q: Union[str, Sequence[int]], n: int) -> tuple[int, ...]:
    bits = tuple(int(c) for c in q)
    if len(bits) != n:
        raise ValueError(f"bitstring length {len(bits)} != n={n}")
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"bitstring {q!r} contains non-binary digits")
    return bits


def projector_pauli_terms(bits: Sequence[int]) -> list[tuple[float, tuple[int, ...]]]:
    """``|q><q| = (x)_k (I + (-1)**q_k Z) / 2`` as ``2**n`` real strings."""
    n = len(bits)
    out = []
    for sel in product((0, 3), repeat=n):
        w = 1.0 / 2 ** n
        for b, i in zip(bits, sel):
            if i == 3 and b == 1:
                w = -w
        out.append((w, sel))
    return out


def projector_op(bits: Sequence[int]) -> LiftedOp:
    """Factor-wise lifted projector ``(x)_k P~_{q_k}``."""
    proj = (PROJ0_LIFT, PROJ1_LIFT)
    return LiftedOp(len(bits), ((1.0, tuple(proj[b] for b in bits)),))


def projection_prob(s: SimplexState, q: Union[str, Sequence[int]]) -> float:
    """``|<q|psi>|**2``; Pauli-string path for n <= 3, projector factors above."""
    bits = _bits(q, s.n)
    s = ensure_ordered(s)
    if s.n <= 3:
        op = lift_observable(projector_pauli_terms(bits), s.n, s.order)
    else:
        op = projector_op(bits)
    return _bilinear(op, s) / 2 ** s.n


def outcome_probabilities(s: SimplexState) -> np.ndarray:
    """All ``2**n`` projection probabilities, big-endian outcome index.

    On an ordered state the projector form reduces to summing squared
    deviation entries over the phase registers of every slot.
    """
    s = ensure_ordered(s)
    n = s.n
    t = s.p.reshape((4, 2) * n) ** 2
    t = t.sum(axis=tuple(range(0, 2 * n, 2)))
    return t.reshape(-1) / 2 ** n


def extract_amplitudes(s: SimplexState, sigma: Optional[int] = None) -> np.ndarray:
    """Read ``c_q`` from a ``sigma``-ordered state.

    ``Re c_q`` sits at base-8 digits ``(q_1..q_n)`` and ``Im c_q`` at the same
    digits with digit ``sigma`` raised by 4.  The full support pattern is
    verified against a fresh mapping of the extracted amplitudes.
    """
    if sigma is None:
        if s.order is None:
            raise ValueError("state carries no phase-order tag")
        sigma = s.order
    n = s.n
    if not 1 <= sigma <= n:
        raise ValueError(f"phase order {sigma} outside 1..{n}")
    t = s.p.reshape((4, 2) * n)
    re = t[tuple(0 if k % 2 == 0 else slice(None) for k in range(2 * n))]
    im = t[tuple((2 if k == 2 * (sigma - 1) else 0) if k % 2 == 0 else slice(None)
                 for k in range(2 * n))]
    c = (re + 1j * im).reshape(-1)
    norm = float(np.vdot(c, c).real)
    if abs(norm - 1.0) > STRUCTURE_TOL:
        raise NotInImageError(f"extracted amplitudes have norm^2 {norm}")
    rebuilt = map_state(c / np.sqrt(norm), order=sigma).p
    err = float(np.abs(rebuilt * np.sqrt(norm) - s.p).max())
    if err > STRUCTURE_TOL:
        raise NotInImageError(
            f"state is not {sigma}-ordered (support residual {err:.3g})")
    return c


__all__ = [
    "PAULIS", "qubit_probs", "is_hermitian", "pauli_coefficients",
    "pauli_decompose", "pauli_matrix", "bit_blocks", "apply_observable",
    "lift_pauli_string", "lift_observable", "ensure_ordered", "expect_p",
    "expect_overlap", "projector_pauli_terms", "projector_op",
    "projection_prob", "outcome_probabilities", "extract_amplitudes",
]
