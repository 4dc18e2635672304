"""Operators that move the stored absolute phase between tensor slots.

Within one slot the deviation index is ``(r, b)`` with a 4-valued phase
register ``r`` and a logical bit ``b``.  A state is *phase ordered* with
order ``sigma`` when every slot except ``sigma`` has register pattern
``gamma = (1, -1, 0, 0)``; slot ``sigma`` then carries ``c_q`` directly.

``Gamma`` contracts the phase registers of two adjacent slots (complex
multiplication) into one of them; ``Omega`` swaps the two registers.
Both are exact linear maps, so they act termwise on any superposition.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .multiqubit import LiftedOp, apply_sequence
from .simplex_core import SimplexState


@lru_cache(maxsize=None)
def omega_perm() -> np.ndarray:
    """8x8 permutation with ``omega @ (u2 (x) v4) = v4 (x) u2``."""
    w = np.zeros((8, 8))
    for u in range(2):
        for v in range(4):
            w[v * 2 + u, u * 4 + v] = 1.0
    w.flags.writeable = False
    return w


@lru_cache(maxsize=None)
def iota_perm() -> np.ndarray:
    """16x16 permutation with ``iota @ (u4 (x) v4) = v4 (x) u4``."""
    m = np.zeros((16, 16))
    for u in range(4):
        for v in range(4):
            m[v * 4 + u, u * 4 + v] = 1.0
    m.flags.writeable = False
    return m


# Block pattern of the register contraction, indexed by (r1, r2) pairs.
# Row (r1, r2) sums the listed input pairs; each entry stands for an I4
# block over the two logical bits.
_G16_ROWS = {
    (0, 0): [(0, 0), (2, 3)],
    (0, 1): [(0, 1), (2, 2)],
    (0, 2): [(0, 2), (0, 3)],
    (0, 3): [(0, 2), (0, 3)],
    (1, 0): [(1, 0), (3, 3)],
    (1, 1): [(1, 1), (3, 2)],
    (1, 2): [(1, 2), (1, 3)],
    (1, 3): [(1, 2), (1, 3)],
    (2, 0): [(0, 2), (2, 0)],
    (2, 1): [(0, 3), (2, 1)],
    (2, 2): [(2, 2), (2, 3)],
    (2, 3): [(2, 2), (2, 3)],
    (3, 0): [(1, 2), (3, 0)],
    (3, 1): [(1, 3), (3, 1)],
    (3, 2): [(3, 2), (3, 3)],
    (3, 3): [(3, 2), (3, 3)],
}


@lru_cache(maxsize=None)
def gamma_block() -> np.ndarray:
    """16x16 block pattern of the contraction matrix."""
    g = np.zeros((16, 16))
    for (r1, r2), cols in _G16_ROWS.items():
        for c1, c2 in cols:
            g[r1 * 4 + r2, c1 * 4 + c2] = 1.0
    return g


@lru_cache(maxsize=None)
def gamma_tilde() -> np.ndarray:
    """64x64 contraction acting on ``(r1, r2, b1, b2)`` ordering."""
    return np.kron(gamma_block(), np.eye(4))


def _untangle() -> np.ndarray:
    # (r1, b1, r2, b2) -> (r1, r2, b1, b2)
    return np.kron(np.kron(np.eye(4), omega_perm()), np.eye(2))


@lru_cache(maxsize=None)
def omega2_matrix() -> np.ndarray:
    """64x64 order switch for two slots: swaps their phase registers."""
    w = _untangle()
    m = w.T @ np.kron(iota_perm(), np.eye(4)) @ w
    m.flags.writeable = False
    return m


@lru_cache(maxsize=None)
def gamma2_matrix(sigma: int) -> np.ndarray:
    """64x64 two-slot ordering map collecting both phases into ``sigma``."""
    if sigma not in (1, 2):
        raise ValueError(f"two-slot order must be 1 or 2, got {sigma}")
    w = _untangle()
    m = w.T @ gamma_tilde() @ w
    if sigma == 2:
        om = omega2_matrix()
        m = om @ m @ om
    m.flags.writeable = False
    return m


def decompose_two_slot(m: np.ndarray) -> LiftedOp:
    """Exact ``sum_j A_j (x) B_j`` form of a 64x64 matrix.

    Blocks ``A_kl[i, j] = m[8i+k, 8j+l]`` are grouped when equal, so the
    permutation-like ordering maps need at most 16 terms.
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (64, 64):
        raise ValueError(f"expected a 64x64 matrix, got {m.shape}")
    t = m.reshape(8, 8, 8, 8)  # (i, k, j, l)
    groups: list[tuple[np.ndarray, np.ndarray]] = []
    for k in range(8):
        for l in range(8):
            a = t[:, k, :, l]
            if not a.any():
                continue
            for ga, gb in groups:
                if np.array_equal(ga, a):
                    gb[k, l] = 1.0
                    break
            else:
                b = np.zeros((8, 8))
                b[k, l] = 1.0
                groups.append((a.copy(), b))
    return LiftedOp(2, tuple((1.0, (a, b)) for a, b in groups))


def _embed(op2: LiftedOp, j: int, n: int) -> LiftedOp:
    """Place a two-slot op on slots ``(j, j+1)`` with identities elsewhere."""
    if not 1 <= j <= n - 1:
        raise ValueError(f"adjacent pair start {j} outside 1..{n - 1}")
    terms = []
    for coef, (a, b) in op2.terms:
        f = [None] * n
        f[j - 1], f[j] = a, b
        terms.append((coef, tuple(f)))
    return LiftedOp(n, tuple(terms))


@lru_cache(maxsize=None)
def gamma2(sigma: int) -> LiftedOp:
    return decompose_two_slot(gamma2_matrix(sigma))


@lru_cache(maxsize=None)
def omega2() -> LiftedOp:
    return decompose_two_slot(omega2_matrix())


def omega_n(n: int, j: int) -> LiftedOp:
    """Order switch between adjacent slots ``j`` and ``j+1``."""
    return _embed(omega2(), j, n)


def gamma_n(n: int, sigma: int) -> list[LiftedOp]:
    """Ordered list of ops (first applied first) collecting all phase in ``sigma``.

    Order 1 is the cascade over pairs ``(n-1, n)`` down to ``(1, 2)``; order
    ``sigma`` conjugates order ``sigma - 1`` with the switch on
    ``(sigma - 1, sigma)``.
    """
    if not 1 <= sigma <= n:
        raise ValueError(f"phase order {sigma} outside 1..{n}")
    if n == 1:
        return []
    ops = [_embed(gamma2(1), j, n) for j in range(n - 1, 0, -1)]
    for k in range(1, sigma):
        sw = omega_n(n, k)
        ops = [sw] + ops + [sw]
    return ops


def order_phases(s: SimplexState, sigma: int = 1) -> SimplexState:
    """Apply the ordering map for ``sigma`` and tag the result."""
    return apply_sequence(gamma_n(s.n, sigma), s).with_order(sigma)


def reorder(s: SimplexState, target: int) -> SimplexState:
    """Move the phase of an ordered state from ``s.order`` to ``target``."""
    if s.order is None:
        raise ValueError("state carries no phase-order tag; call order_phases")
    if not 1 <= target <= s.n:
        raise ValueError(f"phase order {target} outside 1..{s.n}")
    src = s.order
    if src < target:
        ops = [omega_n(s.n, j) for j in range(src, target)]
    else:
        ops = [omega_n(s.n, j) for j in range(src - 1, target - 1, -1)]
    return apply_sequence(ops, s).with_order(target)


__all__ = [
    "omega_perm", "iota_perm", "gamma_block", "gamma_tilde", "omega2_matrix",
    "gamma2_matrix", "decompose_two_slot", "gamma2", "omega2", "omega_n",
    "gamma_n", "order_phases", "reorder",
]
