"""Single-qubit map from complex amplitudes to 8-outcome probability vectors.

A qubit ``c0|0> + c1|1>`` is stored as ``s = (u + p) / 8`` where ``u`` is the
all-ones vector and ``p = (x0, x1, -x0, -x1, y0, y1, -y0, -y1)`` with
``x = Re(c)``, ``y = Im(c)``.  Index ``2 * block + bit`` addresses block
``(+re, -re, +im, -im)`` and logical bit ``0/1``.

n-slot states keep only the deviation ``p`` (length ``8**n``, row-major,
slot 1 is the leftmost tensor factor); the uniform part is implicit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

NORM_TOL = 1e-9
MAX_QUBITS = 8


class CapacityError(ValueError):
    """Raised when a state would exceed the dense-storage qubit cap."""


class NotInImageError(ValueError):
    """Raised when a vector is not the image of a normalized qubit state."""


@dataclass(frozen=True, eq=False)
class SimplexState:
    """Canonical-form simplex state ``(u^{(x)n} + p) / 8**n``.

    ``order`` is the phase-order tag: the 1-based slot holding the whole
    absolute phase of every expansion term, or ``None`` when the phase may
    be spread over several slots (e.g. after arbitrary gates).
    """

    n: int
    p: np.ndarray = field(repr=False)
    order: Optional[int] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be positive, got {self.n}")
        if self.n > MAX_QUBITS:
            raise CapacityError(
                f"{self.n} qubits exceeds the dense cap of {MAX_QUBITS}")
        p = np.asarray(self.p, dtype=float).reshape(-1)
        if p.size != 8 ** self.n:
            raise ValueError(f"deviation length {p.size} != 8**{self.n}")
        if self.order is not None and not 1 <= self.order <= self.n:
            raise ValueError(f"phase order {self.order} outside 1..{self.n}")
        p = p.copy()
        p.flags.writeable = False
        object.__setattr__(self, "p", p)

    @property
    def dim(self) -> int:
        return 8 ** self.n

    def tensor(self) -> np.ndarray:
        """Deviation viewed as an ``(8,) * n`` array, axis k = slot k+1."""
        return self.p.reshape((8,) * self.n)

    def full(self) -> np.ndarray:
        """Materialize the probability vector ``(u + p) / 8**n``."""
        return (1.0 + self.p) / self.dim

    def with_order(self, order: Optional[int]) -> "SimplexState":
        return SimplexState(self.n, self.p, order)

    @classmethod
    def from_full(cls, s: np.ndarray, n: int,
                  order: Optional[int] = None) -> "SimplexState":
        s = np.asarray(s, dtype=float).reshape(-1)
        return cls(n, s * 8 ** n - 1.0, order)


def p_basis(b: int) -> np.ndarray:
    """Deviation of the logical state ``|b>``."""
    if b not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {b!r}")
    p = np.zeros(8)
    p[b] = 1.0
    p[b + 2] = -1.0
    return p


def p_general(b: int, c: complex) -> np.ndarray:
    """Deviation contributed by amplitude ``c`` on logical state ``|b>``."""
    if b not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {b!r}")
    c = complex(c)
    p = np.zeros(8)
    p[b], p[b + 2] = c.real, -c.real
    p[b + 4], p[b + 6] = c.imag, -c.imag
    return p


def _check_amplitudes(*amps: complex) -> None:
    for c in amps:
        if not np.isfinite(c):
            raise ValueError(f"non-finite amplitude {c!r}")


def map_qubit(c0: complex, c1: complex) -> SimplexState:
    """Map a normalized qubit ``c0|0> + c1|1>`` to a one-slot simplex state."""
    c0, c1 = complex(c0), complex(c1)
    _check_amplitudes(c0, c1)
    norm = abs(c0) ** 2 + abs(c1) ** 2
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"amplitudes not normalized: |c0|^2+|c1|^2 = {norm}")
    return SimplexState(1, p_general(0, c0) + p_general(1, c1), order=1)


def unmap_qubit(s: SimplexState, tol: float = 1e-9) -> tuple[complex, complex]:
    """Exact left inverse of :func:`map_qubit`."""
    if s.n != 1:
        raise ValueError(f"expected a single-slot state, got n={s.n}")
    p = s.p
    if (np.abs(p[0:2] + p[2:4]).max() > tol
            or np.abs(p[4:6] + p[6:8]).max() > tol):
        raise NotInImageError(
            "deviation lacks the (x, -x, y, -y) sign structure")
    return complex(p[0], p[4]), complex(p[1], p[5])


def map_state(amplitudes: Sequence[complex], order: int = 1) -> SimplexState:
    """Phase-ordered map of a general n-qubit state.

    Every expansion term ``c_q |q>`` becomes ``P_{q_order}(c_q)`` in slot
    ``order`` tensored with the real basis deviations ``p_{q_k}`` elsewhere.
    Amplitudes are indexed big-endian: qubit 1 is the most significant bit.
    """
    c = np.asarray(amplitudes, dtype=complex).reshape(-1)
    n = int(round(np.log2(c.size))) if c.size else 0
    if c.size < 2 or 2 ** n != c.size:
        raise ValueError(f"amplitude count {c.size} is not a power of two >= 2")
    if n > MAX_QUBITS:
        raise CapacityError(f"{n} qubits exceeds the dense cap of {MAX_QUBITS}")
    if not 1 <= order <= n:
        raise ValueError(f"phase order {order} outside 1..{n}")
    _check_amplitudes(*c)
    norm = float(np.vdot(c, c).real)
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"amplitudes not normalized: sum |c|^2 = {norm}")

    # slot tensor t[r_1, b_1, ..., r_n, b_n]; r = 0/1/2/3 is the +re/-re/+im/-im block
    amps = c.reshape((2,) * n)
    t = np.zeros((4, 2) * n)
    real_idx = [slice(None)] * (2 * n)
    for k in range(n):
        real_idx[2 * k] = 0
    for block, sign, part in ((0, 1.0, amps.real), (1, -1.0, amps.real),
                              (2, 1.0, amps.imag), (3, -1.0, amps.imag)):
        idx = list(real_idx)
        idx[2 * (order - 1)] = block
        t[tuple(idx)] = sign * part
    # the other slots carry gamma = (+1, -1, 0, 0) on their block axis
    for k in range(n):
        if k == order - 1:
            continue
        idx = [slice(None)] * (2 * n)
        idx[2 * k] = 1
        src = [slice(None)] * (2 * n)
        src[2 * k] = 0
        t[tuple(idx)] = -t[tuple(src)]
    return SimplexState(n, t.reshape(-1), order=order if n > 1 else 1)


@dataclass(frozen=True)
class StateDiagnostics:
    """Residuals of the canonical-form constraints; all should be ~0."""

    min_entry: float
    max_entry: float
    sum_deviation: float
    u_dot_p: float
    norm_residual: float
    sign_residual: float

    @property
    def range_violation(self) -> float:
        return max(0.0, -self.min_entry, self.max_entry - 1.0)

    def ok(self, tol: float = 1e-10) -> bool:
        return max(self.range_violation, self.sum_deviation,
                   abs(self.u_dot_p), self.norm_residual,
                   self.sign_residual) <= tol

    def as_dict(self) -> dict:
        return {
            "min_entry": self.min_entry,
            "max_entry": self.max_entry,
            "sum_deviation": self.sum_deviation,
            "u_dot_p": self.u_dot_p,
            "norm_residual": self.norm_residual,
            "sign_residual": self.sign_residual,
        }


def sign_residual(p: np.ndarray, n: int) -> float:
    """Largest violation of the per-slot ``(x, -x, y, -y)`` pairing."""
    t = np.asarray(p).reshape((4, 2) * n)
    worst = 0.0
    for k in range(n):
        a = np.moveaxis(t, 2 * k, 0)
        worst = max(worst,
                    float(np.abs(a[0] + a[1]).max()),
                    float(np.abs(a[2] + a[3]).max()))
    return worst


def validate_state(s: SimplexState) -> StateDiagnostics:
    """Report how far ``s`` is from a valid canonical-form simplex state.

    ``norm_residual`` compares ``|p|^2`` with ``2**n``, the value every
    normalized mapped state has (each slot deviation has norm sqrt 2).
    """
    full = s.full()
    return StateDiagnostics(
        min_entry=float(full.min()),
        max_entry=float(full.max()),
        sum_deviation=float(abs(full.sum() - 1.0)),
        u_dot_p=float(s.p.sum()),
        norm_residual=float(abs(np.dot(s.p, s.p) - 2.0 ** s.n)),
        sign_residual=sign_residual(s.p, s.n),
    )


def check_state(s: SimplexState, tol: float = 1e-10) -> SimplexState:
    d = validate_state(s)
    if not d.ok(tol):
        raise NotInImageError(f"invalid simplex state: {d.as_dict()}")
    return s
