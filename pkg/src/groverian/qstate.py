"""Qubit register states, product-state angles, and overlap kernels.

Amplitude indexing convention: basis index i is read as the binary word
i_1 i_2 ... i_n with qubit 1 in the most significant position, so the
one-qubit state of qubit k contributes bit (i >> (n - k)) & 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

NORM_TOL = 1e-12
FIDELITY_TOL = 1e-9

_TWO_PI = 2.0 * math.pi
_HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class RegisterState:
    """Normalized pure state of an n-qubit register.

    Immutable: the amplitude buffer is copied on construction and marked
    read-only, so states can be shared freely across threads.
    """

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"qubit count must be a positive integer, got {self.n!r}")
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.n,):
            raise ValueError(
                f"expected {1 << self.n} amplitudes for n={self.n}, got shape {amps.shape}"
            )
        norm_sq = float(np.real(np.vdot(amps, amps)))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: sum |a_i|^2 = {norm_sq!r}")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 1 << self.n

    def max_imag(self) -> float:
        """Largest |Im a_i|, used to decide the real-amplitude fast path."""
        return float(np.max(np.abs(self.amplitudes.imag)))

    def is_real(self, tol: float = NORM_TOL) -> bool:
        return self.max_imag() <= tol


@dataclass(frozen=True)
class ProductAngles:
    """Angles (theta_k, phi_k) of a product state, one pair per qubit.

    Complex mode: 0 <= theta_k <= pi/2 and phi_k in [0, 2*pi), phases
    canonicalized modulo 2*pi on construction. Real mode: the phase
    freedom is absorbed into the sign of sin(theta), so
    -pi/2 <= theta_k <= pi/2 and every phi_k is zero.

    Out-of-range theta is an error, never a silent clamp.
    """

    thetas: np.ndarray
    phis: np.ndarray
    real_mode: bool = False

    def __post_init__(self):
        thetas = np.asarray(self.thetas, dtype=np.float64).copy()
        phis = np.asarray(self.phis, dtype=np.float64).copy()
        if thetas.ndim != 1 or thetas.size < 1:
            raise ValueError("thetas must be a non-empty 1-d sequence")
        if phis.shape != thetas.shape:
            raise ValueError("thetas and phis must have equal length")
        if self.real_mode:
            if np.any(phis != 0.0):
                raise ValueError("real mode requires all phases to be zero")
            if np.any(thetas < -_HALF_PI) or np.any(thetas > _HALF_PI):
                raise ValueError("real-mode theta out of range [-pi/2, pi/2]")
        else:
            if np.any(thetas < 0.0) or np.any(thetas > _HALF_PI):
                raise ValueError("theta out of range [0, pi/2]")
            phis = np.mod(phis, _TWO_PI)
        thetas.setflags(write=False)
        phis.setflags(write=False)
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "phis", phis)

    @property
    def n(self) -> int:
        return self.thetas.size

    @classmethod
    def real(cls, thetas: Sequence[float]) -> "ProductAngles":
        thetas = np.asarray(thetas, dtype=np.float64)
        return cls(thetas, np.zeros_like(thetas), real_mode=True)


def product_amplitudes(angles: ProductAngles, n: int) -> RegisterState:
    """Amplitude vector of the product state defined by `angles`.

    Coefficient of basis word i is the product over qubits of cos(theta_k)
    for bit 0 and exp(i*phi_k)*sin(theta_k) for bit 1.
    """
    if angles.n != n:
        raise ValueError(f"angles describe {angles.n} qubits, expected {n}")
    if angles.real_mode:
        amp = np.ones(1, dtype=np.float64)
        for theta in angles.thetas:
            amp = np.kron(amp, np.array([math.cos(theta), math.sin(theta)]))
        return RegisterState(n, amp.astype(np.complex128))
    amp = np.ones(1, dtype=np.complex128)
    for theta, phi in zip(angles.thetas, angles.phis):
        qubit = np.array(
            [math.cos(theta), complex(math.cos(phi), math.sin(phi)) * math.sin(theta)],
            dtype=np.complex128,
        )
        amp = np.kron(amp, qubit)
    return RegisterState(n, amp)


def inner_product(a: RegisterState, b: RegisterState) -> complex:
    """<b|a> = sum_i conj(b_i) * a_i."""
    if a.n != b.n:
        raise ValueError(f"qubit counts differ: {a.n} vs {b.n}")
    return complex(np.vdot(b.amplitudes, a.amplitudes))


def fidelity(a: RegisterState, b: RegisterState) -> float:
    """|<a|b>|^2, the global-phase-insensitive state comparison."""
    return float(abs(inner_product(a, b)) ** 2)


def overlap_probability(angles: ProductAngles, psi: RegisterState) -> float:
    """P = |<e|psi>|^2 for the product state |e> given by `angles`.

    Computed through the explicit product amplitudes so that it stays an
    independent reference for the fused kernels below.
    """
    e = product_amplitudes(angles, psi.n)
    return float(abs(np.vdot(e.amplitudes, psi.amplitudes)) ** 2)


def overlap_gradient(angles: ProductAngles, psi: RegisterState) -> np.ndarray:
    """Exact gradient of overlap_probability with respect to the angles.

    Returns d P / d(theta_1..theta_n, phi_1..phi_n) in complex mode
    (length 2n) or d P / d(theta_1..theta_n) in real mode (length n).
    """
    if angles.n != psi.n:
        raise ValueError(f"angles describe {angles.n} qubits, expected {psi.n}")
    thetas = angles.thetas[None, :]
    phis = None if angles.real_mode else angles.phis[None, :]
    _, grad = overlap_batch(thetas, phis, psi.amplitudes)
    return grad[0]


# ---------------------------------------------------------------------------
# Fused batched kernels.
#
# A product state contracts against the register tensor one qubit at a time;
# left partial contractions L_k and suffix weight vectors W_k give every
# single-qubit "environment" E_k in O(N) total work per batch row. These are
# the hot path of the overlap maximizer, evaluated for many restarts at once.
# ---------------------------------------------------------------------------


def _qubit_rows(thetas: np.ndarray, phis: np.ndarray | None):
    """Conjugated per-qubit contraction coefficients u_k(0), u_k(1)."""
    ct = np.cos(thetas)
    st = np.sin(thetas)
    if phis is None:
        return ct, st
    return ct, st * np.exp(-1j * phis)


def _left_chain(u0: np.ndarray, u1: np.ndarray, a: np.ndarray):
    """Partial contractions over qubits 1..k; last entry is <e|psi> per row."""
    rows, n = u0.shape
    half = a.reshape(2, -1)
    chain = [u0[:, 0, None] * half[0] + u1[:, 0, None] * half[1]]
    for k in range(1, n):
        prev = chain[-1].reshape(rows, 2, -1)
        chain.append(u0[:, k, None] * prev[:, 0] + u1[:, k, None] * prev[:, 1])
    return chain


def overlap_values(thetas: np.ndarray, phis: np.ndarray | None, a: np.ndarray) -> np.ndarray:
    """|<e|psi>|^2 for a batch of product states, one per row of `thetas`."""
    u0, u1 = _qubit_rows(thetas, phis)
    z = _left_chain(u0, u1, a)[-1][:, 0]
    return np.real(z * np.conj(z))


def overlap_batch(thetas: np.ndarray, phis: np.ndarray | None, a: np.ndarray):
    """Batched overlap probabilities and exact gradients.

    `thetas` has shape (rows, n); `phis` is None in real mode. `a` is the
    register amplitude vector (float64 allowed for real states). Returns
    (values, gradients) with gradients shaped (rows, n) in real mode and
    (rows, 2n) otherwise, ordered thetas first.
    """
    rows, n = thetas.shape
    ct = np.cos(thetas)
    st = np.sin(thetas)
    if phis is None:
        u0, u1 = ct, st
        d0, d1 = -st, ct
    else:
        phase = np.exp(-1j * phis)
        u0, u1 = ct, st * phase
        d0, d1 = -st, ct * phase

    chain = _left_chain(u0, u1, a)
    z = chain[-1][:, 0]

    # Suffix weights: W[k][rest] = prod_{j>k} u_j(b_j), Kronecker-ordered.
    suffix = [None] * (n + 1)
    w = np.ones((rows, 1), dtype=u1.dtype)
    suffix[n] = w
    for k in range(n, 1, -1):
        w = np.concatenate([u0[:, k - 1, None] * w, u1[:, k - 1, None] * w], axis=1)
        suffix[k - 1] = w

    grad_theta = np.empty((rows, n), dtype=np.float64)
    grad_phi = None if phis is None else np.empty((rows, n), dtype=np.float64)
    z_conj = np.conj(z)
    for k in range(1, n + 1):
        if k == 1:
            half = a.reshape(2, -1)
            e0 = suffix[1] @ half[0]
            e1 = suffix[1] @ half[1]
        else:
            prev = chain[k - 2].reshape(rows, 2, -1)
            e0 = np.sum(prev[:, 0] * suffix[k], axis=1)
            e1 = np.sum(prev[:, 1] * suffix[k], axis=1)
        dz_theta = d0[:, k - 1] * e0 + d1[:, k - 1] * e1
        grad_theta[:, k - 1] = 2.0 * np.real(z_conj * dz_theta)
        if grad_phi is not None:
            dz_phi = -1j * u1[:, k - 1] * e1
            grad_phi[:, k - 1] = 2.0 * np.real(z_conj * dz_phi)

    values = np.real(z * z_conj)
    if grad_phi is None:
        return values, grad_theta
    return values, np.concatenate([grad_theta, grad_phi], axis=1)


def canonicalize_real_thetas(thetas: np.ndarray) -> np.ndarray:
    """Wrap real-mode thetas into [-pi/2, pi/2).

    The shift by pi flips the global sign of the one-qubit state, which
    leaves every overlap probability exactly unchanged.
    """
    return np.mod(thetas + _HALF_PI, math.pi) - _HALF_PI


def canonicalize_complex_angles(thetas: np.ndarray, phis: np.ndarray):
    """Fold (theta, phi) into theta in [0, pi/2], phi in [0, 2*pi).

    Each fold (theta -> -theta or pi - theta, phi -> phi + pi) maps the
    angles to the same product state up to a global phase, so overlap
    probabilities are preserved exactly.
    """
    th = np.mod(thetas, _TWO_PI)
    ph = phis
    over_pi = th > math.pi
    if np.any(over_pi):
        th = np.where(over_pi, _TWO_PI - th, th)
        ph = np.where(over_pi, ph + math.pi, ph)
    over_half = th > _HALF_PI
    if np.any(over_half):
        th = np.where(over_half, math.pi - th, th)
        ph = np.where(over_half, ph + math.pi, ph)
    return th, np.mod(ph, _TWO_PI)


def hadamard_transform(state: RegisterState) -> RegisterState:
    """Apply the Hadamard gate to every qubit (fast Walsh transform, O(N log N))."""
    amp = state.amplitudes.astype(np.complex128)
    size = amp.size
    block = 1
    while block < size:
        amp = amp.reshape(-1, 2, block)
        amp = np.concatenate([amp[:, 0] + amp[:, 1], amp[:, 0] - amp[:, 1]], axis=1)
        block *= 2
    amp = amp.reshape(size) / math.sqrt(size)
    return RegisterState(state.n, amp)


def save_state(state: RegisterState, path: str | Path) -> None:
    """Write the plain-text state format: 'n=<int>' then one 're im' line per amplitude."""
    lines = [f"n={state.n}"]
    for value in state.amplitudes:
        lines.append(f"{value.real:.17g} {value.imag:.17g}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def load_state(path: str | Path) -> RegisterState:
    """Read the plain-text state format written by save_state."""
    raw = Path(path).read_text(encoding="ascii").split("\n")
    lines = [line.strip() for line in raw if line.strip()]
    if not lines or not lines[0].startswith("n="):
        raise ValueError(f"{path}: expected first line 'n=<int>'")
    try:
        n = int(lines[0][2:])
    except ValueError as exc:
        raise ValueError(f"{path}: bad qubit count {lines[0][2:]!r}") from exc
    if n < 1:
        raise ValueError(f"{path}: qubit count must be positive")
    body = lines[1:]
    if len(body) != (1 << n):
        raise ValueError(f"{path}: expected {1 << n} amplitude lines, found {len(body)}")
    amps = np.empty(1 << n, dtype=np.complex128)
    for i, line in enumerate(body):
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}: line {i + 2} is not 're im'")
        amps[i] = complex(float(parts[0]), float(parts[1]))
    return RegisterState(n, amps)
