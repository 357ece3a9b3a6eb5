"""Shared helpers for the test suite."""

import numpy as np

from groverian import RegisterState


def random_register_state(rng: np.random.Generator, n: int, complex_amps: bool = True) -> RegisterState:
    v = rng.normal(size=1 << n)
    if complex_amps:
        v = v + 1j * rng.normal(size=1 << n)
    return RegisterState(n, v / np.linalg.norm(v))


def apply_qubit_rotation(psi: RegisterState, k: int, theta: float, phi: float) -> RegisterState:
    """Apply to qubit k (1-based, most significant first) the rotation sending
    |0> to cos(theta)|0> + e^{i phi} sin(theta)|1>."""
    u = np.array(
        [
            [np.cos(theta), -np.exp(-1j * phi) * np.sin(theta)],
            [np.exp(1j * phi) * np.sin(theta), np.cos(theta)],
        ]
    )
    tensor = psi.amplitudes.reshape((2,) * psi.n)
    moved = np.moveaxis(tensor, k - 1, 0)
    rotated = np.tensordot(u, moved, axes=([1], [0]))
    return RegisterState(psi.n, np.moveaxis(rotated, 0, k - 1).reshape(-1))


def permute_qubits(amps: np.ndarray, n: int, perm: list[int]) -> np.ndarray:
    """Relabel qubits: position j of the new register is old position perm[j]."""
    return np.transpose(amps.reshape((2,) * n), perm).reshape(-1)
