"""Grover search dynamics on register states.

The oracle is the phase form (sign flip on marked words); the diffusion step
is the O(N) inversion about the mean amplitude, not a Hadamard sandwich.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np

from .qstate import RegisterState


@dataclass(frozen=True)
class MarkedSet:
    """Distinct marked basis indices of an n-qubit search space."""

    n: int
    indices: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"qubit count must be a positive integer, got {self.n!r}")
        idx = tuple(int(i) for i in self.indices)
        if len(set(idx)) != len(idx):
            raise ValueError("marked indices must be distinct")
        idx = tuple(sorted(idx))
        size = 1 << self.n
        if not 1 <= len(idx) < size:
            raise ValueError(f"need 1 <= r < {size} marked indices, got {len(idx)}")
        if idx[0] < 0 or idx[-1] >= size:
            raise ValueError(f"marked index out of range [0, {size})")
        object.__setattr__(self, "indices", idx)

    @property
    def r(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class GroverSchedule:
    """Optimal iteration counts: the exact formula and the small-r approximation."""

    tau_exact: int
    tau_approx: int
    t: int = 0

    def __post_init__(self):
        if self.tau_exact < 0 or self.tau_approx < 0:
            raise ValueError("iteration counts must be non-negative")


@dataclass(frozen=True)
class TrajectoryPoint:
    """Per-iteration record of a Grover run."""

    t: int
    mean_amplitude: complex
    success_prob: float
    groverian: float | None = None


def oracle_apply(state: RegisterState, marked: MarkedSet) -> RegisterState:
    """Flip the sign of every marked amplitude."""
    if state.n != marked.n:
        raise ValueError(f"qubit counts differ: state {state.n}, marked set {marked.n}")
    amps = state.amplitudes.copy()
    amps[list(marked.indices)] *= -1.0
    return RegisterState(state.n, amps)


def diffusion_apply(state: RegisterState) -> RegisterState:
    """Invert every amplitude about the mean: a_i -> 2*abar - a_i."""
    amps = state.amplitudes
    return RegisterState(state.n, 2.0 * amps.mean() - amps)


def grover_step(state: RegisterState, marked: MarkedSet) -> RegisterState:
    """One full Grover iteration: oracle then diffusion."""
    return diffusion_apply(oracle_apply(state, marked))


def success_probability(state: RegisterState, marked: MarkedSet) -> float:
    """Probability of measuring a marked word."""
    if state.n != marked.n:
        raise ValueError(f"qubit counts differ: state {state.n}, marked set {marked.n}")
    picked = state.amplitudes[list(marked.indices)]
    return float(np.sum(np.abs(picked) ** 2))


def success_probability_estimate(state0: RegisterState) -> float:
    """Leading-order success probability N*|abar|^2 of a Grover run from state0.

    Depends only on the mean amplitude; it is the marked-set average of the
    success probability at the optimal measurement time.
    """
    abar = state0.amplitudes.mean()
    return float(state0.dim * abs(abar) ** 2)


def optimal_iterations(n: int, r: int) -> GroverSchedule:
    """Optimal Grover iteration counts for r marked words among 2^n.

    Both formulas are evaluated exactly as written; for r approaching N the
    exact expression can go negative and is floored at zero.
    """
    size = 1 << n
    if not 1 <= r < size:
        raise ValueError(f"need 1 <= r < {size}, got r={r}")
    tau_approx = math.floor((math.pi / 4.0) * math.sqrt(size / r))
    exact = (math.pi / 2.0 - math.sqrt(r / (size - r))) / math.acos(1.0 - 2.0 * r / size)
    tau_exact = max(0, math.floor(exact))
    return GroverSchedule(tau_exact=tau_exact, tau_approx=tau_approx)


def run(
    state0: RegisterState,
    marked: MarkedSet,
    steps: int,
    record_groverian: bool = False,
    measure_opts=None,
) -> list[TrajectoryPoint]:
    """Trajectory of a Grover run, one point per t = 0..steps inclusive.

    The state sweep is sequential; when record_groverian is set the
    per-point measure evaluations run afterwards on the stored states.
    """
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if state0.n != marked.n:
        raise ValueError(f"qubit counts differ: state {state0.n}, marked set {marked.n}")
    states = [state0]
    current = state0
    for _ in range(steps):
        current = grover_step(current, marked)
        states.append(current)

    groverians: list[float | None] = [None] * len(states)
    if record_groverian:
        from .entanglement import OptimizerOptions, groverian_measure

        opts = measure_opts if measure_opts is not None else OptimizerOptions()
        groverians = [groverian_measure(s, opts).groverian for s in states]

    points = []
    for t, state in enumerate(states):
        points.append(
            TrajectoryPoint(
                t=t,
                mean_amplitude=complex(state.amplitudes.mean()),
                success_prob=success_probability(state, marked),
                groverian=groverians[t],
            )
        )
    return points


TRAJECTORY_HEADER = "t,mean_re,mean_im,p_success,groverian"


def write_trajectory_csv(
    points: Iterable[TrajectoryPoint], stream: TextIO, comment: str | None = None
) -> None:
    """Write trajectory points as CSV; the groverian column is empty when unrecorded."""
    if comment is not None:
        stream.write(f"# {comment}\n")
    stream.write(TRAJECTORY_HEADER + "\n")
    for p in points:
        g = "" if p.groverian is None else f"{p.groverian:.15g}"
        stream.write(
            f"{p.t},{p.mean_amplitude.real:.15g},{p.mean_amplitude.imag:.15g},"
            f"{p.success_prob:.15g},{g}\n"
        )
