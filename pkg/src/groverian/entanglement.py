"""Groverian entanglement measure and closed forms for symmetric families.

The measure maximizes the squared overlap of a state with the product-state
manifold via gradient ascent from many random starts; G = sqrt(1 - P_max).
Restarts are evaluated as one vectorized batch, which is both the fast path
and a deterministic realization of concurrent restarts: each batch row
evolves independently of the others, and the merge is max-by-value with
lowest restart index winning ties.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .qstate import (
    ProductAngles,
    RegisterState,
    canonicalize_complex_angles,
    canonicalize_real_thetas,
    overlap_batch,
    overlap_values,
)

REAL_MODE_TOL = 1e-12
_HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class OptimizerOptions:
    """Multi-start gradient ascent controls.

    `restarts=None` resolves to max(32, 8*n) for an n-qubit target.
    Restart k always draws its starting angles from the child stream
    spawn_key=(k,) of the seed, so best-of-k results are reproducible
    and independent of how many restarts run in total.
    """

    restarts: int | None = None
    max_iterations: int = 5000
    step_init: float = 0.3
    grad_tol: float = 1e-10
    value_tol: float = 1e-13
    seed: int = 0
    force_real_mode: bool | None = None

    def __post_init__(self):
        if self.restarts is not None and self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.step_init <= 0.0:
            raise ValueError("step_init must be > 0")
        if self.grad_tol <= 0.0 or self.value_tol <= 0.0:
            raise ValueError("tolerances must be > 0")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")

    def resolve_restarts(self, n: int) -> int:
        return self.restarts if self.restarts is not None else max(32, 8 * n)


@dataclass(frozen=True)
class MeasureResult:
    """Outcome of a measure evaluation, including per-restart diagnostics."""

    p_max: float
    groverian: float
    best_angles: ProductAngles
    restart_values: tuple[float, ...]
    converged_fraction: float

    def __post_init__(self):
        if not 0.0 <= self.p_max <= 1.0:
            raise ValueError(f"p_max out of [0, 1]: {self.p_max!r}")


def _initial_angles(seed: int, restarts: int, n: int, real_mode: bool):
    thetas = np.empty((restarts, n))
    phis = None if real_mode else np.empty((restarts, n))
    for k in range(restarts):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(k,)))
        if real_mode:
            thetas[k] = rng.uniform(-_HALF_PI, _HALF_PI, n)
        else:
            thetas[k] = rng.uniform(0.0, _HALF_PI, n)
            phis[k] = rng.uniform(0.0, 2.0 * math.pi, n)
    return thetas, phis


def _ascend_batch(a: np.ndarray, thetas: np.ndarray, phis: np.ndarray | None, opts: OptimizerOptions):
    """Gradient-ascend every batch row to a local maximum of the overlap.

    Each accepted move restarts the backtracking search at step_init and
    halves until the value strictly increases. A row stops when its
    gradient norm falls under grad_tol, an accepted move improves by less
    than value_tol, or no step length yields an increase (treated as
    converged); rows that exhaust max_iterations are flagged unconverged.
    """
    rows, n = thetas.shape
    real_mode = phis is None
    min_step = opts.step_init * 2.0**-60
    # halving levels evaluated as one batch per round; the first improving
    # level wins, which is exactly sequential halving with fewer kernel calls
    ladder = 0.5 ** np.arange(8)

    values, grads = overlap_batch(thetas, phis, a)
    alive = np.ones(rows, dtype=bool)
    converged = np.zeros(rows, dtype=bool)

    for _ in range(opts.max_iterations):
        idx = np.flatnonzero(alive)
        if idx.size == 0:
            break
        gnorm = np.linalg.norm(grads[idx], axis=1)
        flat = gnorm <= opts.grad_tol
        converged[idx[flat]] = True
        alive[idx[flat]] = False
        idx = idx[~flat]
        if idx.size == 0:
            break

        # step_init is a displacement in radians along the unit ascent
        # direction, so flat regions are crossed at full stride instead of
        # creeping with the raw gradient magnitude
        direction = grads[idx] / gnorm[~flat][:, None]

        gain = np.zeros(rows)
        accepted = np.zeros(rows, dtype=bool)
        pos = np.arange(idx.size)
        step = np.full(idx.size, opts.step_init)
        while pos.size:
            here = idx[pos]
            m = pos.size
            cand = step[pos][:, None] * ladder[None, :]
            prop_th = (
                thetas[here][:, None, :] + cand[:, :, None] * direction[pos][:, None, :n]
            ).reshape(-1, n)
            if real_mode:
                prop_th = canonicalize_real_thetas(prop_th)
                prop_ph = None
                trial = overlap_values(prop_th, None, a).reshape(m, -1)
            else:
                prop_ph = (
                    phis[here][:, None, :] + cand[:, :, None] * direction[pos][:, None, n:]
                ).reshape(-1, n)
                prop_th, prop_ph = canonicalize_complex_angles(prop_th, prop_ph)
                trial = overlap_values(prop_th, prop_ph, a).reshape(m, -1)

            better = trial > values[here][:, None]
            has = better.any(axis=1)
            level = np.argmax(better, axis=1)
            win = np.flatnonzero(has)
            hit = here[win]
            sel = win * ladder.size + level[win]
            thetas[hit] = prop_th[sel]
            if not real_mode:
                phis[hit] = prop_ph[sel]
            found = trial[win, level[win]]
            gain[hit] = found - values[hit]
            values[hit] = found
            accepted[hit] = True

            pos = pos[~has]
            step[pos] *= ladder[-1] * 0.5
            stuck = step[pos] < min_step
            dead = pos[stuck]
            converged[idx[dead]] = True
            alive[idx[dead]] = False
            pos = pos[~stuck]

        moved = np.flatnonzero(accepted & alive)
        tiny = moved[gain[moved] < opts.value_tol]
        converged[tiny] = True
        alive[tiny] = False

        live = np.flatnonzero(alive)
        if live.size == 0:
            break
        _, grads_live = overlap_batch(
            thetas[live], None if real_mode else phis[live], a
        )
        grads[live] = grads_live

    return values, thetas, phis, converged


def _basis_state_angles(psi: RegisterState, index: int, real_mode: bool) -> ProductAngles:
    bits = [(index >> (psi.n - k)) & 1 for k in range(1, psi.n + 1)]
    thetas = np.array([_HALF_PI if b else 0.0 for b in bits])
    return ProductAngles(thetas, np.zeros(psi.n), real_mode=real_mode)


def groverian_measure(psi: RegisterState, opts: OptimizerOptions | None = None) -> MeasureResult:
    """P_max over product states and G = sqrt(1 - P_max) for a pure state.

    States whose amplitudes are all real (to 1e-12) use the half-size real
    parameterization with signed sin(theta) unless force_real_mode says
    otherwise. A state with a single nonzero amplitude is a basis word and
    returns p_max = 1 without optimization.
    """
    if opts is None:
        opts = OptimizerOptions()

    if opts.force_real_mode is None:
        real_mode = psi.max_imag() <= REAL_MODE_TOL
    else:
        real_mode = opts.force_real_mode

    nonzero = np.flatnonzero(psi.amplitudes != 0)
    if nonzero.size == 1:
        angles = _basis_state_angles(psi, int(nonzero[0]), real_mode)
        return MeasureResult(
            p_max=1.0,
            groverian=0.0,
            best_angles=angles,
            restart_values=(1.0,),
            converged_fraction=1.0,
        )

    restarts = opts.resolve_restarts(psi.n)
    thetas, phis = _initial_angles(opts.seed, restarts, psi.n, real_mode)
    a = psi.amplitudes.real.copy() if real_mode else psi.amplitudes

    values, thetas, phis, converged = _ascend_batch(a, thetas, phis, opts)
    values = np.clip(values, 0.0, 1.0)

    best = int(np.argmax(values))  # ties resolve to the lowest restart index
    p_max = float(values[best])
    if real_mode:
        best_angles = ProductAngles(thetas[best], np.zeros(psi.n), real_mode=True)
    else:
        best_angles = ProductAngles(thetas[best], phis[best], real_mode=False)
    return MeasureResult(
        p_max=p_max,
        groverian=math.sqrt(1.0 - p_max),
        best_angles=best_angles,
        restart_values=tuple(float(v) for v in values),
        converged_fraction=float(np.mean(converged)),
    )


# ---------------------------------------------------------------------------
# Closed forms for the symmetric families.
# ---------------------------------------------------------------------------


def p_max_two_qubit(psi: RegisterState) -> float:
    """Two-qubit closed form: (1 + sqrt(1 - 4*|det D|^2)) / 2.

    D is the 2x2 matrix of amplitudes [[a00, a01], [a10, a11]]; valid for
    complex amplitudes.
    """
    if psi.n != 2:
        raise ValueError(f"closed form requires n=2, got n={psi.n}")
    d = psi.amplitudes.reshape(2, 2)
    det = d[0, 0] * d[1, 1] - d[0, 1] * d[1, 0]
    radicand = max(0.0, 1.0 - 4.0 * abs(det) ** 2)
    return 0.5 * (1.0 + math.sqrt(radicand))


def p_max_generalized_ghz(a0_sq: float) -> float:
    """P_max of a0|0..0> + a_last|1..1>: the larger of the two weights."""
    if not 0.0 <= a0_sq <= 1.0:
        raise ValueError(f"|a0|^2 out of [0, 1]: {a0_sq!r}")
    return max(a0_sq, 1.0 - a0_sq)


def p_max_w(n: int) -> float:
    """P_max of the n-qubit W state: (1 - 1/n)^(n-1), tending to 1/e."""
    if n < 2:
        raise ValueError(f"W state needs n >= 2, got {n}")
    return (1.0 - 1.0 / n) ** (n - 1)


def p_max_balanced(n: int) -> float:
    """P_max of the uniform superposition over all weight-n/2 words."""
    if n < 2 or n % 2:
        raise ValueError(f"balanced state needs even n >= 2, got {n}")
    return math.comb(n, n // 2) / 2.0**n


def entropy_from_pmax(p_max: float) -> float:
    """Binary entropy -p*log2(p) - (1-p)*log2(1-p) of a two-qubit P_max."""
    if not 0.0 <= p_max <= 1.0:
        raise ValueError(f"p_max out of [0, 1]: {p_max!r}")
    if p_max in (0.0, 1.0):
        return 0.0
    q = 1.0 - p_max
    return -p_max * math.log2(p_max) - q * math.log2(q)


MEASURE_HEADER = "p_max,groverian,restarts,converged_fraction,seed"


def write_measure_csv(
    result: MeasureResult, restarts: int, seed: int, stream: TextIO, comment: str | None = None
) -> None:
    """One-row CSV report of a measure evaluation."""
    if comment is not None:
        stream.write(f"# {comment}\n")
    stream.write(MEASURE_HEADER + "\n")
    stream.write(
        f"{result.p_max:.15g},{result.groverian:.15g},{restarts},"
        f"{result.converged_fraction:.15g},{seed}\n"
    )


def write_angles_dump(angles: ProductAngles, stream: TextIO) -> None:
    """One 'theta phi' pair per line for the maximizing product state."""
    for theta, phi in zip(angles.thetas, angles.phis):
        stream.write(f"{theta:.17g} {phi:.17g}\n")
