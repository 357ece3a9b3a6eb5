"""Constructors for the named register-state families and the CLI state specs."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qstate import RegisterState, load_state

NORM_TOL = 1e-12


@dataclass(frozen=True)
class MixSpec:
    """Two-component superposition spec: eta/GHZ or even/odd parity mix."""

    kind: str
    coefficient: float
    n: int

    def __post_init__(self):
        if self.kind not in ("eta_ghz", "even_odd"):
            raise ValueError(f"unknown mix kind {self.kind!r}")
        if not 0.0 <= self.coefficient <= 1.0:
            raise ValueError(f"mix coefficient out of [0, 1]: {self.coefficient!r}")

    def build(self) -> RegisterState:
        if self.kind == "eta_ghz":
            return eta_ghz_mix(self.n, self.coefficient)
        return even_odd_mix(self.n, self.coefficient)


@dataclass(frozen=True)
class RandomStateSpec:
    """Isotropic random pure state: Gaussian moduli with uniform phases."""

    n: int
    seed: int
    sigma: float = 1.0

    def __post_init__(self):
        if self.sigma <= 0.0:
            raise ValueError(f"sigma must be > 0, got {self.sigma!r}")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")

    def build(self) -> RegisterState:
        return random_state(self)


def eta(n: int) -> RegisterState:
    """Uniform superposition of all 2^n basis words."""
    size = 1 << n
    return RegisterState(n, np.full(size, 1.0 / math.sqrt(size), dtype=np.complex128))


def generalized_ghz(n: int, a0: complex, a_last: complex) -> RegisterState:
    """a0|0..0> + a_last|1..1> with |a0|^2 + |a_last|^2 = 1."""
    weight = abs(a0) ** 2 + abs(a_last) ** 2
    if abs(weight - 1.0) > NORM_TOL:
        raise ValueError(f"|a0|^2 + |a_last|^2 = {weight!r}, expected 1")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = a0
    amps[-1] = a_last
    return RegisterState(n, amps)


def ghz(n: int) -> RegisterState:
    """(|0..0> + |1..1>)/sqrt(2)."""
    inv = 1.0 / math.sqrt(2.0)
    return generalized_ghz(n, inv, inv)


def w_state(n: int) -> RegisterState:
    """Uniform superposition of the n weight-one words |2^(k-1)>."""
    if n < 2:
        raise ValueError(f"W state needs n >= 2, got {n}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[[1 << k for k in range(n)]] = 1.0 / math.sqrt(n)
    return RegisterState(n, amps)


def _popcounts(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.uint32)
    counts = np.zeros(1 << n, dtype=np.uint32)
    for k in range(n):
        counts += (idx >> k) & 1
    return counts


def balanced_state(n: int) -> RegisterState:
    """Uniform superposition of all words with exactly n/2 one-bits."""
    if n < 2 or n % 2:
        raise ValueError(f"balanced state needs even n >= 2, got {n}")
    support = _popcounts(n) == n // 2
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[support] = 1.0 / math.sqrt(math.comb(n, n // 2))
    return RegisterState(n, amps)


def eta_ghz_mix(n: int, a_ghz: float) -> RegisterState:
    """a_eta|eta> + a_ghz|GHZ>, a_eta fixed by normalization.

    The two components overlap (<eta|GHZ> = sqrt(2/N) > 0), so
    a_eta = -sqrt(2/N)*a_ghz + sqrt(1 - (1 - 2/N)*a_ghz^2).
    """
    if not 0.0 <= a_ghz <= 1.0:
        raise ValueError(f"a_ghz out of [0, 1]: {a_ghz!r}")
    size = 1 << n
    a_eta = -math.sqrt(2.0 / size) * a_ghz + math.sqrt(1.0 - (1.0 - 2.0 / size) * a_ghz**2)
    amps = np.full(size, a_eta / math.sqrt(size), dtype=np.complex128)
    amps[0] += a_ghz / math.sqrt(2.0)
    amps[-1] += a_ghz / math.sqrt(2.0)
    return RegisterState(n, amps)


def even_odd_mix(n: int, a_even: float) -> RegisterState:
    """a_even|psi_even> + sqrt(1 - a_even^2)|psi_odd>.

    psi_even (psi_odd) is the uniform superposition over the N/2 words with
    even (odd) bit parity; the components are orthogonal.
    """
    if not 0.0 <= a_even <= 1.0:
        raise ValueError(f"a_even out of [0, 1]: {a_even!r}")
    size = 1 << n
    even = (_popcounts(n) & 1) == 0
    amps = np.empty(size, dtype=np.complex128)
    scale = math.sqrt(2.0 / size)
    amps[even] = a_even * scale
    amps[~even] = math.sqrt(1.0 - a_even**2) * scale
    return RegisterState(n, amps)


def random_state(spec: RandomStateSpec) -> RegisterState:
    """Draw per spec: Gaussian amplitudes, normalize, take moduli, uniform phases."""
    size = 1 << spec.n
    rng = np.random.default_rng(spec.seed)
    draws = rng.normal(0.0, spec.sigma, size)
    draws /= np.linalg.norm(draws)
    phases = rng.uniform(0.0, 2.0 * math.pi, size)
    return RegisterState(spec.n, np.abs(draws) * np.exp(1j * phases))


def parse_state_spec(spec: str) -> RegisterState:
    """Build a state from a CLI spec token.

    Grammar: eta:N | ghz:N | genghz:N:A0SQ | w:N | balanced:N |
    etaghzmix:N:AGHZ | evenodd:N:AEVEN | random:N:seed=S[:sigma=X] |
    file:PATH. For genghz the third field is |a0|^2; the remaining weight
    goes to |1..1>, both amplitudes real and non-negative.
    """
    kind, _, rest = spec.partition(":")
    if kind == "file":
        if not rest:
            raise ValueError("file spec needs a path: file:PATH")
        return load_state(rest)

    fields = rest.split(":") if rest else []
    arity = {"eta": 1, "ghz": 1, "w": 1, "balanced": 1, "genghz": 2, "etaghzmix": 2, "evenodd": 2}
    if kind in arity:
        if len(fields) != arity[kind]:
            raise ValueError(f"state spec {spec!r}: expected {arity[kind]} ':'-separated fields")
    elif kind != "random":
        raise ValueError(f"unknown state spec {spec!r}")

    def _int(token: str) -> int:
        try:
            return int(token)
        except ValueError as exc:
            raise ValueError(f"state spec {spec!r}: bad integer {token!r}") from exc

    def _float(token: str) -> float:
        try:
            return float(token)
        except ValueError as exc:
            raise ValueError(f"state spec {spec!r}: bad number {token!r}") from exc

    if kind == "eta":
        return eta(_int(fields[0]))
    if kind == "ghz":
        return ghz(_int(fields[0]))
    if kind == "w":
        return w_state(_int(fields[0]))
    if kind == "balanced":
        return balanced_state(_int(fields[0]))
    if kind == "genghz":
        a0_sq = _float(fields[1])
        if not 0.0 <= a0_sq <= 1.0:
            raise ValueError(f"state spec {spec!r}: |a0|^2 out of [0, 1]")
        return generalized_ghz(_int(fields[0]), math.sqrt(a0_sq), math.sqrt(1.0 - a0_sq))
    if kind == "etaghzmix":
        return MixSpec("eta_ghz", _float(fields[1]), _int(fields[0])).build()
    if kind == "evenodd":
        return MixSpec("even_odd", _float(fields[1]), _int(fields[0])).build()

    # random:N:seed=S[:sigma=X]
    if not fields:
        raise ValueError(f"state spec {spec!r}: random needs at least random:N:seed=S")
    num, *options = fields
    seed = None
    sigma = 1.0
    for token in options:
        key, _, value = token.partition("=")
        if key == "seed":
            seed = _int(value)
        elif key == "sigma":
            sigma = _float(value)
        else:
            raise ValueError(f"state spec {spec!r}: unknown option {token!r}")
    if seed is None:
        raise ValueError(f"state spec {spec!r}: random needs seed=S")
    return RandomStateSpec(_int(num), seed, sigma).build()
