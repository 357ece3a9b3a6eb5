"""Command-line experiment runner.

Verbs: measure, grover, fig1..fig5, random-sweep. Every run is a pure
function of its config and seed; reruns produce byte-identical CSVs. Each
CSV starts with one '#' comment line recording the resolved config, the
seed, and the artifact version.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import __version__
from .entanglement import (
    OptimizerOptions,
    groverian_measure,
    p_max_generalized_ghz,
    write_angles_dump,
    write_measure_csv,
)
from .grover_engine import MarkedSet, grover_step, optimal_iterations, run, write_trajectory_csv
from .qstate import fidelity, save_state
from .state_zoo import eta, even_odd_mix, eta_ghz_mix, generalized_ghz, parse_state_spec

_DEFAULT_A_EVEN = (math.sqrt(0.5), 0.984, 0.994, 1.0)


_RELEVANT_KEYS = {
    "measure": ("state", "restarts", "max_iterations", "seed", "tol"),
    "grover": ("state", "marked", "steps", "record_groverian", "restarts", "max_iterations", "seed", "tol"),
    "fig1": ("n", "grid", "restarts", "max_iterations", "seed", "tol"),
    "fig2": ("n", "grid", "restarts", "max_iterations", "seed", "tol"),
    "fig3": ("n", "marked", "steps", "a_even", "restarts", "max_iterations", "seed", "tol"),
    "fig4": ("n", "steps", "restarts", "max_iterations", "seed", "tol"),
    "fig5": ("n", "steps", "restarts", "max_iterations", "seed", "tol"),
    "random-sweep": ("n_list", "seeds_per_n", "restarts", "max_iterations", "seed", "tol"),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved settings of one experiment run."""

    experiment: str
    out: Path
    n: int | None = None
    state: str | None = None
    marked: str | None = None
    steps: int | None = None
    grid: int = 41
    restarts: int | None = None
    max_iterations: int | None = None
    seed: int = 0
    tol: float | None = None
    a_even: tuple[float, ...] = _DEFAULT_A_EVEN
    n_list: tuple[int, ...] = (4, 6, 8, 10)
    seeds_per_n: int = 50
    record_groverian: bool = False
    angles_out: Path | None = None
    dump_state: Path | None = None

    def __post_init__(self):
        if self.grid < 1:
            raise ValueError("grid must be >= 1")
        if self.seeds_per_n < 1:
            raise ValueError("seeds-per-n must be >= 1")

    @property
    def qubits(self) -> int:
        return self.n if self.n is not None else 12

    def optimizer_options(self) -> OptimizerOptions:
        kwargs = {"restarts": self.restarts, "seed": self.seed}
        if self.tol is not None:
            kwargs["grad_tol"] = self.tol
        if self.max_iterations is not None:
            kwargs["max_iterations"] = self.max_iterations
        return OptimizerOptions(**kwargs)

    def comment(self) -> str:
        parts = [f"groverian v{__version__}", f"experiment={self.experiment}"]
        for name in _RELEVANT_KEYS[self.experiment]:
            value = getattr(self, name)
            if value is None:
                continue
            if isinstance(value, tuple):
                value = ",".join(repr(v) if isinstance(v, float) else str(v) for v in value)
            elif isinstance(value, bool):
                value = str(value).lower()
            elif isinstance(value, float):
                value = repr(value)
            parts.append(f"{name}={value}")
        return " ".join(parts)


def parse_marked_spec(spec: str, n: int) -> MarkedSet:
    """Comma-separated basis indices, e.g. '0' or '0,4095'."""
    try:
        indices = tuple(int(tok) for tok in spec.split(","))
    except ValueError as exc:
        raise ValueError(f"malformed marked spec {spec!r}: expected comma-separated integers") from exc
    return MarkedSet(n, indices)


def _open_out(path: Path):
    try:
        return open(path, "w", encoding="ascii", newline="\n")
    except OSError as exc:
        raise ValueError(f"cannot write output {path}: {exc}") from exc


def _write_rows(cfg: ExperimentConfig, header: str, rows) -> None:
    def fmt(value) -> str:
        if isinstance(value, float):
            return f"{value:.15g}"
        return str(value)

    with _open_out(cfg.out) as stream:
        stream.write(f"# {cfg.comment()}\n")
        stream.write(header + "\n")
        for row in rows:
            stream.write(",".join(fmt(v) for v in row) + "\n")


def run_measure(cfg: ExperimentConfig):
    if cfg.state is None:
        raise ValueError("measure needs --state")
    psi = parse_state_spec(cfg.state)
    if cfg.n is not None and cfg.n != psi.n:
        raise ValueError(f"--n {cfg.n} conflicts with state spec ({psi.n} qubits)")
    opts = cfg.optimizer_options()
    result = groverian_measure(psi, opts)
    with _open_out(cfg.out) as stream:
        write_measure_csv(result, opts.resolve_restarts(psi.n), opts.seed, stream, cfg.comment())
    if cfg.angles_out is not None:
        with _open_out(cfg.angles_out) as stream:
            write_angles_dump(result.best_angles, stream)
    return result


def run_grover(cfg: ExperimentConfig):
    if cfg.state is None:
        raise ValueError("grover needs --state")
    if cfg.marked is None:
        raise ValueError("grover needs --marked")
    psi = parse_state_spec(cfg.state)
    if cfg.n is not None and cfg.n != psi.n:
        raise ValueError(f"--n {cfg.n} conflicts with state spec ({psi.n} qubits)")
    marked = parse_marked_spec(cfg.marked, psi.n)
    if marked.r / psi.dim > 0.25:
        print(
            f"warning: r/N = {marked.r}/{psi.dim} > 1/4; the optimal-iteration "
            "formulas assume r much smaller than N",
            file=sys.stderr,
        )
    steps = cfg.steps if cfg.steps is not None else optimal_iterations(psi.n, marked.r).tau_exact
    points = run(
        psi,
        marked,
        steps,
        record_groverian=cfg.record_groverian,
        measure_opts=cfg.optimizer_options(),
    )
    with _open_out(cfg.out) as stream:
        write_trajectory_csv(points, stream, cfg.comment())
    if cfg.dump_state is not None:
        final = psi
        for _ in range(steps):
            final = grover_step(final, marked)
        save_state(final, cfg.dump_state)
    return points


def run_fig1(cfg: ExperimentConfig):
    """Sweep the eta/GHZ mix: bare success probability vs optimized overlap."""
    n = cfg.qubits
    opts = cfg.optimizer_options()
    reference = eta(n)
    rows = []
    for a2 in np.linspace(0.0, 1.0, cfg.grid):
        psi = eta_ghz_mix(n, math.sqrt(a2))
        p_s = fidelity(reference, psi)
        p_max = groverian_measure(psi, opts).p_max
        rows.append((float(a2), p_s, p_max))
    _write_rows(cfg, "a2_ghz,p_s,p_max", rows)
    return rows


def run_fig2(cfg: ExperimentConfig):
    """Sweep generalized GHZ weights: numeric measure against the closed form.

    A grid point whose numeric/analytic residual exceeds 1e-4 fails the run;
    that residual is the global-search reliability gate.
    """
    n = cfg.qubits
    opts = cfg.optimizer_options()
    rows = []
    for a0_sq in np.linspace(0.0, 1.0, cfg.grid):
        psi = generalized_ghz(n, math.sqrt(a0_sq), math.sqrt(1.0 - a0_sq))
        g_numeric = groverian_measure(psi, opts).groverian
        g_analytic = math.sqrt(1.0 - p_max_generalized_ghz(float(a0_sq)))
        rows.append((float(a0_sq), g_numeric, g_analytic))
    worst = max(abs(r[1] - r[2]) for r in rows)
    if worst > 1e-4:
        raise RuntimeError(f"fig2 residual {worst:.3g} exceeds 1e-4; optimizer unreliable")
    _write_rows(cfg, "a0_sq,g_numeric,g_analytic", rows)
    return rows


def run_fig3(cfg: ExperimentConfig):
    """Measure along Grover trajectories from even/odd parity mixes, m=0 marked."""
    n = cfg.qubits
    steps = cfg.steps if cfg.steps is not None else 50
    cfg = replace(cfg, marked="0")  # the fixed marked word, recorded in the header
    opts = cfg.optimizer_options()
    marked = MarkedSet(n, (0,))
    rows = []
    for a_even in cfg.a_even:
        points = run(even_odd_mix(n, a_even), marked, steps, True, opts)
        rows.extend((a_even, p.t, p.groverian) for p in points)
    _write_rows(cfg, "a_even,t,groverian", rows)
    return rows


def run_fig4(cfg: ExperimentConfig):
    """Two marked words from eta: extreme pair {0, N-1} vs adjacent pair {0, 1}."""
    n = cfg.qubits
    size = 1 << n
    steps = cfg.steps if cfg.steps is not None else optimal_iterations(n, 2).tau_exact
    opts = cfg.optimizer_options()
    start = eta(n)
    curves = [
        run(start, MarkedSet(n, pair), steps, True, opts)
        for pair in ((0, size - 1), (0, 1))
    ]
    rows = [
        (t, curves[0][t].groverian, curves[1][t].groverian) for t in range(steps + 1)
    ]
    _write_rows(cfg, "t,g_variant1,g_variant2", rows)
    return rows


def run_fig5(cfg: ExperimentConfig):
    """n marked words from eta: the W-state support vs the first n words."""
    n = cfg.qubits
    steps = cfg.steps if cfg.steps is not None else 30
    opts = cfg.optimizer_options()
    start = eta(n)
    variants = (
        tuple(1 << k for k in range(n)),
        tuple(range(n)),
    )
    curves = [run(start, MarkedSet(n, v), steps, True, opts) for v in variants]
    rows = [
        (t, curves[0][t].groverian, curves[1][t].groverian) for t in range(steps + 1)
    ]
    _write_rows(cfg, "t,g_w_support,g_prefix", rows)
    return rows


def run_random_sweep(cfg: ExperimentConfig):
    """Measure random states: seeds 0..seeds_per_n-1 (offset by --seed) per n."""
    opts = cfg.optimizer_options()
    rows = []
    for n in cfg.n_list:
        for j in range(cfg.seeds_per_n):
            state_seed = cfg.seed + j
            psi = parse_state_spec(f"random:{n}:seed={state_seed}")
            result = groverian_measure(psi, opts)
            rows.append(
                (n, state_seed, result.p_max, result.groverian, (1 << n) * result.p_max)
            )
    _write_rows(cfg, "n,seed,p_max,groverian,n_times_pmax", rows)
    return rows


_RUNNERS = {
    "measure": run_measure,
    "grover": run_grover,
    "fig1": run_fig1,
    "fig2": run_fig2,
    "fig3": run_fig3,
    "fig4": run_fig4,
    "fig5": run_fig5,
    "random-sweep": run_random_sweep,
}


def _comma_floats(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.split(","))


def _comma_ints(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="qubit count (figure experiments default to 12)")
    common.add_argument("--state", help="state spec, e.g. eta:12, ghz:8, random:10:seed=3, file:PATH")
    common.add_argument("--marked", help="marked basis indices, comma-separated")
    common.add_argument("--steps", type=int, help="iteration horizon (default: verb-specific)")
    common.add_argument("--restarts", type=int, help="optimizer restarts (default max(32, 8n))")
    common.add_argument("--max-iterations", type=int, help="optimizer iteration budget per restart")
    common.add_argument("--seed", type=int, default=0, help="base seed (default 0)")
    common.add_argument("--tol", type=float, help="optimizer gradient-norm tolerance (default 1e-10)")
    common.add_argument("--grid", type=int, default=41, help="sweep grid size (default 41)")
    common.add_argument("--out", type=Path, help="output CSV path (default <verb>.csv)")
    common.add_argument(
        "--config",
        type=Path,
        help="key=value file; entries override command-line flags",
    )

    parser = argparse.ArgumentParser(
        prog="groverian",
        description="Grover-search experiments and product-overlap entanglement measures.",
    )
    sub = parser.add_subparsers(dest="experiment", required=True)

    p = sub.add_parser("measure", parents=[common], help="measure one state")
    p.add_argument("--angles-out", type=Path, help="dump maximizing angles, one 'theta phi' per line")

    p = sub.add_parser("grover", parents=[common], help="run Grover iterations, write the trajectory")
    p.add_argument(
        "--record-groverian",
        action=argparse.BooleanOptionalAction,
        default=False,
        help="also measure every trajectory state",
    )
    p.add_argument("--dump-state", type=Path, help="write the final state in the text format")

    sub.add_parser("fig1", parents=[common], help="eta/GHZ mix sweep: p_s vs p_max")
    sub.add_parser("fig2", parents=[common], help="generalized GHZ sweep: numeric vs analytic G")

    p = sub.add_parser("fig3", parents=[common], help="trajectory measures from parity mixes")
    p.add_argument(
        "--a-even",
        type=_comma_floats,
        default=_DEFAULT_A_EVEN,
        help="comma-separated even-parity weights (default 1/sqrt(2),0.984,0.994,1)",
    )

    sub.add_parser("fig4", parents=[common], help="trajectory measures, two marked words")
    sub.add_parser("fig5", parents=[common], help="trajectory measures, n marked words")

    p = sub.add_parser("random-sweep", parents=[common], help="measure random states per qubit count")
    p.add_argument("--n-list", type=_comma_ints, default=(4, 6, 8, 10), help="qubit counts (default 4,6,8,10)")
    p.add_argument("--seeds-per-n", type=int, default=50, help="states per qubit count (default 50)")

    return parser


def _config_overrides(path: Path) -> list[str]:
    try:
        text = Path(path).read_text(encoding="ascii")
    except OSError as exc:
        raise ValueError(f"cannot read config {path}: {exc}") from exc
    extra: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        key = key.strip().replace("_", "-")
        value = value.strip()
        if not eq or not key:
            raise ValueError(f"{path}:{lineno}: expected 'key=value', got {raw!r}")
        if key == "config":
            raise ValueError(f"{path}:{lineno}: config files cannot nest")
        if value.lower() in ("true", "false"):
            extra.append(f"--{key}" if value.lower() == "true" else f"--no-{key}")
        else:
            extra.extend([f"--{key}", value])
    return extra


def _build_config(args: argparse.Namespace) -> ExperimentConfig:
    out = args.out if args.out is not None else Path(f"{args.experiment}.csv")
    kwargs = dict(
        experiment=args.experiment,
        out=out,
        n=args.n,
        state=args.state,
        marked=args.marked,
        steps=args.steps,
        grid=args.grid,
        restarts=args.restarts,
        max_iterations=args.max_iterations,
        seed=args.seed,
        tol=args.tol,
    )
    for name in ("a_even", "n_list", "seeds_per_n", "record_groverian", "angles_out", "dump_state"):
        if hasattr(args, name):
            kwargs[name] = getattr(args, name)
    return ExperimentConfig(**kwargs)


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.config is not None:
            args = parser.parse_args(list(argv) + _config_overrides(args.config))
        cfg = _build_config(args)
        _RUNNERS[cfg.experiment](cfg)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
