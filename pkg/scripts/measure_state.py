#!/usr/bin/env python3
"""Quick interactive helper: measure one state spec and print the result.

Example:
    python scripts/measure_state.py ghz:8
    python scripts/measure_state.py random:10:seed=7 --restarts 16
"""

import argparse

from groverian import OptimizerOptions, groverian_measure, parse_state_spec


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("state", help="state spec, e.g. ghz:8 or w:12")
    parser.add_argument("--restarts", type=int, default=None)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    psi = parse_state_spec(args.state)
    opts = OptimizerOptions(restarts=args.restarts, seed=args.seed)
    res = groverian_measure(psi, opts)
    print(f"state          {args.state}  (n={psi.n})")
    print(f"p_max          {res.p_max:.12f}")
    print(f"groverian      {res.groverian:.12f}")
    print(f"restarts       {opts.resolve_restarts(psi.n)}")
    print(f"converged      {res.converged_fraction:.2%}")


if __name__ == "__main__":
    main()
