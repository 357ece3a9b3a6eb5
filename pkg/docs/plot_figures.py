#!/usr/bin/env python3
"""Sample plots for the CSVs written by `scripts/run_all_figures.py`.

Not a supported component: the CSVs are the deliverable, this script only
shows one way to render them. Requires matplotlib.

    python docs/plot_figures.py --indir results --outdir results/plots
"""

import argparse
import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_csv(path: Path):
    with open(path) as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    header, body = rows[0], rows[1:]
    cols = {name: [float(r[i]) if r[i] else None for r in body] for i, name in enumerate(header)}
    return cols


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--indir", type=Path, default=Path("results"))
    parser.add_argument("--outdir", type=Path, default=Path("results/plots"))
    args = parser.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    c = read_csv(args.indir / "fig1.csv")
    plt.figure()
    plt.plot(c["a2_ghz"], c["p_s"], "--", label="success probability")
    plt.plot(c["a2_ghz"], c["p_max"], "-", label="maximized overlap")
    plt.xlabel("GHZ weight squared")
    plt.ylabel("probability")
    plt.legend()
    plt.savefig(args.outdir / "fig1.png", dpi=150)

    c = read_csv(args.indir / "fig2.csv")
    plt.figure()
    plt.plot(c["a0_sq"], c["g_analytic"], "-", label="analytic")
    plt.plot(c["a0_sq"], c["g_numeric"], "o", mfc="none", markevery=2, label="numeric")
    plt.xlabel("|a0|^2")
    plt.ylabel("G")
    plt.legend()
    plt.savefig(args.outdir / "fig2.png", dpi=150)

    c = read_csv(args.indir / "fig3.csv")
    plt.figure()
    curves = {}
    for a_even, t, g in zip(c["a_even"], c["t"], c["groverian"]):
        curves.setdefault(a_even, []).append((t, g))
    for a_even, pts in sorted(curves.items()):
        pts.sort()
        plt.plot([p[0] for p in pts], [p[1] for p in pts], label=f"a_even={a_even:.4g}")
    plt.xlabel("iteration")
    plt.ylabel("G")
    plt.legend()
    plt.savefig(args.outdir / "fig3.png", dpi=150)

    c = read_csv(args.indir / "fig4.csv")
    plt.figure()
    plt.plot(c["t"], c["g_variant1"], "-", label="marked {0, N-1}")
    plt.plot(c["t"], c["g_variant2"], "--", label="marked {0, 1}")
    plt.xlabel("iteration")
    plt.ylabel("G")
    plt.legend()
    plt.savefig(args.outdir / "fig4.png", dpi=150)

    c = read_csv(args.indir / "fig5.csv")
    plt.figure()
    plt.plot(c["t"], c["g_w_support"], "-", label="weight-one words marked")
    plt.plot(c["t"], c["g_prefix"], "--", label="first n words marked")
    plt.xlabel("iteration")
    plt.ylabel("G")
    plt.legend()
    plt.savefig(args.outdir / "fig5.png", dpi=150)

    print(f"plots written to {args.outdir}")


if __name__ == "__main__":
    main()
