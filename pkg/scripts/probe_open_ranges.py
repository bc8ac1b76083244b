"""Empirical maxima of |lam a_n a_m - a_{n+m-1}| where no sharp bound is known.

Sweeps lam below the proved ranges for co(C) (lam < 2) and R(beta)
(lam < nm/((1-beta)(n+m-1))), plus the off-diagonal cells of H(r), and writes
one CSV per class next to a text summary.

    python scripts/probe_open_ranges.py --out results/ --seed 0
"""
import argparse
from pathlib import Path

import numpy as np

from zalcman.classes import CoefficientClass, ConvexHullOfConvex, NoshiroWarschawski, hurwitz
from zalcman.functionals import r_threshold
from zalcman.report import render, report_row
from zalcman.search import SearchConfig, probe_open_range

PAIRS = [(2, 3), (2, 4), (3, 4), (3, 5)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--restarts", type=int, default=10)
    ap.add_argument("--points", type=int, default=8)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cfg = SearchConfig(restarts=args.restarts, seed=args.seed)

    runs = {"coc": (ConvexHullOfConvex(), lambda n, m: 2.0)}
    for beta in (0.0, 0.5):
        runs[f"R_beta{beta:g}"] = (NoshiroWarschawski(beta), lambda n, m, b=beta: r_threshold(b, n, m))

    for name, (cls, top) in runs.items():
        rows = []
        for n, m in PAIRS:
            lams = np.linspace(top(n, m) / args.points, top(n, m), args.points)
            rows += [report_row(r) for r in probe_open_range(cls, lams, (n, m), cfg)]
        (out / f"probe_{name}.csv").write_text(render("csv", "probe", rows))
        print(f"== {cls.label}")
        print(render("table", "probe", rows))

    # H(r) is only settled on the diagonal; report the diagonal values for reference
    rows = [report_row(r) for n in (2, 3, 4)
            for r in probe_open_range(CoefficientClass(hurwitz()), [0.5, 1.0, 2.0], (n, n), cfg)]
    (out / "probe_hurwitz.csv").write_text(render("csv", "probe", rows))


if __name__ == "__main__":
    main()
