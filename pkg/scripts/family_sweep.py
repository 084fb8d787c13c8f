#!/usr/bin/env python3
"""Compare closed-form best product overlaps against the numerical solver.

Sweeps the generalized-GHZ weight for 3 and 5 qubits, W states up to 8
qubits, and all Dicke states up to 6 qubits; writes one CSV of
(family, parameters, closed form, solver value, |difference|).

Usage:
    python scripts/family_sweep.py [--out family_sweep.csv]
"""
import argparse
import math
from pathlib import Path

import numpy as np

from groverian import (
    SolverConfig,
    dicke,
    gghz,
    pmax_alternating,
    pmax_dicke,
    pmax_gghz,
    pmax_w,
    w,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=32)
    ap.add_argument("--rng-seed", type=int, default=0)
    ap.add_argument("--out", default="family_sweep.csv")
    args = ap.parse_args()
    cfg = SolverConfig(n_starts=args.seeds, rng_seed=args.rng_seed)

    rows = [("family", "params", "closed_form", "solver", "abs_diff")]
    for n in (3, 5):
        for a_sq in np.round(np.arange(0.05, 1.0, 0.05), 2):
            closed = pmax_gghz(float(a_sq)).pmax
            solved = pmax_alternating(gghz(n, a=math.sqrt(float(a_sq))), cfg).pmax
            rows.append(("gghz", f"n={n};a2={a_sq}", closed, solved, abs(closed - solved)))
    for n in range(2, 9):
        closed = pmax_w(n).pmax
        solved = pmax_alternating(w(n), cfg).pmax
        rows.append(("w", f"n={n}", closed, solved, abs(closed - solved)))
    for n in range(2, 7):
        for k in range(0, n + 1):
            closed = pmax_dicke(n, k).pmax
            solved = pmax_alternating(dicke(n, k), cfg).pmax
            rows.append(("dicke", f"n={n};k={k}", closed, solved, abs(closed - solved)))

    lines = [",".join(str(c) if isinstance(c, str) else f"{c:#.12g}" for c in row) for row in rows]
    Path(args.out).write_text("\n".join(lines) + "\n")

    worst = max(float(r[4]) for r in rows[1:])
    print(f"{len(rows) - 1} comparisons, worst |closed - solver| = {worst:.3e}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
