#!/usr/bin/env python3
"""Produce the full angle-substitution analysis report as JSON.

Scans the angle box for points where all four stationarity functions vanish,
refines them, and records the termwise ("flawed") maximum, the true maximum,
the hyperplane obstruction, and the rewrite-identity deviation.

Usage:
    python scripts/run_refutation.py [--resolution 181] [--eps 1e-8] [--out refutation_report.json]
"""
import argparse
import json
from pathlib import Path

from groverian import refutation_report


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--resolution", type=int, default=181)
    ap.add_argument("--eps", type=float, default=1e-8)
    ap.add_argument("--identity-samples", type=int, default=10**5)
    ap.add_argument("--out", default="refutation_report.json")
    args = ap.parse_args()

    report = refutation_report(
        grid_resolution=args.resolution,
        eps=args.eps,
        identity_samples=args.identity_samples,
    )
    Path(args.out).write_text(json.dumps(report, indent=2) + "\n")

    print(f"solutions found      : {len(report['solutions'])}")
    for sol in report["solutions"]:
        print(f"  theta = {[round(t, 9) for t in sol['theta']]}  objective = {sol['objective']:.9f}")
    print(f"flawed (termwise) max: {report['flawed_max']}")
    print(f"true max             : {report['true_max']}")
    print(f"gap                  : {report['flawed_max'] - report['true_max']}")
    print(f"hyperplane residual  : {report['hyperplane_min_residual']:.12f} (term-max system, min |.|)")
    print(f"identity deviation   : {report['identity_deviation']:.3e}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
