"""Command-line front end.

Subcommands:
  pmax          numerical best product-state overlap of a state
  analytic      closed-form values for the symmetric families
  refute        angle-substitution analysis report
  grover-trace  Grover search trace with per-iteration entanglement

States come from ``--family name:params`` (params positional or key=value,
e.g. ``ghz:3``, ``gghz:3,a2=0.64``, ``dicke:n=4,k=2``) or from a JSON file
``--file path`` with schema {"n": int, "amplitudes": [[re, im], ...]}.

Exit codes: 0 success, 2 input/parse error, 3 normalization error,
4 I/O error.  All floating output uses 12 significant digits, and identical
flags (including --rng-seed) give byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import analytic, refutation
from .grover import GroverConfig, run_trace, trace_to_csv
from .solver import SolverConfig, pmax_alternating
from .states import NormalizationError, PureState, load_state_json, make_family

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NORMALIZATION = 3
EXIT_IO = 4

_RESTRICTION_FLAG = {"full": "full_bloch", "real": "real_plane"}


@dataclass(frozen=True)
class CommonOptions:
    """Validated per-run options shared by the subcommands."""

    solver: SolverConfig
    fmt: str
    normalize: bool


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles --help and flag errors
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except NormalizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NORMALIZATION
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def entrypoint() -> None:
    sys.exit(main())


# ----------------------------------------------------------------------------
# Subcommand handlers
# ----------------------------------------------------------------------------

def _cmd_pmax(args: argparse.Namespace) -> int:
    opts = _common_options(args)
    psi = _load_state(args, opts)
    result = pmax_alternating(psi, opts.solver)
    payload = {
        "pmax": result.pmax,
        "groverian": math.sqrt(max(0.0, 1.0 - result.pmax)),
        "converged": result.converged,
        "sweeps_used": result.sweeps_used,
        "optimizer": [
            [[f.c0.real, f.c0.imag], [f.c1.real, f.c1.imag]]
            for f in result.optimizer.factors
        ],
    }
    if opts.fmt == "csv":
        _emit_csv_row(
            ("pmax", "groverian", "converged", "sweeps_used"),
            (payload["pmax"], payload["groverian"], payload["converged"], payload["sweeps_used"]),
        )
    else:
        _emit_json(payload)
    return EXIT_OK


def _cmd_analytic(args: argparse.Namespace) -> int:
    opts = _common_options(args)
    name, params = _parse_family_spec(args.family)
    result, verify_state = _analytic_dispatch(name, params)
    payload = {
        "pmax": result.pmax,
        "groverian": result.groverian,
        "family_label": result.family_label,
        "separable": result.separable,
    }
    if args.verify:
        solver_pmax = pmax_alternating(verify_state, opts.solver).pmax
        payload["solver_pmax"] = solver_pmax
        payload["verify_abs_diff"] = abs(solver_pmax - result.pmax)
    if opts.fmt == "csv":
        _emit_csv_row(tuple(payload.keys()), tuple(payload.values()))
    else:
        _emit_json(payload)
    return EXIT_OK


def _cmd_refute(args: argparse.Namespace) -> int:
    opts = _common_options(args)
    if opts.fmt == "csv":
        raise ValueError("refute: the report is nested and only supports --format json")
    report = refutation.refutation_report(
        grid_resolution=args.resolution,
        eps=args.eps,
        identity_samples=args.identity_samples,
        rng_seed=opts.solver.rng_seed,
    )
    _emit_json(report)
    return EXIT_OK


def _cmd_grover_trace(args: argparse.Namespace) -> int:
    opts = _common_options(args)
    cfg = GroverConfig(
        n_qubits=args.n,
        marked_index=args.marked,
        iterations=args.iterations,
        solver=opts.solver,
    )
    rows = run_trace(cfg)
    Path(args.output).write_text(trace_to_csv(rows))
    last = rows[-1]
    _emit_json(
        {
            "n": cfg.n_qubits,
            "marked": cfg.marked_index,
            "iterations": cfg.resolved_iterations(),
            "csv": str(args.output),
            "final_success_probability": last.success_probability,
            "final_pmax": last.pmax,
            "final_groverian": last.groverian,
        }
    )
    return EXIT_OK


# ----------------------------------------------------------------------------
# Parsing and shared plumbing
# ----------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seeds", type=int, default=32, metavar="N",
                        help="number of solver starts (default 32)")
    common.add_argument("--tol", type=float, default=1e-12,
                        help="solver convergence threshold per sweep (default 1e-12)")
    common.add_argument("--max-sweeps", type=int, default=500,
                        help="solver sweep cap per start (default 500)")
    common.add_argument("--rng-seed", type=int, default=0,
                        help="seed for every random draw (default 0)")
    common.add_argument("--restriction", choices=sorted(_RESTRICTION_FLAG), default="full",
                        help="solver start distribution (default full)")
    common.add_argument("--normalize", action="store_true",
                        help="renormalize states read from files")
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json",
                        help="stdout format (default json)")

    parser = argparse.ArgumentParser(
        prog="groverian",
        description="Groverian (geometric) entanglement toolkit for small qubit registers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pmax", parents=[common],
                       help="numerically maximize squared product-state overlap")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", help="state family spec, e.g. ghz:3 or gghz:3,a2=0.64")
    src.add_argument("--file", help="JSON state file path")
    p.set_defaults(handler=_cmd_pmax)

    p = sub.add_parser("analytic", parents=[common],
                       help="closed-form values for gghz/w/dicke families")
    p.add_argument("--family", required=True,
                   help="family spec, e.g. gghz:a2=0.5, w:n=5, dicke:n=4,k=2")
    p.add_argument("--verify", action="store_true",
                   help="cross-check the closed form against the solver")
    p.set_defaults(handler=_cmd_analytic)

    p = sub.add_parser("refute", parents=[common],
                       help="angle-substitution stationarity analysis report")
    p.add_argument("--resolution", type=int, default=181,
                   help="grid points per angle (default 181)")
    p.add_argument("--eps", type=float, default=1e-8,
                   help="threshold on max|J| for reported solutions (default 1e-8)")
    p.add_argument("--identity-samples", type=int, default=10**5,
                   help="random triples for the rewrite identity check (default 1e5)")
    p.set_defaults(handler=_cmd_refute)

    p = sub.add_parser("grover-trace", parents=[common],
                       help="run Grover search, tracing entanglement per iteration")
    p.add_argument("--n", type=int, required=True, help="number of qubits")
    p.add_argument("--marked", type=int, required=True, help="marked basis index")
    p.add_argument("--iterations", type=int, default=None,
                   help="iteration count (default: optimal)")
    p.add_argument("--output", required=True, help="CSV output path")
    p.set_defaults(handler=_cmd_grover_trace)
    return parser


def _common_options(args: argparse.Namespace) -> CommonOptions:
    solver = SolverConfig(
        n_starts=args.seeds,
        max_sweeps=args.max_sweeps,
        tol=args.tol,
        rng_seed=args.rng_seed,
        restriction=_RESTRICTION_FLAG[args.restriction],
    )
    return CommonOptions(solver=solver, fmt=args.fmt, normalize=args.normalize)


def _load_state(args: argparse.Namespace, opts: CommonOptions) -> PureState:
    if args.family is not None:
        name, params = _parse_family_spec(args.family)
        return _family_state(name, params)
    return load_state_json(args.file, normalize=opts.normalize)


def _parse_family_spec(spec: str) -> tuple[str, dict]:
    """Parse ``name:tok,tok,...`` where a bare token is positional and
    ``key=value`` tokens are named; numbers parse as int when possible."""
    name, _, rest = spec.partition(":")
    name = name.strip().lower()
    if not name:
        raise ValueError(f"family: empty family name in {spec!r}")
    positional: list[float] = []
    named: dict[str, float] = {}
    if rest.strip():
        for token in rest.split(","):
            token = token.strip()
            if not token:
                raise ValueError(f"family: empty parameter in {spec!r}")
            if "=" in token:
                key, _, value = token.partition("=")
                key = key.strip().lower()
                if key in named:
                    raise ValueError(f"family: duplicate parameter {key!r} in {spec!r}")
                named[key] = _parse_number(value, spec)
            else:
                positional.append(_parse_number(token, spec))
    return name, {"_positional": positional, **named}


def _parse_number(text: str, spec: str):
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"family: {text!r} is not a number in {spec!r}") from None


_FAMILY_PARAM_ORDER = {
    "ghz": ("n",),
    "gghz": ("n", "a2"),
    "w": ("n",),
    "dicke": ("n", "k"),
    "basis": ("n", "x"),
    "uniform": ("n",),
}


def _bind_family_params(name: str, params: dict) -> dict:
    if name not in _FAMILY_PARAM_ORDER:
        known = ", ".join(sorted(_FAMILY_PARAM_ORDER))
        raise ValueError(f"family: unknown family {name!r} (known: {known})")
    order = _FAMILY_PARAM_ORDER[name]
    positional = params.get("_positional", [])
    named = {k: v for k, v in params.items() if k != "_positional"}
    if len(positional) > len(order):
        raise ValueError(f"family: {name} takes at most {len(order)} parameter(s)")
    bound = dict(zip(order, positional))
    for key, value in named.items():
        canonical = "a2" if key in ("a", "a2") and "a2" in order else key
        if canonical not in order:
            raise ValueError(f"family: {name} has no parameter {key!r}")
        if canonical in bound:
            raise ValueError(f"family: parameter {canonical!r} given twice for {name}")
        bound[canonical] = value
    return bound


def _family_state(name: str, params: dict) -> PureState:
    bound = _bind_family_params(name, params)
    if "n" not in bound:
        raise ValueError(f"family: {name} needs n")
    n = _as_int(bound["n"], "n")
    if name == "ghz":
        return make_family("ghz", n=n)
    if name == "gghz":
        if "a2" not in bound:
            raise ValueError("family: gghz needs a2 (squared weight of |0...0>)")
        a2 = float(bound["a2"])
        if not 0.0 <= a2 <= 1.0:
            raise ValueError(f"family: a2 must lie in [0, 1], got {a2!r}")
        return make_family("gghz", n=n, a=math.sqrt(a2))
    if name == "w":
        return make_family("w", n=n)
    if name == "dicke":
        if "k" not in bound:
            raise ValueError("family: dicke needs k")
        return make_family("dicke", n=n, k=_as_int(bound["k"], "k"))
    if name == "basis":
        if "x" not in bound:
            raise ValueError("family: basis needs x")
        return make_family("basis", n=n, x=_as_int(bound["x"], "x"))
    return make_family("uniform", n=n)


def _analytic_dispatch(name: str, params: dict):
    """Closed-form result plus the concrete state used by --verify."""
    bound = _bind_family_params(name, params)
    if name == "ghz":
        n = _as_int(bound.get("n", 3), "n")
        return analytic.pmax_gghz(0.5), make_family("ghz", n=n)
    if name == "gghz":
        if "a2" not in bound:
            raise ValueError("family: gghz needs a2")
        a2 = float(bound["a2"])
        n = _as_int(bound.get("n", 3), "n")
        result = analytic.pmax_gghz(a2)  # validates a2 in [0, 1]
        return result, make_family("gghz", n=n, a=math.sqrt(a2))
    if name == "w":
        if "n" not in bound:
            raise ValueError("family: w needs n")
        n = _as_int(bound["n"], "n")
        return analytic.pmax_w(n), make_family("w", n=n)
    if name == "dicke":
        if "n" not in bound or "k" not in bound:
            raise ValueError("family: dicke needs n and k")
        n, k = _as_int(bound["n"], "n"), _as_int(bound["k"], "k")
        return analytic.pmax_dicke(n, k), make_family("dicke", n=n, k=k)
    raise ValueError(f"family: no closed form for {name!r} (known: dicke, gghz, ghz, w)")


def _as_int(value, field: str) -> int:
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise ValueError(f"family: {field} must be an integer, got {value!r}")


# ----------------------------------------------------------------------------
# Output formatting: floats reduced to 12 significant digits everywhere
# ----------------------------------------------------------------------------

def _round12(value):
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {k: _round12(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round12(v) for v in value]
    return value


def _emit_json(payload: dict) -> None:
    print(json.dumps(_round12(payload)))


def _emit_csv_row(header: tuple, values: tuple) -> None:
    def fmt(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            return f"{v:#.12g}"
        return str(v)

    print(",".join(header))
    print(",".join(fmt(v) for v in values))


if __name__ == "__main__":
    entrypoint()
