"""Command line interface.

    tripartite evolve --state ghz1 --a2 0.2 --lambda-ratio 3 --tmax 5
    tripartite sweep  --state ghz1 --a2-grid 0:1:0.02 --out sweep.csv
    tripartite figure 3a --out figures/
    tripartite audit --tolerance 1e-9

Exit status: 0 on success, 1 on audit violations, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .audit import audit
from .figures import FIGURES, reproduce_figure
from .sweep import STATES, SpecError, SweepSpec, emit, run_sweep

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

# CLI flag dest -> SweepSpec field
_FLAG_FIELDS = {
    "state": "state", "a2": "a2", "b2": "b2", "c2": "c2", "delta": "delta",
    "delta1": "delta1", "delta2": "delta2", "p": "p", "lambda_ratio": "lambda_ratio",
    "tmax": "t_max", "steps": "steps", "a2_grid": "a2_grid", "p_grid": "p_grid",
}


def _grid(text: str) -> list:
    """'start:stop:step' (inclusive stop) or a comma-separated list."""
    if ":" in text:
        start, stop, step = (float(v) for v in text.split(":"))
        if step <= 0:
            raise argparse.ArgumentTypeError("grid step must be positive")
        n = int(round((stop - start) / step))
        return [round(start + k * step, 12) for k in range(n + 1)]
    return [float(v) for v in text.split(",") if v.strip()]


def _state_flags(p: argparse.ArgumentParser, grids: bool) -> None:
    p.add_argument("--config", type=Path, help="JSON file with SweepSpec fields; flags win")
    p.add_argument("--state", choices=STATES, default=None)
    p.add_argument("--a2", type=float, default=None)
    p.add_argument("--b2", type=float, default=None)
    p.add_argument("--c2", type=float, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--delta1", type=float, default=None)
    p.add_argument("--delta2", type=float, default=None)
    p.add_argument("--p", type=float, default=None, help="GHZ weight of the mixture state")
    p.add_argument("--lambda-ratio", type=float, default=None, help="lambda / gamma0")
    p.add_argument("--tmax", type=float, default=None, help="final gamma0 * t")
    p.add_argument("--steps", type=int, default=None, help="number of time points")
    if grids:
        p.add_argument("--a2-grid", type=_grid, default=None)
        p.add_argument("--p-grid", type=_grid, default=None)
        p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tripartite", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    _state_flags(sub.add_parser("evolve", help="time series for one initial state"), grids=False)
    _state_flags(sub.add_parser("sweep", help="parameter x time grid"), grids=True)
    fig = sub.add_parser("figure", help="write the data behind a figure")
    fig.add_argument("id", choices=list(FIGURES))
    fig.add_argument("--out", default="figures", help="output directory")
    fig.add_argument("--steps", type=int, default=501)
    fig.add_argument("--workers", type=int, default=1)
    aud = sub.add_parser("audit", help="closed-form vs numeric audit")
    aud.add_argument("--tolerance", type=float, default=1e-9)
    aud.add_argument("--params", type=int, default=20)
    aud.add_argument("--times", type=int, default=30)
    return parser


def spec_from_args(args: argparse.Namespace) -> SweepSpec:
    data = {}
    if getattr(args, "config", None) is not None:
        data.update(json.loads(args.config.read_text()))
    for dest, name in _FLAG_FIELDS.items():
        value = getattr(args, dest, None)
        if value is not None:
            data[name] = value
    if "state" not in data:
        raise SpecError("a state is required (--state or config)")
    return SweepSpec.from_dict(data)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("evolve", "sweep"):
            spec = spec_from_args(args)
            if args.command == "evolve" and (spec.a2_grid or spec.p_grid):
                raise SpecError("evolve takes a single parameter point; use sweep for grids")
            table = run_sweep(spec, workers=getattr(args, "workers", 1))
            emit(table, args.out, args.format)
            return EXIT_OK
        if args.command == "figure":
            for path in reproduce_figure(args.id, args.out, steps=args.steps, workers=args.workers):
                print(path)
            return EXIT_OK
        report = audit(args.tolerance, n_params=args.params, n_times=args.times)
        for line in report.lines():
            print(line)
        if not report.passed:
            worst = report.worst()
            print(f"worst offender: {worst.name} gap {worst.max_gap:.3e} at {worst.worst}")
            return EXIT_VIOLATION
        return EXIT_OK
    except (SpecError, ValueError, KeyError, json.JSONDecodeError, FileNotFoundError) as exc:
        print(f"tripartite: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
