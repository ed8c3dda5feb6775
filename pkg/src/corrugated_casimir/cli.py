"""Command-line front end.

Distribution names: uniform (equal probability over the period), half
(uniform over the convex half), triangular (linear rise toward the crest),
peak (sphere always above the crest).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import compare_distributions, load_measurements
from .lateral import equilibria_json, find_equilibria, lateral_map, lateral_map_csv
from .model import ExperimentConfig, default_experiment, load_config
from .oracle import reports_json, reports_table, validation_grid
from .specfun import QuadratureSpec
from .vertical import VALIDITY_RANGE, PositionDistribution, force_curve


def _parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must look like lo:hi, got {text!r}") from None
    if not hi >= lo:
        raise argparse.ArgumentTypeError("range upper bound must be >= lower bound")
    return lo, hi


def _floats(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corrugated-casimir",
        description="Casimir force between a sphere and a sinusoidally corrugated plate.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON config file overriding the default experiment")
    common.add_argument("--output", "-o", type=Path, help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None, help="output format")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "curve",
        parents=[common],
        help="period-averaged vertical force curve",
        description="Distributions: uniform, half (convex half only), triangular (linear rise "
        "toward the crest), peak (sphere always above the crest).",
    )
    p.add_argument("--dist", default="uniform", choices=[d.value for d in PositionDistribution])
    p.add_argument("--amin", type=float, default=VALIDITY_RANGE[0])
    p.add_argument("--amax", type=float, default=VALIDITY_RANGE[1])
    p.add_argument("--steps", type=int, default=62)

    p = sub.add_parser("lateral", parents=[common], help="lateral force over one period")
    p.add_argument("--z0", type=float, required=True)
    p.add_argument("--x0-steps", type=int, default=200)

    p = sub.add_parser("equilibria", parents=[common], help="zeros of the lateral force and their stability")
    p.add_argument("--z0", type=float, required=True)

    p = sub.add_parser("fit", parents=[common], help="RMS deviation of each distribution from measured data")
    p.add_argument("--data", type=Path, required=True)
    p.add_argument("--range", type=_parse_range, default=VALIDITY_RANGE, dest="a_range")

    p = sub.add_parser("validate", parents=[common], help="closed-form lateral force vs nested quadrature")
    p.add_argument("--z0", type=_floats, default=[200.0, 300.0, 400.0], help="comma-separated heights (nm)")
    p.add_argument("--x0-fractions", type=_floats, default=[0.0, 0.125, 0.375])
    p.add_argument("--scales", type=_floats, default=[1.0, 0.01], help="amplitude scale factors")
    p.add_argument("--rel-tol", type=float, default=1e-8)
    return parser


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text)


def run(args: argparse.Namespace) -> None:
    config: ExperimentConfig = load_config(args.config) if args.config else default_experiment()
    echo = {"config": config.to_dict(), "config_hash": config.digest()}
    fmt = args.format

    if args.command == "curve":
        curve = force_curve(config, PositionDistribution(args.dist), args.amin, args.amax, args.steps)
        _emit(curve.to_json() if fmt == "json" else curve.to_csv(), args.output)

    elif args.command == "lateral":
        rows = lateral_map(args.z0, config, args.x0_steps)
        if fmt == "json":
            doc = {**echo, "z0_nm": args.z0, "points": [
                {"x0_nm": float(x), "z0_nm": float(z), "Fx_pN": float(F)} for x, z, F in rows
            ]}
            _emit(json.dumps(doc, indent=2), args.output)
        else:
            header = f"# config_json={json.dumps(config.to_dict(), sort_keys=True)}\n"
            _emit(header + lateral_map_csv(rows), args.output)

    elif args.command == "equilibria":
        if fmt == "csv":
            raise ValueError("equilibria output is JSON only")
        eqs = find_equilibria(args.z0, config)
        _emit(equilibria_json(eqs, {**echo, "z0_nm": args.z0}) + "\n", args.output)

    elif args.command == "fit":
        if fmt == "csv":
            raise ValueError("fit report is JSON or text (omit --format)")
        data = load_measurements(args.data)
        report = compare_distributions(data, config, args.a_range)
        _emit(report.to_json() + "\n" if fmt == "json" else report.to_table(), args.output)

    elif args.command == "validate":
        if fmt == "csv":
            raise ValueError("validate output is JSON or text (omit --format)")
        spec = QuadratureSpec(rel_tol=args.rel_tol, max_subdivisions=200_000)
        reports = validation_grid(config, args.z0, args.x0_fractions, args.scales, spec)
        if fmt == "json":
            doc = json.loads(reports_json(reports))
            _emit(json.dumps({**echo, **doc}, indent=2) + "\n", args.output)
        else:
            _emit(reports_table(reports), args.output)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad flags
    try:
        run(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
