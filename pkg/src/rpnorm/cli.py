"""Command line front end: run ensemble experiments and print bound reports.

Every run is reproducible from its seed.  Wall times are zeroed in the output
unless --timings is given, so that repeated runs with the same arguments are
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, replace

from . import norms
from .ensemble import EnsembleSpec, ExperimentParams, ExperimentRecord, run_experiment
from .norms import DiscMeasure, QuadratureGrid
from .polynomial import RealPolynomial
from .sampling import CoefficientDistribution

SEED_ENV_VAR = "RPNORM_SEED"
DEFAULT_SEED = 42

SCHEMA_FIELDS = (
    "experiment",
    "degree",
    "distribution",
    "samples",
    "seed",
    "empirical",
    "std_error",
    "bound",
    "bound_kind",
    "pass",
    "wall_time_ms",
)

POLY_OPS = ("circle-mean-sq", "disc-mean-sq", "max-mod", "bernstein", "filter")

_SUBCOMMAND_EXPERIMENTS = {
    "circle": ("circle-sq", "circle-abs"),
    "disc": ("disc-sq", "disc-abs"),
    "tail": ("markov-tail",),
}


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    degree: int = 9
    samples: int = 100000
    seed: int = DEFAULT_SEED
    dist: str = "gaussian"
    threshold: float | None = None
    grid: int | None = None
    measure: str = "radial"
    format: str = "table"
    output: str | None = None
    workers: int = 1
    timings: bool = False
    coeffs: tuple[float, ...] | None = None
    op: str | None = None
    z: complex | None = None


def _parse_seed_text(text: str) -> int:
    cleaned = text.strip().lower()
    try:
        value = int(cleaned, 16) if cleaned.startswith("0x") else int(cleaned, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"seed must be decimal or 0x-prefixed hex, got {text!r}"
        ) from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rpnorm",
        description="Average and maximum modulus of random real polynomials "
        "on the unit circle and disc: Monte Carlo estimates against closed-form "
        "targets and bounds.",
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--degree", "-n", type=int, default=9, help="polynomial degree")
        sub.add_argument(
            "--samples", "-M", type=int, default=100000, help="Monte Carlo sample count"
        )
        sub.add_argument(
            "--seed",
            type=_parse_seed_text,
            default=None,
            help=f"master seed, decimal or 0x hex (default: ${SEED_ENV_VAR} or {DEFAULT_SEED})",
        )
        sub.add_argument("--dist", choices=["gaussian", "uniform"], default="gaussian")
        sub.add_argument("--format", choices=["table", "json", "csv"], default="table")
        sub.add_argument("--output", default=None, help="write the report here instead of stdout")
        sub.add_argument("--grid", type=int, default=None, help="angular quadrature nodes")
        sub.add_argument("--measure", choices=["radial", "area"], default="radial")
        sub.add_argument("--workers", type=int, default=1)
        sub.add_argument(
            "--timings",
            action="store_true",
            help="report real wall times (off by default so output is reproducible)",
        )

    descriptions = {
        "circle": "expected circle means of |P|^2 and |P|",
        "disc": "expected disc means of |P|^2 and |P|",
        "tail": "Markov tail of |P| at a random circle point",
        "maxmod": "tail of the max-modulus surrogate |A_0| + |A_n|",
        "verify-all": "run all seven experiments",
    }
    for name, blurb in descriptions.items():
        sub = subparsers.add_parser(name, help=blurb)
        add_common(sub)
        if name == "tail":
            sub.add_argument("--threshold", type=float, required=True)
        elif name in ("maxmod", "verify-all"):
            sub.add_argument("--threshold", type=float, default=2.0)

    poly = subparsers.add_parser("poly", help="evaluate one polynomial, no sampling")
    poly.add_argument("--coeffs", required=True, help="comma-separated, lowest degree first")
    poly.add_argument("--op", required=True, choices=list(POLY_OPS))
    poly.add_argument("--z", default=None, help="complex point for the filter op, e.g. 0.5+0.5j")
    poly.add_argument("--grid", type=int, default=None)
    poly.add_argument("--measure", choices=["radial", "area"], default="radial")
    poly.add_argument("--output", default=None)
    return parser


def parse_args(argv: list[str] | None = None) -> CliConfig:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.subcommand == "poly":
        try:
            coeffs = tuple(float(part) for part in args.coeffs.split(","))
        except ValueError:
            parser.error(f"could not parse --coeffs {args.coeffs!r} as comma-separated floats")
        z = None
        if args.z is not None:
            try:
                z = complex(args.z)
            except ValueError:
                parser.error(f"could not parse --z {args.z!r} as a complex number")
        if args.op == "filter" and z is None:
            parser.error("--op filter requires --z")
        if args.grid is not None and args.grid < 1:
            parser.error("grid must be >= 1")
        return CliConfig(
            subcommand="poly",
            coeffs=coeffs,
            op=args.op,
            z=z,
            grid=args.grid,
            measure=args.measure,
            output=args.output,
        )

    if args.degree < 0:
        parser.error("degree must be >= 0")
    if args.samples < 2:
        parser.error("samples must be >= 2")
    if args.workers < 1:
        parser.error("workers must be >= 1")
    if args.grid is not None and args.grid < 1:
        parser.error("grid must be >= 1")
    threshold = getattr(args, "threshold", None)
    if threshold is not None and not threshold > 0.0:
        parser.error("threshold must be positive")

    seed = args.seed
    if seed is None:
        env_text = os.environ.get(SEED_ENV_VAR)
        if env_text is None:
            seed = DEFAULT_SEED
        else:
            try:
                seed = _parse_seed_text(env_text)
            except argparse.ArgumentTypeError as exc:
                parser.error(f"invalid {SEED_ENV_VAR}: {exc}")

    return CliConfig(
        subcommand=args.subcommand,
        degree=args.degree,
        samples=args.samples,
        seed=seed,
        dist=args.dist,
        threshold=threshold,
        grid=args.grid,
        measure=args.measure,
        format=args.format,
        output=args.output,
        workers=args.workers,
        timings=args.timings,
    )


def _format_cell(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _format_table(records: list[ExperimentRecord]) -> str:
    header = ("experiment", "deg", "dist", "samples", "empirical", "std_error", "bound", "kind", "status")
    rows = [
        (
            r.experiment,
            str(r.degree),
            r.distribution,
            str(r.samples),
            f"{r.empirical:.6g}",
            f"{r.std_error:.3g}",
            f"{r.bound:.6g}",
            r.bound_kind,
            "PASS" if r.passed else "FAIL",
        )
        for r in records
    ]
    widths = [max(len(header[i]), *(len(row[i]) for row in rows)) for i in range(len(header))]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(header)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    lines += ["  ".join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip() for row in rows]
    notes = [(r.experiment, r.note) for r in records if r.note]
    if notes:
        lines.append("notes:")
        lines += [f"  {name}: {note}" for name, note in notes]
    held = sum(1 for r in records if r.passed)
    seed = records[0].seed
    lines.append(f"seed {seed}: {held}/{len(records)} checks hold")
    return "\n".join(lines) + "\n"


def format_report(records: list[ExperimentRecord], fmt: str = "table") -> str:
    """Render records as 'table', 'json', or 'csv' text."""
    if not records:
        raise ValueError("no records to format")
    if fmt == "json":
        return json.dumps([r.to_row() for r in records], indent=2) + "\n"
    if fmt == "csv":
        lines = [",".join(SCHEMA_FIELDS)]
        for record in records:
            row = record.to_row()
            lines.append(",".join(_format_cell(row[field]) for field in SCHEMA_FIELDS))
        return "\n".join(lines) + "\n"
    if fmt == "table":
        return _format_table(records)
    raise ValueError(f"unknown format {fmt!r}; use table, json, or csv")


def _run_poly(config: CliConfig) -> str:
    p = RealPolynomial(config.coeffs)
    grid = QuadratureGrid(config.grid) if config.grid is not None else None
    measure = DiscMeasure(config.measure)
    if config.op == "circle-mean-sq":
        return f"{norms.circle_mean_sq(p, grid)!r}\n"
    if config.op == "disc-mean-sq":
        numeric = norms.disc_mean_sq(p, grid, measure)
        closed = norms.disc_mean_sq_closed(p, measure)
        return f"numeric {numeric!r}\nclosed  {closed!r}\n"
    if config.op == "max-mod":
        est = norms.max_modulus(p, grid)
        return (
            f"value       {est.value!r}\n"
            f"arg_theta   {est.arg_theta!r}\n"
            f"lower_bound {est.lower_bound!r}\n"
            f"upper_bound {est.upper_bound!r}\n"
        )
    if config.op == "bernstein":
        return f"{norms.bernstein_ratio(p, grid)!r}\n"
    value = norms.roots_of_unity_average(p, config.z)
    return f"{value!r}\n"


def _run_experiments(config: CliConfig) -> list[ExperimentRecord]:
    spec = EnsembleSpec(
        degree=config.degree,
        dist=CoefficientDistribution(config.dist),
        samples=config.samples,
        master_seed=config.seed,
    )
    params = ExperimentParams(
        threshold=config.threshold if config.threshold is not None else 2.0,
        grid=QuadratureGrid(config.grid) if config.grid is not None else None,
        measure=DiscMeasure(config.measure),
        workers=config.workers,
    )
    if config.subcommand == "verify-all":
        return run_experiment(spec, "all", params)
    if config.subcommand == "maxmod":
        name = "max-uniform" if config.dist == "uniform" else "max-gaussian"
        return run_experiment(spec, name, params)
    records: list[ExperimentRecord] = []
    for name in _SUBCOMMAND_EXPERIMENTS[config.subcommand]:
        records.extend(run_experiment(spec, name, params))
    return records


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    with open(output, "w", encoding="utf-8") as handle:
        handle.write(text)


def run(config: CliConfig) -> int:
    """Execute one parsed invocation; returns the process exit code.

    0: success, all bounds hold.  1: ran fine but some bound failed.
    2: unusable parameters.  3: could not write the report.
    """
    records: list[ExperimentRecord] | None = None
    try:
        if config.subcommand == "poly":
            text = _run_poly(config)
        else:
            records = _run_experiments(config)
            if not config.timings:
                records = [replace(r, wall_time_ms=0.0) for r in records]
            text = format_report(records, config.format)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        _emit(text, config.output)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if records is not None and not all(r.passed for r in records):
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
