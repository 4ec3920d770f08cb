"""Command-line entry point.

    kdeassess estimate --input values.csv --method both --out curve.csv
    kdeassess compare --model model.csv --field field.csv --scenario masked \\
        --region euphotic --out report.json
    kdeassess suite --model model.csv --field field.csv --scenario full --out results/

Exit codes: 0 success, 1 data error, 2 usage error. Errors are printed as a
single ``error: ...`` line on standard error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import reporting
from .diffusion import diffkde
from .errors import DomainError, KdeAssessError, ResolutionError
from .gaussian import gaussian_kde_evaluate
from .grid import DEFAULT_INTERVALS, DEFAULT_MARGIN, MIN_INTERVALS, as_sample, default_domain, make_grid
from .ocean import DEFAULT_DEPTH_LEVELS, REGIONS, load_csv, load_depth_table, load_values
from .pipeline import ScenarioConfig, run_comparison, run_suite

METHODS = {"diff": ("diffusion",), "gauss": ("gaussian",), "both": ("diffusion", "gaussian")}
REGION_FLAGS = [r.replace("_", "-") for r in REGIONS]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="kdeassess",
        description="Diffusion and Gaussian KDEs, and Wasserstein-1 model/field comparison.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def grid_flags(p):
        p.add_argument("--lo", type=float, help="domain lower bound (default: data min - margin)")
        p.add_argument("--hi", type=float, help="domain upper bound (default: data max + margin)")
        p.add_argument("--points", type=int, default=DEFAULT_INTERVALS,
                       help="number of grid intervals; the curve has points+1 rows (default %(default)s)")
        p.add_argument("--margin", type=float, default=DEFAULT_MARGIN,
                       help="domain padding as a fraction of the data range (default %(default)s)")
        p.add_argument("--method", choices=sorted(METHODS), default="both",
                       help="estimator(s): diffusion, Gaussian or both (default %(default)s)")

    est = sub.add_parser(
        "estimate", help="density curve of a single-column value file",
        epilog="Smoothing is reported as a variance (squared data units): the Gaussian kernel "
               "variance t, or the diffusion final time T. Take the square root for a bandwidth.",
    )
    est.add_argument("--input", required=True, help="CSV with a 'value' column")
    est.add_argument("--out", help="output curve CSV (default: standard output)")
    grid_flags(est)

    for name, help_ in (("compare", "compare model and field densities in one region"),
                        ("suite", "compare in all four regions")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--model", required=True, help="model CSV (lat,lon,depth,decade,value)")
        p.add_argument("--field", required=True, help="field CSV (lat,lon,depth,decade,value)")
        p.add_argument("--decade", type=int, default=1990, help="first year of the decade (default %(default)s)")
        p.add_argument("--scenario", choices=["masked", "full"], required=True)
        p.add_argument("--depth-table", help="model depth levels, one per line (metres)")
        p.add_argument("--out", required=True,
                       help="report JSON path" if name == "compare" else "output directory")
        if name == "compare":
            p.add_argument("--region", choices=REGION_FLAGS, default="all")
        grid_flags(p)
    return parser


def _validate(args):
    if args.points < MIN_INTERVALS:
        raise ResolutionError(f"--points must be at least {MIN_INTERVALS}, got {args.points}")
    if args.margin < 0:
        raise UsageError(f"--margin must be non-negative, got {args.margin}")
    if args.lo is not None and args.hi is not None and not args.hi > args.lo:
        raise DomainError(f"empty domain: --hi {args.hi:g} must exceed --lo {args.lo:g}")
    if args.command != "estimate":
        if args.decade % 10:
            raise UsageError(f"--decade must be a decade's first year, got {args.decade}")
        if (args.lo is None) != (args.hi is None):
            raise UsageError("--lo and --hi must be given together for comparisons")


def _grid_override(args):
    if args.lo is None:
        return None
    return (args.lo, args.hi, args.points)


def _log(msg):
    print(msg, file=sys.stderr)


def cmd_estimate(args) -> int:
    x = as_sample(load_values(args.input))
    if args.lo is None or args.hi is None:
        lo, hi = default_domain(x, args.margin)
        lo = lo if args.lo is None else args.lo
        hi = hi if args.hi is None else args.hi
    else:
        lo, hi = args.lo, args.hi
    grid = make_grid(lo, hi, args.points)
    estimates = {}
    for method in METHODS[args.method]:
        d = diffkde(x, grid) if method == "diffusion" else gaussian_kde_evaluate(x, grid)
        estimates[method] = d
        extra = f" solver_time={d.info['solver_time']:.9g}" if "solver_time" in d.info else ""
        _log(f"{method}: n={d.sample_count} smoothing={d.smoothing:.9g}{extra} integral={d.mass():.9g}")
    text = reporting.to_text(reporting.estimate_table, estimates)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _load_pair(args):
    levels = load_depth_table(args.depth_table) if args.depth_table else DEFAULT_DEPTH_LEVELS
    model = load_csv(args.model, "model", levels)
    field = load_csv(args.field, "field", levels)
    return model, field


def _companion(path: Path) -> Path:
    return path.with_name(path.stem + "_curves.csv")


def cmd_compare(args) -> int:
    cfg = ScenarioConfig(
        scenario=args.scenario, region=args.region, decade=args.decade,
        grid_override=_grid_override(args), estimators=METHODS[args.method],
        margin=args.margin, points=args.points,
    )
    model, field = _load_pair(args)
    report = run_comparison(model, field, cfg)
    out = Path(args.out)
    out.write_text(reporting.report_json(report), encoding="utf-8")
    _companion(out).write_text(reporting.to_text(reporting.curves_table, report), encoding="utf-8")
    errs = " ".join(f"{k}={v:.9g}" for k, v in report.errors.items())
    _log(f"{cfg.scenario} {args.region}: n_model={report.n_model} n_field={report.n_field} W1 {errs}")
    return 0


def cmd_suite(args) -> int:
    options = dict(grid_override=_grid_override(args), estimators=METHODS[args.method],
                   margin=args.margin, points=args.points)
    model, field = _load_pair(args)
    entries = run_suite(model, field, args.scenario, args.decade, **options)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for e in entries:
        label = reporting.region_label(e.region)
        if e.report is not None:
            (out / f"report_{label}.json").write_text(reporting.report_json(e.report), encoding="utf-8")
            (out / f"curves_{label}.csv").write_text(
                reporting.to_text(reporting.curves_table, e.report), encoding="utf-8")
        else:
            _log(f"error: region {label}: {e.message}")
    (out / "index.csv").write_text(reporting.to_text(reporting.index_table, entries), encoding="utf-8")
    return 0 if any(e.ok for e in entries) else 1


COMMANDS = {"estimate": cmd_estimate, "compare": cmd_compare, "suite": cmd_suite}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _validate(args)
    except (UsageError, DomainError, ResolutionError) as exc:
        _log(f"error: {exc}")
        return 2
    try:
        return COMMANDS[args.command](args)
    except (KdeAssessError, ValueError, OSError) as exc:
        _log(f"error: {' '.join(str(exc).split())}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
