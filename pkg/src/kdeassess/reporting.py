"""Deterministic text serialisation of curves and comparison reports.

Floats are written with 9 significant digits and columns in a fixed order,
so identical inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .pipeline import ESTIMATORS

SHORT = {"diffusion": "diff", "gaussian": "gauss"}
INDEX_COLUMNS = ("region", "status", "n_model", "n_field", "error_diff", "error_gauss", "message")


def fmt(v) -> str:
    return f"{float(v):.9g}"


def _num(v):
    if isinstance(v, (float, np.floating)):
        return float(fmt(v))
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


def region_label(region) -> str:
    return region.replace("_", "-")


def _write_table(fh, header, columns):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for row in zip(*columns):
        w.writerow([fmt(v) for v in row])


def estimate_table(estimates: dict, fh):
    """Write ``x,density_diff,density_gauss`` (only the methods present)."""
    header, columns = ["x"], []
    for method in ESTIMATORS:
        if method in estimates:
            d = estimates[method]
            if not columns:
                columns.append(d.x)
            header.append(f"density_{SHORT[method]}")
            columns.append(d.y)
    _write_table(fh, header, columns)


def curves_table(report, fh):
    """Write ``x,model_diff,field_diff,model_gauss,field_gauss`` (present curves only)."""
    header, columns = ["x"], [report.grid.nodes]
    for est in ESTIMATORS:
        for source in ("model", "field"):
            if (est, source) in report.curves:
                header.append(f"{source}_{SHORT[est]}")
                columns.append(report.curves[(est, source)].y)
    _write_table(fh, header, columns)


def report_dict(report) -> dict:
    cfg = report.config
    grid = report.grid
    curves = {"x": [_num(v) for v in grid.nodes]}
    for est in ESTIMATORS:
        for source in ("model", "field"):
            if (est, source) in report.curves:
                curves[f"{source}_{SHORT[est]}"] = [_num(v) for v in report.curves[(est, source)].y]
    return {
        "config": {
            "scenario": cfg.scenario,
            "region": region_label(cfg.region),
            "decade": cfg.decade,
            "estimators": list(cfg.estimators),
            "margin": _num(cfg.margin),
            "points": cfg.points,
            "grid_override": None if cfg.grid_override is None else [_num(v) for v in cfg.grid_override],
        },
        "counts": {"model": report.n_model, "field": report.n_field},
        "domain": {"lo": _num(grid.lo), "hi": _num(grid.hi), "intervals": grid.m},
        "errors": {est: _num(report.errors[est]) for est in cfg.estimators},
        "diagnostics": {
            est: {src: {k: _num(v) for k, v in vals.items()} for src, vals in report.diagnostics[est].items()}
            for est in cfg.estimators
        },
        "curves": curves,
    }


def report_json(report) -> str:
    return json.dumps(report_dict(report), indent=2) + "\n"


def index_rows(entries) -> list:
    rows = []
    for e in entries:
        r = e.report
        err = r.errors if r is not None else {}
        rows.append([
            region_label(e.region),
            e.status,
            "" if r is None else str(r.n_model),
            "" if r is None else str(r.n_field),
            fmt(err["diffusion"]) if "diffusion" in err else "",
            fmt(err["gaussian"]) if "gaussian" in err else "",
            e.message,
        ])
    return rows


def index_table(entries, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(INDEX_COLUMNS)
    w.writerows(index_rows(entries))


def to_text(writer, *args) -> str:
    buf = io.StringIO()
    writer(*args, buf)
    return buf.getvalue()
