"""Gridded tracer data: CSV ingestion, decade means, region filters and masking.

Records are keyed by model grid cell. Latitude and longitude are quantised
to the 1.8 x 3.6 degree horizontal grid; depth is mapped to the nearest
entry of a monotone table of model levels.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import EmptyIntersectionError, EmptyResultError, ParseError

COLUMNS = ("lat", "lon", "depth", "decade", "value")
SOURCES = ("model", "field")
REGIONS = ("all", "euphotic", "euphotic_ex_so", "euphotic_so")

LAT_STEP = 1.8
LON_STEP = 3.6
N_LON = 100  # 360 / LON_STEP
EUPHOTIC_DEPTH = 130.0
SOUTHERN_OCEAN_LAT = -45.0
VALUE_WINDOW = (-60.0, 0.0)

# Stand-in for the 19 model levels (layer centres, metres). The real table
# is model specific; pass your own via ``depth_levels`` / --depth-table.
DEFAULT_DEPTH_LEVELS = (
    25.0, 85.0, 170.0, 290.0, 440.0, 620.0, 830.0, 1070.0, 1340.0, 1640.0,
    1970.0, 2330.0, 2720.0, 3140.0, 3590.0, 4070.0, 4580.0, 5120.0, 5690.0,
)


@dataclass(frozen=True)
class GeoRecord:
    lat: float
    lon: float
    depth: float
    decade: int
    value: float


@dataclass(frozen=True)
class CellKey:
    lat_q: int
    lon_q: int
    depth_q: int


@dataclass(eq=False)
class GeoDataset:
    """Column-oriented set of records from a single source."""

    lat: np.ndarray
    lon: np.ndarray
    depth: np.ndarray
    decade: np.ndarray
    value: np.ndarray
    source: str = "field"
    depth_levels: tuple = field(default=DEFAULT_DEPTH_LEVELS)

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"source must be one of {SOURCES}, got {self.source!r}")
        for name in ("lat", "lon", "depth", "value"):
            setattr(self, name, np.asarray(getattr(self, name), dtype=float).ravel())
        self.decade = np.asarray(self.decade, dtype=np.int64).ravel()
        n = self.value.size
        if any(getattr(self, c).size != n for c in COLUMNS):
            raise ValueError("all columns must have the same length")
        self.depth_levels = check_depth_levels(self.depth_levels)

    def __len__(self):
        return self.value.size

    @classmethod
    def from_records(cls, records, source="field", depth_levels=DEFAULT_DEPTH_LEVELS):
        records = list(records)
        cols = {c: [getattr(r, c) for r in records] for c in COLUMNS}
        return cls(**cols, source=source, depth_levels=depth_levels)

    @property
    def records(self) -> list:
        return [
            GeoRecord(float(a), float(o), float(d), int(y), float(v))
            for a, o, d, y, v in zip(self.lat, self.lon, self.depth, self.decade, self.value)
        ]

    def subset(self, index) -> "GeoDataset":
        return GeoDataset(
            self.lat[index], self.lon[index], self.depth[index], self.decade[index],
            self.value[index], self.source, self.depth_levels,
        )

    def cell_keys(self) -> np.ndarray:
        """``(n, 3)`` integer array of (lat_q, lon_q, depth_q) per record."""
        lat_q = np.floor(self.lat / LAT_STEP + 0.5)
        lon_q, _ = _lon_cells(self.lon)
        return np.column_stack(
            [lat_q.astype(np.int64), lon_q, depth_index(self.depth, self.depth_levels)]
        )

    def keys(self) -> list:
        return [CellKey(*map(int, k)) for k in self.cell_keys()]


def check_depth_levels(levels) -> tuple:
    levels = tuple(float(v) for v in levels)
    if not levels:
        raise ValueError("depth table is empty")
    if any(not math.isfinite(v) or v < 0 for v in levels):
        raise ValueError("depth levels must be finite and non-negative")
    if any(b <= a for a, b in zip(levels, levels[1:])):
        raise ValueError("depth levels must be strictly increasing")
    return levels


def depth_index(depth, levels) -> np.ndarray:
    """Index of the nearest level; exact midpoints go to the shallower level."""
    levels = np.asarray(levels, dtype=float)
    mid = 0.5 * (levels[1:] + levels[:-1])
    return np.searchsorted(mid, np.asarray(depth, dtype=float), side="left").astype(np.int64)


def _lon_cells(lon):
    """Longitude cell index in ``[0, 100)`` and the offset from the cell centre."""
    lon = np.mod(np.asarray(lon, dtype=float), 360.0)
    q = np.floor(lon / LON_STEP + 0.5)
    offset = lon - q * LON_STEP
    return np.mod(q, N_LON).astype(np.int64), offset


def load_depth_table(path) -> tuple:
    """Read one depth (metres) per line; blank lines and ``#`` comments skipped."""
    levels = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                levels.append(float(text))
            except ValueError:
                raise ParseError(f"{path}: not a number: {text!r}", lineno) from None
    try:
        return check_depth_levels(levels)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _parse_float(text, name, lineno):
    try:
        v = float(text)
    except (TypeError, ValueError):
        raise ParseError(f"{name} is not a number: {text!r}", lineno) from None
    if not math.isfinite(v):
        raise ParseError(f"{name} is not finite: {text!r}", lineno)
    return v


def load_csv(path, source="field", depth_levels=DEFAULT_DEPTH_LEVELS, value_window=VALUE_WINDOW) -> GeoDataset:
    """Read a ``lat,lon,depth,decade,value`` CSV file.

    Every row is validated; the first offending row raises
    :class:`ParseError` carrying its line number.
    """
    path = Path(path)
    lo_v, hi_v = value_window
    cols = {c: [] for c in COLUMNS}
    with path.open(newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise EmptyResultError(f"{path}: file is empty")
        names = [h.strip().lower() for h in header]
        missing = [c for c in COLUMNS if c not in names]
        if missing:
            raise ParseError(
                f"{path}: header must name columns {','.join(COLUMNS)}; missing {','.join(missing)}", 1
            )
        pos = {c: names.index(c) for c in COLUMNS}
        for row in reader:
            lineno = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(names):
                raise ParseError(f"{path}: expected {len(names)} fields, got {len(row)}", lineno)
            lat, lon, depth, decade, value = (
                _parse_float(row[pos[c]], c, lineno) for c in COLUMNS
            )
            if not -90.0 <= lat <= 90.0:
                raise ParseError(f"{path}: lat {lat} outside [-90, 90]", lineno)
            if not -180.0 <= lon < 360.0:
                raise ParseError(f"{path}: lon {lon} outside [-180, 360)", lineno)
            if depth < 0:
                raise ParseError(f"{path}: negative depth {depth}", lineno)
            if decade != int(decade) or int(decade) % 10:
                raise ParseError(f"{path}: decade must be a decade's first year, got {row[pos['decade']]!r}", lineno)
            if not lo_v <= value <= hi_v:
                raise ParseError(f"{path}: value {value} outside plausibility window [{lo_v}, {hi_v}]", lineno)
            for c, v in zip(COLUMNS, (lat, lon, depth, int(decade), value)):
                cols[c].append(v)
    if not cols["value"]:
        raise EmptyResultError(f"{path}: no data rows")
    return GeoDataset(**cols, source=source, depth_levels=depth_levels)


def load_values(path) -> np.ndarray:
    """Read a single-column CSV with header ``value``."""
    path = Path(path)
    values = []
    with path.open(newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise EmptyResultError(f"{path}: file is empty")
        names = [h.strip().lower() for h in header]
        if "value" not in names:
            raise ParseError(f"{path}: header must contain a 'value' column", 1)
        col = names.index("value")
        for row in reader:
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(names):
                raise ParseError(f"{path}: expected {len(names)} fields, got {len(row)}", reader.line_num)
            values.append(_parse_float(row[col], "value", reader.line_num))
    if not values:
        raise EmptyResultError(f"{path}: no data rows")
    return np.array(values)


def decade_mean(ds: GeoDataset, decade: int) -> GeoDataset:
    """One record per grid cell holding the mean of the decade's records.

    Output coordinates are group means (longitude averaged relative to the
    cell centre so cells straddling 0/360 stay intact), sorted by cell key.
    """
    sel = ds.subset(ds.decade == int(decade))
    if len(sel) == 0:
        raise EmptyResultError(f"no {ds.source} records for decade {decade}")
    keys = sel.cell_keys()
    uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    counts = np.bincount(inverse)

    def mean(col):
        return np.bincount(inverse, weights=col) / counts

    _, offset = _lon_cells(sel.lon)
    lon = np.mod(uniq[:, 1] * LON_STEP + mean(offset), 360.0)
    return GeoDataset(
        mean(sel.lat), lon, mean(sel.depth), np.full(len(uniq), int(decade)),
        mean(sel.value), ds.source, ds.depth_levels,
    )


def normalize_region(region) -> str:
    r = str(region).strip().lower().replace("-", "_")
    if r not in REGIONS:
        raise ValueError(f"unknown region {region!r}; expected one of {', '.join(REGIONS)}")
    return r


def region_mask(ds: GeoDataset, region) -> np.ndarray:
    region = normalize_region(region)
    if region == "all":
        return np.ones(len(ds), dtype=bool)
    keep = ds.depth <= EUPHOTIC_DEPTH
    if region == "euphotic_ex_so":
        keep &= ds.lat > SOUTHERN_OCEAN_LAT
    elif region == "euphotic_so":
        keep &= ds.lat <= SOUTHERN_OCEAN_LAT
    return keep


def apply_region(ds: GeoDataset, region) -> GeoDataset:
    """Restrict to a region: euphotic is depth <= 130 m, the Southern Ocean lat <= -45."""
    out = ds.subset(region_mask(ds, region))
    if len(out) == 0:
        raise EmptyResultError(f"region {normalize_region(region)} leaves no {ds.source} records")
    return out


def _unique_keys(ds):
    keys = ds.cell_keys()
    if len(np.unique(keys, axis=0)) != len(keys):
        raise ValueError(f"{ds.source} dataset has several records per cell; apply decade_mean first")
    return [tuple(k) for k in keys.tolist()]


def mask_common(model: GeoDataset, field: GeoDataset):
    """Restrict both datasets to the grid cells present in each."""
    if model.depth_levels != field.depth_levels:
        raise ValueError("datasets use different depth tables")
    km, kf = _unique_keys(model), _unique_keys(field)
    common = set(km) & set(kf)
    if not common:
        raise EmptyIntersectionError("model and field data share no grid cells")
    return (
        model.subset(np.array([k in common for k in km])),
        field.subset(np.array([k in common for k in kf])),
    )


def extract_values(ds: GeoDataset) -> np.ndarray:
    """Value column ordered by cell key (stable for equal keys)."""
    if len(ds) == 0:
        raise EmptyResultError("dataset is empty")
    keys = ds.cell_keys()
    order = np.lexsort((keys[:, 2], keys[:, 1], keys[:, 0]))
    return ds.value[order]
