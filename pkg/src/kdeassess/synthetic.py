"""Synthetic samples with known densities for validating the estimators."""

from __future__ import annotations

import numpy as np
from scipy import stats

TRIMODAL_MEANS = (1.5, 4.5, 8.5)
TRIMODAL_SDS = (0.5, 0.8, 0.6)
TRIMODAL_WEIGHTS = (0.45, 0.35, 0.2)
DEMO_DOMAIN = (-1.0, 12.0)


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def trimodal_sample(n, seed=None, domain=DEMO_DOMAIN) -> np.ndarray:
    """Draws from a three-component Gaussian mixture, rejected outside ``domain``."""
    rng = _rng(seed)
    means, sds = np.array(TRIMODAL_MEANS), np.array(TRIMODAL_SDS)
    out = np.empty(0)
    while out.size < n:
        k = rng.choice(3, size=n, p=TRIMODAL_WEIGHTS)
        x = rng.normal(means[k], sds[k])
        out = np.concatenate([out, x[(x >= domain[0]) & (x <= domain[1])]])
    return out[:n]


def trimodal_pdf(x, domain=DEMO_DOMAIN) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    pdf = np.zeros_like(x)
    mass = 0.0
    for m, s, w in zip(TRIMODAL_MEANS, TRIMODAL_SDS, TRIMODAL_WEIGHTS):
        pdf += w * stats.norm.pdf(x, m, s)
        mass += w * (stats.norm.cdf(domain[1], m, s) - stats.norm.cdf(domain[0], m, s))
    inside = (x >= domain[0]) & (x <= domain[1])
    return np.where(inside, pdf / mass, 0.0)


def lognormal_sample(n, seed=None, sigma=1.0, upper=DEMO_DOMAIN[1]) -> np.ndarray:
    """Standard lognormal draws (log-sd ``sigma``) rejected above ``upper``."""
    rng = _rng(seed)
    out = np.empty(0)
    while out.size < n:
        x = rng.lognormal(0.0, sigma, size=n)
        out = np.concatenate([out, x[x <= upper]])
    return out[:n]


def lognormal_pdf(x, sigma=1.0, upper=DEMO_DOMAIN[1]) -> np.ndarray:
    dist = stats.lognorm(sigma)
    x = np.asarray(x, dtype=float)
    return np.where((x > 0) & (x <= upper), dist.pdf(np.clip(x, 1e-300, None)) / dist.cdf(upper), 0.0)


def synthetic_ocean(seed=None, n_lat=5, n_lon=5, depths=(25.0, 85.0, 440.0), field_fraction=0.4,
                    repeats=3):
    """Toy model/field pair on a small block of grid cells.

    Cells span latitudes on both sides of 45 S and depths inside and below
    the euphotic zone. The model fills every cell for the 1980s and 1990s with
    ``repeats`` records per cell; the field data cover a random subset of cells
    in the 1990s, with an offset and extra noise.

    Latitudes sit on cell centres, as for data interpolated onto the model
    grid, so both sources place every cell on the same side of 45 S.
    Longitudes and depths are jittered within their cells.

    Returns
    -------
    (GeoDataset, GeoDataset)
        Model and field datasets.
    """
    from .ocean import LAT_STEP, LON_STEP, GeoDataset

    rng = _rng(seed)
    lat_q = np.arange(n_lat) - 27  # straddles -45 degrees
    lon_q = np.arange(n_lon) * 5
    cells = [(a, o, d) for a in lat_q for o in lon_q for d in depths]

    def cell_value(a, d):
        south = a * LAT_STEP <= -45
        return (-27.0 if south else -22.0) - 0.002 * d

    model = {c: [] for c in ("lat", "lon", "depth", "decade", "value")}
    for a, o, d in cells:
        for decade in (1980, 1990):
            for _ in range(repeats):
                model["lat"].append(a * LAT_STEP)
                model["lon"].append(o * LON_STEP + rng.uniform(-1, 1))
                model["depth"].append(d + rng.uniform(-10, 10))
                model["decade"].append(decade)
                model["value"].append(cell_value(a, d) + rng.normal(0, 1.0))
    field = {c: [] for c in model}
    for a, o, d in cells:
        if rng.random() < field_fraction:
            field["lat"].append(a * LAT_STEP)
            field["lon"].append(o * LON_STEP)
            field["depth"].append(d)
            field["decade"].append(1990)
            field["value"].append(cell_value(a, d) + 0.7 + rng.normal(0, 1.5))
    return GeoDataset(**model, source="model"), GeoDataset(**field, source="field")
