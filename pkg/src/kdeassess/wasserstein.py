"""Wasserstein-1 distance between densities sharing a grid."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridMismatchError, ZeroMassError
from .grid import Grid1D, GridFunction, cumulative_integral

MIN_MASS = 1e-12


@dataclass(frozen=True, eq=False)
class CdfFunction:
    """Normalised cumulative distribution on grid nodes.

    ``raw_mass`` is the trapezoidal mass of the density before
    normalisation; values below one flag mass lost at the boundaries.
    """

    grid: Grid1D
    c: np.ndarray
    raw_mass: float


def _values(d):
    return d.grid, np.asarray(d.y, dtype=float)


def to_cdf(density) -> CdfFunction:
    """Cumulative trapezoid of ``density`` divided by its total mass."""
    grid, y = _values(density)
    c = cumulative_integral(GridFunction(grid, y))
    mass = float(c[-1])
    if not mass > MIN_MASS:
        raise ZeroMassError(f"density has no mass (integral {mass:.3e})")
    c /= mass
    c[-1] = 1.0
    c.flags.writeable = False
    return CdfFunction(grid, c, mass)


def wasserstein1(a, b) -> float:
    """``W1 = int |F_a - F_b| dx`` over the shared grid, both CDFs normalised.

    Accepts anything with ``grid`` and ``y`` attributes (density estimates,
    grid functions) or precomputed :class:`CdfFunction` objects.
    """
    ca = a if isinstance(a, CdfFunction) else to_cdf(a)
    cb = b if isinstance(b, CdfFunction) else to_cdf(b)
    if ca.grid != cb.grid:
        raise GridMismatchError(f"cannot compare densities on {ca.grid} and {cb.grid}")
    diff = np.abs(ca.c - cb.c)
    return float(ca.grid.dx * (diff.sum() - 0.5 * (diff[0] + diff[-1])))
