"""Uniform 1-D evaluation grids, linear binning and trapezoidal quadrature."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    DegenerateDataError,
    DomainError,
    GridMismatchError,
    InsufficientDataError,
    OutOfDomainError,
    ResolutionError,
)

MIN_INTERVALS = 16
DEFAULT_INTERVALS = 1024
DEFAULT_MARGIN = 0.1


@dataclass(frozen=True)
class Grid1D:
    """Closed interval ``[lo, hi]`` split into ``m`` equal intervals.

    Direct construction accepts any ``m >= 1`` so that small worked
    examples stay readable; :func:`make_grid` enforces the resolution
    floor used by the estimators.
    """

    lo: float
    hi: float
    m: int

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (np.isfinite(lo) and np.isfinite(hi)):
            raise DomainError(f"grid bounds must be finite, got [{lo}, {hi}]")
        if not hi > lo:
            raise DomainError(f"empty domain: hi={hi} must exceed lo={lo}")
        if int(self.m) != self.m or self.m < 1:
            raise ResolutionError(f"number of intervals must be a positive integer, got {self.m}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "m", int(self.m))

    @property
    def dx(self) -> float:
        return (self.hi - self.lo) / self.m

    @cached_property
    def nodes(self) -> np.ndarray:
        x = self.lo + np.arange(self.m + 1) * self.dx
        x.flags.writeable = False
        return x

    @property
    def size(self) -> int:
        return self.m + 1

    def trapezoid_weights(self) -> np.ndarray:
        w = np.full(self.m + 1, self.dx)
        w[0] = w[-1] = 0.5 * self.dx
        return w


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Node values ``y`` of a function sampled on ``grid``."""

    grid: Grid1D
    y: np.ndarray

    def __post_init__(self):
        y = np.array(self.y, dtype=float)
        if y.shape != (self.grid.size,):
            raise GridMismatchError(
                f"expected {self.grid.size} node values, got shape {y.shape}"
            )
        if not np.all(np.isfinite(y)):
            raise ValueError("grid function values must be finite")
        y.flags.writeable = False
        object.__setattr__(self, "y", y)

    def __add__(self, other):
        _check_same_grid(self.grid, other.grid)
        return GridFunction(self.grid, self.y + other.y)

    def __mul__(self, scalar):
        return GridFunction(self.grid, self.y * float(scalar))

    __rmul__ = __mul__


def make_grid(lo, hi, m=DEFAULT_INTERVALS) -> Grid1D:
    """Build an estimator grid over ``[lo, hi]`` with ``m`` intervals.

    Raises
    ------
    DomainError
        If ``hi <= lo``.
    ResolutionError
        If ``m < 16``.
    """
    if not float(hi) > float(lo):
        raise DomainError(f"empty domain: hi={hi} must exceed lo={lo}")
    if int(m) != m or m < MIN_INTERVALS:
        raise ResolutionError(f"grid needs at least {MIN_INTERVALS} intervals, got {m}")
    return Grid1D(lo, hi, int(m))


def as_sample(values, min_size=2) -> np.ndarray:
    """Validate a 1-D sample and return it as a float array."""
    x = np.asarray(values, dtype=float).ravel()
    if x.size < min_size:
        raise InsufficientDataError(
            f"need at least {min_size} sample values, got {x.size}"
        )
    if not np.all(np.isfinite(x)):
        raise ValueError("sample contains non-finite values")
    return x


def default_domain(values, margin_fraction=DEFAULT_MARGIN):
    """Data range padded by ``margin_fraction`` of the range on both sides."""
    x = as_sample(values)
    if margin_fraction < 0:
        raise ValueError(f"margin_fraction must be non-negative, got {margin_fraction}")
    lo, hi = float(x.min()), float(x.max())
    span = hi - lo
    if span == 0:
        raise DegenerateDataError(f"all sample values are identical ({lo})")
    return lo - margin_fraction * span, hi + margin_fraction * span


def bin_samples(values, grid: Grid1D) -> GridFunction:
    """Linear binning of the empirical measure onto the grid nodes.

    Each value splits its mass between the two bracketing nodes in
    proportion to proximity. Node ``i`` carries the mass of its dual cell
    (width ``dx``, or ``dx/2`` at the two end nodes), so the result is a
    density whose trapezoidal integral is exactly one.
    """
    x = as_sample(values, min_size=1)
    outside = x[(x < grid.lo) | (x > grid.hi)]
    if outside.size:
        shown = ", ".join(f"{v:g}" for v in outside[:10])
        more = "" if outside.size <= 10 else f" (+{outside.size - 10} more)"
        raise OutOfDomainError(
            f"{outside.size} value(s) outside [{grid.lo:g}, {grid.hi:g}]: {shown}{more}",
            outside,
        )
    pos = (x - grid.lo) / grid.dx
    left = np.minimum(np.floor(pos).astype(np.int64), grid.m - 1)
    frac = np.clip(pos - left, 0.0, 1.0)
    mass = np.bincount(left, weights=1.0 - frac, minlength=grid.size)
    mass += np.bincount(left + 1, weights=frac, minlength=grid.size)
    y = mass / (x.size * grid.trapezoid_weights())
    return GridFunction(grid, y)


def integrate(f: GridFunction) -> float:
    """Trapezoidal integral over the whole grid."""
    return float(np.dot(f.grid.trapezoid_weights(), f.y))


def cumulative_integral(f: GridFunction) -> np.ndarray:
    """Running trapezoidal integral, starting at 0 on the first node."""
    out = np.zeros(f.grid.size)
    np.cumsum(0.5 * f.grid.dx * (f.y[1:] + f.y[:-1]), out=out[1:])
    return out


def _check_same_grid(a: Grid1D, b: Grid1D):
    if a != b:
        raise GridMismatchError(f"grids differ: {a} vs {b}")
