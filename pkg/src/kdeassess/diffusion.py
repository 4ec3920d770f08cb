"""Diffusion-based kernel density estimation.

The estimate is the solution at time ``T`` of

    du/dt = 1/2 d2/dx2 (u / p)          on [lo, hi]
    d/dx (u / p) = 0                     at lo and hi
    u(x, 0) = empirical measure of the sample

where ``p`` is a strictly positive pilot density. Smoothing is local: a
point mass at ``x`` spreads with variance rate ``1/p(x)``, so the kernel
is narrow where the pilot is large.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .density import ROUNDOFF, DensityEstimate
from .errors import GridMismatchError, NegativeDensityError, SingularSystemError
from .gaussian import gaussian_kernel_sum, silverman_variance
from .grid import Grid1D, GridFunction, as_sample, bin_samples, integrate

DEFAULT_STEPS = 32
MIN_STEPS = 8
PILOT_FLOOR_FRACTION = 1e-3


@dataclass(frozen=True, eq=False)
class PilotDensity:
    """Strictly positive pilot ``p`` on a grid, clamped below at ``floor``."""

    grid: Grid1D
    y: np.ndarray
    floor: float
    kind: str = "gaussian"

    def __post_init__(self):
        y = np.array(self.y, dtype=float)
        if y.shape != (self.grid.size,):
            raise GridMismatchError(f"pilot needs {self.grid.size} values, got {y.shape}")
        if not self.floor > 0:
            raise ValueError(f"pilot floor must be positive, got {self.floor}")
        if not np.all(np.isfinite(y)) or y.min() < self.floor:
            raise ValueError("pilot values must be finite and >= floor")
        y.flags.writeable = False
        object.__setattr__(self, "y", y)

    def as_grid_function(self) -> GridFunction:
        return GridFunction(self.grid, self.y)


@dataclass(frozen=True)
class SmoothingSchedule:
    """Final diffusion time ``T`` and number of implicit Euler steps."""

    T: float
    steps: int = DEFAULT_STEPS
    rule: str = "manual"

    def __post_init__(self):
        if not (np.isfinite(self.T) and self.T > 0):
            raise ValueError(f"final time must be positive, got {self.T}")
        if int(self.steps) != self.steps or self.steps < MIN_STEPS:
            raise ValueError(f"need at least {MIN_STEPS} time steps, got {self.steps}")
        if self.rule not in ("silverman_squared", "manual"):
            raise ValueError(f"unknown schedule rule {self.rule!r}")

    @property
    def dt(self) -> float:
        return self.T / self.steps


def silverman_time(values, steps=DEFAULT_STEPS) -> SmoothingSchedule:
    """``T = (0.9 * min(s, IQR/1.34) * n**-0.2)**2``."""
    return SmoothingSchedule(silverman_variance(values), steps, "silverman_squared")


def build_pilot(values, grid: Grid1D, kind="gaussian", floor_fraction=PILOT_FLOOR_FRACTION) -> PilotDensity:
    """Pilot density for the adaptive diffusion.

    ``kind="gaussian"`` evaluates a Gaussian KDE with Silverman variance,
    rescales it to unit mass on the grid and clamps it from below at
    ``floor_fraction * max(p)``. ``kind="uniform"`` returns the constant
    ``1/(hi - lo)``.
    """
    if kind == "uniform":
        p = np.full(grid.size, 1.0 / (grid.hi - grid.lo))
        return PilotDensity(grid, p, floor_fraction * p[0], "uniform")
    if kind != "gaussian":
        raise ValueError(f"unknown pilot kind {kind!r}")
    x = as_sample(values)
    p = gaussian_kernel_sum(x, grid.nodes, silverman_variance(x))
    p /= integrate(GridFunction(grid, p))
    floor = floor_fraction * p.max()
    return PilotDensity(grid, np.maximum(p, floor), floor, "gaussian")


def diffusion_operator(pilot: PilotDensity):
    """Bands of ``L u = 1/2 D2 (u / p)`` with reflecting ghost nodes.

    Returns ``(lower, diag, upper)`` with ``lower[i] = L[i+1, i]`` and
    ``upper[i] = L[i, i+1]``. The ghost values ``w[-1] = w[1]`` and
    ``w[m+1] = w[m-1]`` (``w = u/p``) double the single off-diagonal
    coupling in the first and last rows, which makes every column sum to
    zero under trapezoidal weights.
    """
    inv_p = 1.0 / pilot.y
    c = 0.5 / pilot.grid.dx ** 2
    diag = -2.0 * c * inv_p
    upper = c * inv_p[1:].copy()
    lower = c * inv_p[:-1].copy()
    upper[0] *= 2.0
    lower[-1] *= 2.0
    return lower, diag, upper


def diffusion_matrix(pilot: PilotDensity) -> np.ndarray:
    """Dense form of :func:`diffusion_operator`, for inspection on small grids."""
    lower, diag, upper = diffusion_operator(pilot)
    return np.diag(diag) + np.diag(upper, 1) + np.diag(lower, -1)


class TridiagonalSolver:
    """Thomas algorithm with the elimination factors computed once.

    Solves ``A x = d`` for a fixed tridiagonal ``A`` given by its three
    bands (``lower[i] = A[i+1, i]``, ``upper[i] = A[i, i+1]``). Stable
    without pivoting when ``A`` is diagonally dominant.
    """

    def __init__(self, lower, diag, upper):
        self.lower = [float(v) for v in lower]
        diag = [float(v) for v in diag]
        upper = [float(v) for v in upper]
        n = len(diag)
        if len(self.lower) != n - 1 or len(upper) != n - 1:
            raise ValueError("band lengths do not match")
        self.n = n
        self.pivot = [0.0] * n
        self.ratio = [0.0] * (n - 1)
        piv = diag[0]
        for i in range(n):
            if i:
                piv = diag[i] - self.lower[i - 1] * self.ratio[i - 1]
            if piv == 0.0:
                raise SingularSystemError(f"zero pivot in row {i}")
            self.pivot[i] = piv
            if i < n - 1:
                self.ratio[i] = upper[i] / piv

    def solve(self, rhs) -> list:
        n, low, piv, ratio = self.n, self.lower, self.pivot, self.ratio
        d = [float(v) for v in rhs]
        d[0] /= piv[0]
        for i in range(1, n):
            d[i] = (d[i] - low[i - 1] * d[i - 1]) / piv[i]
        for i in range(n - 2, -1, -1):
            d[i] -= ratio[i] * d[i + 1]
        return d


def diffkde_solve(u0: GridFunction, pilot: PilotDensity, schedule: SmoothingSchedule,
                  sample_count=1) -> DensityEstimate:
    """Advance the binned sample ``u0`` to time ``schedule.T``.

    Each of the ``schedule.steps`` backward Euler steps solves
    ``(I - dt L) u_next = u``. The system matrix is an M-matrix, so
    the iteration preserves non-negativity and, by the zero weighted
    column sums of ``L``, the trapezoidal mass of ``u0``. Negative
    round-off above -1e-12 is zeroed; anything lower raises.
    """
    if u0.grid != pilot.grid:
        raise GridMismatchError(f"pilot grid {pilot.grid} does not match data grid {u0.grid}")
    lower, diag, upper = diffusion_operator(pilot)
    dt = schedule.dt
    solver = TridiagonalSolver(-dt * lower, 1.0 - dt * diag, -dt * upper)
    u = list(u0.y)
    for _ in range(schedule.steps):
        u = solver.solve(u)
    u = np.array(u)
    lowest = float(u.min())
    if lowest < -ROUNDOFF:
        raise NegativeDensityError(f"diffusion produced a negative density ({lowest:.3e})")
    return DensityEstimate(
        u0.grid, u, "diffusion", schedule.T, sample_count,
        {"rule": schedule.rule, "steps": schedule.steps, "min_before_clip": lowest,
         "pilot": pilot.kind},
    )


def pilot_scale(u0: GridFunction, pilot: PilotDensity) -> float:
    """Geometric mean of the pilot under the binned sample, ``exp(int u0 log p)``.

    Multiplying a variance-like ``T`` by this value gives the solver time at
    which the local kernel variance ``T * scale / p(x)`` equals ``T`` where the
    pilot sits at its sample-weighted geometric mean. For a uniform pilot
    this makes the estimate a Gaussian KDE with variance exactly ``T``.
    """
    w = u0.y / integrate(u0)
    return float(np.exp(integrate(GridFunction(u0.grid, w * np.log(pilot.y)))))


def diffkde(values, grid: Grid1D, *, pilot="gaussian", schedule: SmoothingSchedule | None = None) -> DensityEstimate:
    """Diffusion KDE of ``values`` on ``grid``.

    Bins the sample, builds the pilot, picks ``T`` by the Silverman rule
    (unless ``schedule`` is given) and solves to time ``T * pilot_scale``.
    ``smoothing`` on the result is the variance-scale ``T``; the solver
    time is reported in ``info["solver_time"]``.

    Parameters
    ----------
    values : array_like
        At least two finite values inside ``[grid.lo, grid.hi]``.
    grid : Grid1D
    pilot : {"gaussian", "uniform"} or PilotDensity
    schedule : SmoothingSchedule, optional
        ``T`` is interpreted as a kernel variance in squared data units.
    """
    x = as_sample(values)
    u0 = bin_samples(x, grid)
    if not isinstance(pilot, PilotDensity):
        pilot = build_pilot(x, grid, kind=pilot)
    if schedule is None:
        schedule = silverman_time(x)
    scale = pilot_scale(u0, pilot)
    solved = diffkde_solve(u0, pilot, SmoothingSchedule(schedule.T * scale, schedule.steps, schedule.rule), x.size)
    info = dict(solved.info, solver_time=schedule.T * scale, pilot_scale=scale)
    return DensityEstimate(grid, solved.y, "diffusion", schedule.T, x.size, info)
