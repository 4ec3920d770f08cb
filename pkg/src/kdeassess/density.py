"""Grid-aligned density estimates and mode detection."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import Grid1D, GridFunction, integrate

METHODS = ("gaussian", "diffusion")

# magnitude below which negative round-off is zeroed
ROUNDOFF = 1e-12


@dataclass(frozen=True, eq=False)
class DensityEstimate:
    """Density values on ``grid`` plus the parameters that produced them.

    Attributes
    ----------
    method : {"gaussian", "diffusion"}
    smoothing : float
        Kernel variance ``t`` for the Gaussian estimator, final time ``T``
        for the diffusion estimator (both in squared data units).
    sample_count : int
    info : dict
        Free-form diagnostics (bandwidth rule, solver time, ...).
    """

    grid: Grid1D
    y: np.ndarray
    method: str
    smoothing: float
    sample_count: int
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        y = np.array(self.y, dtype=float)
        if y.shape != (self.grid.size,):
            raise ValueError(f"expected {self.grid.size} values, got shape {y.shape}")
        if y.size and y.min() < -ROUNDOFF:
            raise ValueError(f"density has negative entries (min {y.min():.3e})")
        y[y < 0] = 0.0
        y.flags.writeable = False
        object.__setattr__(self, "y", y)

    @property
    def x(self) -> np.ndarray:
        return self.grid.nodes

    def as_grid_function(self) -> GridFunction:
        return GridFunction(self.grid, self.y)

    def mass(self) -> float:
        return integrate(self.as_grid_function())


def find_modes(y, prominence=0.05) -> np.ndarray:
    """Indices of prominent local maxima of ``y``.

    Node ``i`` (interior only) is a candidate when ``y[i-1] < y[i] >= y[i+1]``.
    Its prominence is the height above the higher of the two flanking minima,
    each taken between ``i`` and the nearest strictly higher node on that side
    (or the end of the array). Candidates whose prominence is below
    ``prominence * max(y)`` are discarded.
    """
    y = np.asarray(y, dtype=float)
    if y.size < 3:
        return np.empty(0, dtype=int)
    threshold = prominence * y.max()
    found = []
    for i in range(1, y.size - 1):
        if not (y[i] > y[i - 1] and y[i] >= y[i + 1]):
            continue
        peak = y[i]
        j = i - 1
        left_min = peak
        while j >= 0 and y[j] <= peak:
            left_min = min(left_min, y[j])
            j -= 1
        k = i + 1
        right_min = peak
        while k < y.size and y[k] <= peak:
            right_min = min(right_min, y[k])
            k += 1
        if peak - max(left_min, right_min) >= threshold:
            found.append(i)
    return np.array(found, dtype=int)


def count_modes(estimate, prominence=0.05) -> int:
    y = estimate.y if isinstance(estimate, (DensityEstimate, GridFunction)) else estimate
    return len(find_modes(y, prominence))
