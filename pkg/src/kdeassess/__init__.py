"""Diffusion-based and Gaussian kernel density estimation for comparing
differently sized 1-D datasets by the Wasserstein-1 distance."""

from .density import DensityEstimate, count_modes, find_modes
from .diffusion import (
    PilotDensity,
    SmoothingSchedule,
    build_pilot,
    diffkde,
    diffkde_solve,
    silverman_time,
)
from .errors import KdeAssessError
from .gaussian import GaussianBandwidth, gaussian_kde_evaluate, scott_bandwidth, silverman_bandwidth
from .grid import Grid1D, GridFunction, bin_samples, default_domain, integrate, make_grid
from .ocean import GeoDataset, GeoRecord, apply_region, decade_mean, extract_values, load_csv, mask_common
from .pipeline import ComparisonReport, ScenarioConfig, run_comparison, run_suite
from .wasserstein import to_cdf, wasserstein1

__version__ = "0.1.0"
