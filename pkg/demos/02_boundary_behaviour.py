"""
Mass near a hard boundary
=========================

Lognormal data pile up against zero. On a domain that starts at zero the
Gaussian kernels spill across the edge and that mass is lost; the diffusion
estimate has zero-flux walls and integrates to one by construction.
"""

import numpy as np

from kdeassess import diffkde, gaussian_kde_evaluate, integrate, make_grid
from kdeassess.synthetic import lognormal_pdf, lognormal_sample

x = lognormal_sample(100, seed=0)
grid = make_grid(0.0, 12.0, 1024)
diff = diffkde(x, grid)
gauss = gaussian_kde_evaluate(x, grid)

print("fraction of the sample below 0.5:", np.mean(x < 0.5))
print("integral, diffusion:", integrate(diff.as_grid_function()))
print("integral, gaussian: ", integrate(gauss.as_grid_function()))

# Value at the wall compared with the truth.
print("\ndensity at x = 0.1")
i = np.searchsorted(grid.nodes, 0.1)
print("  truth    ", lognormal_pdf(grid.nodes[i]))
print("  diffusion", diff.y[i])
print("  gaussian ", gauss.y[i])
