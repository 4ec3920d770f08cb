"""
Diffusion vs Gaussian KDE on a trimodal sample
==============================================

Both estimators see the same 50 and 100 draws from a three-component
mixture. The Gaussian KDE uses a single global bandwidth (Scott's rule),
which blurs the small right-hand component into its neighbour; the
diffusion estimate adapts its smoothing to a pilot density and keeps the
modes apart.
"""

import numpy as np

from kdeassess import count_modes, diffkde, gaussian_kde_evaluate, make_grid
from kdeassess.synthetic import trimodal_pdf, trimodal_sample

grid = make_grid(-1.0, 12.0, 1024)
truth = trimodal_pdf(grid.nodes)
print("true density has modes at", np.round(grid.nodes[1:-1][
    (truth[1:-1] > truth[:-2]) & (truth[1:-1] > truth[2:])], 2))

for n in (50, 100):
    x = trimodal_sample(n, seed=0)
    diff = diffkde(x, grid)
    gauss = gaussian_kde_evaluate(x, grid)
    print(f"\nn = {n}")
    for d in (diff, gauss):
        err = np.max(np.abs(d.y - truth))
        print(f"  {d.method:9s} smoothing={d.smoothing:.4f}  modes={count_modes(d)}  "
              f"max|f - truth|={err:.3f}  mass={d.mass():.6f}")

# The smoothing value is a variance in squared data units for both methods;
# the diffusion solver additionally reports the time it actually ran to.
print("\ndiffusion solver time:", diff.info["solver_time"])
