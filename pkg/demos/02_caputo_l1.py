"""
Caputo derivative by the L1 scheme
==================================

The L1 quadrature integrates piecewise-linear interpolants of ``f`` against
the Caputo kernel. It is exact for linear data and converges like
``dt^(2 - alpha)`` for smooth data.
"""

# %%
import math

from fracstefan import TimeSamples, caputo_l1, caputo_power, graded_grid

alpha = 0.3


def error(beta, n, grading=1.0):
    t = graded_grid(1.0, n, grading)
    return abs(caputo_l1(TimeSamples(t, t**beta), alpha) - caputo_power(beta, alpha, 1.0))


# %%
# Smooth data (``t^2``) shows the textbook rate on a uniform grid.
e = [error(2.0, n) for n in (100, 200, 400)]
print("t^2       uniform orders:", [round(math.log2(e[i] / e[i + 1]), 3) for i in range(2)])

# %%
# A power with a weak singularity at 0, such as the front ``t^(alpha/2)``,
# only reaches ``1 + alpha/2`` on a uniform grid. Clustering nodes near 0
# with ``t_j = (j/N)^r`` restores ``2 - alpha``.
beta = alpha / 2
r = (2 - alpha) / (1 + beta)
for label, g in (("uniform", 1.0), (f"graded r={r:.2f}", r)):
    e = [error(beta, n, g) for n in (100, 200, 400)]
    print(f"t^(a/2)   {label:<15} orders:", [round(math.log2(e[i] / e[i + 1]), 3) for i in range(2)])
