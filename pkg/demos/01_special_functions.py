"""
Wright and Mainardi functions
=============================

The similarity profile of time-fractional diffusion is the Wright function
``W(z; -alpha/2, 1)``. Its derivative is the Mainardi function, and
``1 - W(-x; -alpha/2, 1)`` plays the part of the error function.
"""

# %%
# At ``nu = 1/2`` the Mainardi function is a Gaussian, which makes a handy
# sanity check.
import math

import numpy as np

from fracstefan import fractional_erf, mainardi, wright_w

z = np.linspace(0.0, 4.0, 9)
gauss = np.exp(-z**2 / 4) / math.sqrt(math.pi)
print("max |M_1/2 - gaussian| =", np.max(np.abs(mainardi(0.5, z) - gauss)))

# %%
# For ``z <= -2`` the alternating series cancels badly, so ``method="auto"``
# switches to a positive-integrand quadrature. Both routes agree where the
# series is still usable.
z = np.array([-1.0, -2.0, -4.0, -6.0])
print("series  ", wright_w(z, -0.3, 1.0, method="series"))
print("integral", wright_w(z, -0.3, 1.0, method="integral"))

# %%
# The fractional erf rises from 0 to 1 and tends to ``erf(x/2)`` as
# ``alpha -> 1``.
x = np.linspace(0.0, 3.0, 7)
for alpha in (0.3, 0.7, 0.99, 0.9999):
    err = np.max(np.abs(fractional_erf(x, alpha) - [math.erf(v / 2) for v in x]))
    print(f"alpha={alpha:<7} max |ferf - erf(x/2)| = {err:.2e}")
