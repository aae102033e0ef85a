"""
Solving the three fractional Stefan problems
============================================

Every problem has a front ``s(t) = lam * root * t^(alpha/2)`` and a
temperature ``u = a + b W(-x/(lam t^(alpha/2)); -alpha/2, 1)``. Only the
wall condition changes the root and the pair ``(a, b)``.
"""

# %%
import numpy as np

from fracstefan import Convective, Dirichlet, Flux, ProblemSpec, solve
from fracstefan.stefan import evaluate_s, sample_profile
from fracstefan.verification import residual_report

specs = {
    "fixed wall temperature": ProblemSpec(0.5, 1.0, 1.0, 0.0, Dirichlet(1.0)),
    "imposed heat flux": ProblemSpec(0.5, 1.0, 1.0, 0.0, Flux(1.0)),
    "convective wall": ProblemSpec(0.5, 1.0, 1.0, 0.0, Convective(1.0, 1.0, 1.0)),
}

for name, spec in specs.items():
    sol = solve(spec)
    rep = residual_report(sol, spec)
    print(f"{name:<24} root={sol.root:.12f}  a={sol.a:+.6f}  b={sol.b:+.6f}  "
          f"stefan={rep.stefan_relative:.1e}  pde={rep.pde_relative:.1e}")

# %%
# Profiles can be sampled beyond the front; the flag marks the liquid region.
sol = solve(specs["convective wall"])
s1 = evaluate_s(sol, 1.0)
x = np.linspace(0.0, 1.25 * s1, 6)
u, inside = sample_profile(sol, x, 1.0)
for xi, ui, fi in zip(x, u, inside):
    print(f"x={xi:.4f}  u={ui:+.6f}  in_domain={bool(fi)}")
