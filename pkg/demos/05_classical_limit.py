"""
Recovering the classical solution as alpha -> 1
===============================================

For ``alpha = 1`` the convective problem has the root of
``eta (erf(eta/2) + m/(h lam sqrt(pi))) exp(eta^2/4) = 2 k (D - C) / (lam^2 sqrt(pi))``.
The fractional roots and fields approach it monotonically.
"""

# %%
from fracstefan import Convective, ProblemSpec
from fracstefan.verification import classical_root, limit_study

spec = ProblemSpec(0.9, 1.0, 1.0, 0.0, Convective(1.0, 1.0, 1.0))
study = limit_study(spec, (0.9, 0.99, 0.999, 0.9999))
print("classical root:", study.classical_root)
for a, r, fe, fl in zip(study.alphas, study.roots, study.front_errors, study.field_errors):
    print(f"alpha={a:<7} root={r:.10f}  front err={fe:.2e}  field err={fl:.2e}")
print("monotone decrease:", study.monotone)

# %%
# Dropping the factor 2 on the right-hand side moves the root far away from
# the fractional family, which is how that factor was pinned down.
print("root without the factor 2:", classical_root(1, 1, 1, 1, 1, 0, printed=True))
