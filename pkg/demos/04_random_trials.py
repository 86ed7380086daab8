"""
Random trials and extremal attainment
=====================================

Shear random admissible data, compare the coefficients with the bounds, and
look at how the extremal maps attain them.
"""

import numpy as np

from qcharmonic import bounds as bd
from qcharmonic.harness import Family, TrialConfig, attainment_report, run_trials

for fam in Family:
    rep = run_trials(TrialConfig(fam, k=0.7, order=32, trials=100, seed=3))
    m = np.array([o.worst_margin for o in rep.outcomes if o.worst_margin is not None])
    print(f"{fam.value:17s} violations {len(rep.violations)}  worst margin {m.min():.3e}  median {np.median(m):.3e}")

k = 0.5
k0 = bd.k0_of_k(k)
table = attainment_report(8, k)
print()
for fam in table.families():
    print(f"{fam:20s} max |margin| {table.max_abs_margin(fam):.2e}")

# the literal Q misses the convex bound by exactly 2k b(n, k0)
for row in table.select("convex/a@q")[:4]:
    print(f"n = {row.n}: margin {row.margin:.6f}   2k b(n,k0) = {2 * k * bd.b(row.n, k0):.6f}")
print(f"sup |omega| of the affine extremals: {table.notes['sup_omega_q']:.4f} (k = {k})")
