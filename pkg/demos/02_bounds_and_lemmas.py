"""
Coefficient bounds and their monotonicity
=========================================

Tabulate the four bound families, check the gap identities, and run the
monotonicity scans on the lemma polynomials.
"""

import numpy as np

from qcharmonic import bounds as bd
from qcharmonic.bounds import BoundFamily, LemmaPoly

k = 0.5
print(f"k = {k}, k0 = {bd.k0_of_k(k)}")
for fam in BoundFamily:
    pairs = [fam.bounds(n, k) for n in range(2, 6)]
    print(f"{fam.value:8s}", "  ".join(f"({x:.4f}, {y:.4f})" for x, y in pairs))

# A - B = n and a - b = 1 for every k
ks = np.linspace(0, 0.99, 50)
gap = max(abs(bd.A(n, t) - bd.B(n, t) - n) for n in range(2, 30) for t in ks)
print(f"\nmax |A - B - n| = {gap:.1e}")

# the rational form loses digits near k = 1, the positive sum does not
for t in (0.9, 0.999, 0.99999):
    print(f"k = {t}: cubic form {bd.A_cubic(20, t):.12f}   sum form {bd.A_sum(20, t):.12f}")

# phi_n = n A(n, .) is strictly increasing on [0, 1)
for n in (2, 5, 20):
    rep = bd.monotonicity_scan(LemmaPoly("PHI", n))
    print(f"PHI_{n}: {rep.violations} violations, smallest step {rep.min_step:.2e}")

# D_n > 0 on [0, 1) with a fourfold zero at 1
D = LemmaPoly("D", 5)
print(f"\nD_5 coefficients {D.coeffs}, zero of order {D.root_multiplicity} at x = 1, D_5(0) = {D(0.0)}")
print("limits at n = 4:", bd.limit_values(4))
