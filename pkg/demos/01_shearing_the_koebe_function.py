"""
Shearing the Koebe function
===========================

Build the K-quasiconformal harmonic Koebe function ``P_k`` by shearing
``z/(1-z)^2`` with dilatation ``kz``, then compare its coefficients with the
closed-form bounds ``A(n,k)``, ``B(n,k)``.
"""

import numpy as np

from qcharmonic import bounds as bd
from qcharmonic.catalog import coefficients, evaluate_closed
from qcharmonic.harmonic import dilatation
from qcharmonic.shear import construct_P_k

k, N = 0.5, 12

# h - g = z/(1-z)^2 and g' = kz h'
pk = construct_P_k(k, N)
print("n      a_n (shear)    A(n,k)      b_n (shear)    B(n,k)")
for n in range(2, N + 1):
    print(f"{n:2d}  {pk.a[n].real:12.8f}  {bd.A(n, k):12.8f}  {pk.b[n].real:12.8f}  {bd.B(n, k):12.8f}")

# the dilatation is recovered exactly
omega = dilatation(pk)
print("\nomega coefficients:", np.round(omega.coeffs.real, 12))

# series and closed form agree inside the disk
z = 0.3 * np.exp(1j * np.linspace(0, 2 * np.pi, 7))
series = coefficients(f"pk:{k}", 200)(z)
closed = evaluate_closed(f"pk:{k}", z)
print(f"\nmax |series - closed form| at |z| = 0.3: {np.max(np.abs(series - closed)):.2e}")

# as k -> 1 the coefficients climb toward the harmonic Koebe function
koebe = coefficients("koebe-h", 6)
for kk in (0.0, 0.5, 0.9, 0.99, 0.999):
    print(f"k = {kk:5.3f}   A(6,k) = {bd.A(6, kk):9.5f}   (limit {koebe.a[6].real:.5f})")
