"""
The slit image of P_k
=====================

``P_k`` maps the disk onto the plane minus ``(-inf, M(k)]``.  Trace the image
of a circle close to the boundary, compare with ``M(k)``, and save a plot.
"""

from pathlib import Path

import numpy as np

from qcharmonic.geometry import M, hyperbola_trace, min_boundary_modulus, slit_check

for k in (0.0, 0.25, 0.5, 0.75, 0.9, 0.999):
    print(f"M({k}) = {M(k):+.9f}")
print("limit as k -> 1: -1/6 =", -1 / 6)

k = 0.5
for r in (0.9, 0.99, 0.999):
    res = slit_check(k, 4096, r)
    print(f"r = {r}: max |Im| = {res.info['max_abs_im']:.2e}, max Re - M = {res.info['slack']:+.2e}")

# horizontal lines come from the hyperbolas xi * eta = c
for c in (-1.0, 0.5, 2.0):
    hyp = hyperbola_trace(k, c)
    print(f"c = {c:+}: Im w = {hyp.points.imag.mean():+.6f}, formula vs direct {hyp.residual_max:.1e}")

print(f"\nmin |P_k| on r = 0.9999: {min_boundary_modulus(f'pk:{k}', 0.9999):.7f}, |M(k)| = {abs(M(k)):.7f}")

out = Path(__file__).with_name("slit_pk05.svg")
slit_check(k, 2048, 0.99).plot(out)
print("plot written to", out)
