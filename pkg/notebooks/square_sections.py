"""
Vertices of random plane sections of the cube
=============================================

A random 2-plane through the centre of [-1, 1]^n cuts the cube in a
centrally symmetric polygon.  Here we compare three ways of getting its
expected vertex count: quadrature, exact polygons and Gaussian hulls.
"""

import math

from cubesections import RunConfig, estimate, f0_asymptotic, f0_exact

# The quadrature value for the 3-cube equals 24/pi * arctan(1/sqrt 2)
print("f0(2, 3) =", f0_exact(2, 3))
print("closed  =", 24 / math.pi * math.atan(1 / math.sqrt(2)))

# Monte Carlo: cut the cube directly, or take the symmetric hull of
# n planar Gaussian points.  Both estimate the same number.
print()
print(f"{'n':>4} {'quadrature':>11} {'polygon':>16} {'gauss hull':>16} {'asymptotic':>11}")
for n in (3, 5, 10, 30, 100):
    poly = estimate(RunConfig((0, 2, n), 40_000, seed=n, workers=4, method="polygon_exact"))
    hull = estimate(RunConfig((0, 2, n), 40_000, seed=n, workers=4, method="gaussian_hull"))
    print(f"{n:>4} {f0_exact(2, n):>11.5f} "
          f"{poly.mean:>9.4f} ± {poly.std_error:.3f} "
          f"{hull.mean:>9.4f} ± {hull.std_error:.3f} "
          f"{f0_asymptotic(2, n):>11.4f}")

# Only parallelograms and hexagons occur in the 3-cube, and
# parallelograms are the more common shape.
hull = estimate(RunConfig((0, 2, 3), 200_000, seed=1, workers=4, method="gaussian_hull"))
print()
for count, freq in sorted(hull.distribution.items()):
    print(f"{count}-gon: {freq / hull.samples:.4f}")
