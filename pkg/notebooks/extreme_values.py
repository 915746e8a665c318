"""
Where the integral lives: maxima of Gaussians
=============================================

The vertex-count integral weights gamma_m(t C^m) = P(max |g_i| <= t).
That distribution function concentrates near sqrt(2 log m) and, after
centring and scaling, approaches the Gumbel law.
"""

import math

from cubesections import analysis

for m in (10**2, 10**4, 10**6):
    a, b = analysis.extreme_value_constants(m)
    worst = max(analysis.gumbel_limit_check(m, x) for x in (-1.0, 0.0, 1.0, 2.0))
    print(f"m={m:>8}: a_m={a:.4f} b_m={b:.4f} max |F - Gumbel| = {worst:.4f}")

# The same concentration drives the large-m behaviour of I(alpha, m).
print()
for alpha in (1.0, 2.0, 3.0):
    for m in (10**2, 10**4, 10**6):
        asym = analysis.integral_asymptotic(alpha, m)
        value = analysis.cube_gauss_integral(alpha, m, tol=asym * 1e-10).value
        print(f"alpha={alpha} m={m:>8}: I / asymptotic = {value / asym:.4f}")

# alpha = 1 is exact: |g_0| is the largest of m + 1 values w.p. 1/(m+1)
print()
print("(m+1) I(1, m) / sqrt(pi/2) at m = 50:",
      51 * analysis.cube_gauss_integral(1.0, 50).value / math.sqrt(math.pi / 2))
