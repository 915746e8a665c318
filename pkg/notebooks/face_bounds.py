"""
Bounds for higher-dimensional faces
===================================

For j >= 1 there is no exact formula, only a lower bound and the trivial
upper bound (every j-face of the section comes from a (n-k+j)-face of the
cube).  Simulation sits between the two.
"""

from cubesections import RunConfig, estimate_face_count, f_bounds, f_codim_asymptotic

print(f"{'(j,k,n)':>10} {'lower':>10} {'simulated':>20} {'upper':>8}")
for q in [(1, 2, 4), (1, 3, 5), (2, 3, 5), (1, 4, 7), (3, 4, 7)]:
    lower, upper = f_bounds(q)
    est = estimate_face_count(RunConfig(q, 50_000, seed=sum(q), workers=4))
    print(f"{str(q):>10} {lower:>10.3f} {est.mean:>11.3f} ± {est.std_error:<6.3f} {upper:>8.0f}")

# Edges of a random hyperplane section: nearly every one of the 2n(n-1)
# two-faces is cut once n is moderate, so f(n-2, n-1, n) / 2n climbs to 1.
print()
for n in (4, 6, 8, 12):
    est = estimate_face_count(RunConfig((n - 2, n - 1, n), 50_000, seed=n, workers=4))
    print(f"n={n:>2}: f(n-2, n-1, n) / 2n = {est.mean / f_codim_asymptotic(1, 2, n):.5f}")
