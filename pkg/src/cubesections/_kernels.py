"""Compiled inner loops: dense simplex, section polygons and planar hulls.

Everything here works on plain float arrays and returns integer status codes
so it can run without the GIL.  The public wrappers live in ``geometry``.
"""

import numpy as np
from numba import njit

MISS = 0
HIT = 1
DEGENERATE = 2
SOLVER_FAILURE = 3

PIVOT_TOL = 1e-11
COST_TOL = 1e-12
BLAND_AFTER_STALLS = 50


@njit(cache=True, nogil=True)
def _pivot(T, basis, row, col):
    m1, w = T.shape
    p = T[row, col]
    for c in range(w):
        T[row, c] /= p
    for r in range(m1):
        if r != row:
            f = T[r, col]
            if f != 0.0:
                for c in range(w):
                    T[r, c] -= f * T[row, c]
    basis[row] = col


@njit(cache=True, nogil=True)
def _simplex_phase(T, basis, n_allowed, max_iter):
    """Run pivots until optimal.  Returns iterations used, or -1 on failure.

    Dantzig's rule while progress is made; Bland's rule (lowest index enters
    and leaves) after ``BLAND_AFTER_STALLS`` consecutive degenerate pivots.
    """
    m = T.shape[0] - 1
    rhs = T.shape[1] - 1
    stalls = 0
    for it in range(max_iter):
        bland = stalls >= BLAND_AFTER_STALLS
        col = -1
        best = -COST_TOL
        for c in range(n_allowed):
            d = T[m, c]
            if d < -COST_TOL:
                if bland:
                    col = c
                    break
                if d < best:
                    best = d
                    col = c
        if col < 0:
            return it
        row = -1
        best_ratio = np.inf
        for r in range(m):
            a = T[r, col]
            if a > PIVOT_TOL:
                ratio = T[r, rhs] / a
                if ratio < best_ratio - 1e-14 or (
                    abs(ratio - best_ratio) <= 1e-14 and row >= 0 and basis[r] < basis[row]
                ):
                    best_ratio = ratio
                    row = r
        if row < 0:
            return -1
        if best_ratio <= 1e-14:
            stalls += 1
        else:
            stalls = 0
        _pivot(T, basis, row, col)
    return -1


@njit(cache=True, nogil=True)
def max_violation_lp(A, b, max_iter):
    """Smallest ``s`` with ``|A y + b| <= 1 + s`` componentwise, over free ``y``.

    Solved through the dual: minimise ``sum_r h_r lam_r`` over ``lam >= 0``
    with ``sum_r lam_r g_r = 0`` and ``sum_r lam_r = 1``, where the columns
    ``g_r`` are ``+a_i`` (cost ``1 - b_i``) and ``-a_i`` (cost ``1 + b_i``).
    The primal optimum is minus the dual optimum.  Returns ``(s, ok)``.
    """
    p, j = A.shape
    m = j + 1
    nv = 2 * p
    width = nv + m + 1
    T = np.zeros((m + 1, width))
    cost = np.empty(nv)
    for i in range(p):
        for r in range(j):
            T[r, 2 * i] = A[i, r]
            T[r, 2 * i + 1] = -A[i, r]
        T[j, 2 * i] = 1.0
        T[j, 2 * i + 1] = 1.0
        cost[2 * i] = 1.0 - b[i]
        cost[2 * i + 1] = 1.0 + b[i]
    T[j, width - 1] = 1.0
    basis = np.empty(m, dtype=np.int64)
    for r in range(m):
        T[r, nv + r] = 1.0
        basis[r] = nv + r
    # phase 1: minimise the sum of artificials
    for c in range(width):
        if c < nv or c == width - 1:
            s = 0.0
            for r in range(m):
                s += T[r, c]
            T[m, c] = -s
    if _simplex_phase(T, basis, nv, max_iter) < 0:
        return np.nan, False
    if -T[m, width - 1] > 1e-9:
        return np.nan, False
    # drive artificials out of the basis; rows with no real pivot are redundant
    for r in range(m):
        if basis[r] >= nv:
            for c in range(nv):
                if abs(T[r, c]) > PIVOT_TOL:
                    _pivot(T, basis, r, c)
                    break
    # phase 2
    for c in range(width):
        T[m, c] = 0.0
    for c in range(nv):
        T[m, c] = cost[c]
    for r in range(m):
        cb = cost[basis[r]] if basis[r] < nv else 0.0
        if cb != 0.0:
            for c in range(width):
                T[m, c] -= cb * T[r, c]
    if _simplex_phase(T, basis, nv, max_iter) < 0:
        return np.nan, False
    z = 0.0
    for r in range(m):
        if basis[r] < nv:
            z += cost[basis[r]] * T[r, width - 1]
    return -z, True


@njit(cache=True, nogil=True)
def lp_hit_codes(A, b, degenerate, eps, max_iter, codes):
    """Face-hit status for a batch of reduced problems ``A[s] y + b[s]``."""
    for s in range(A.shape[0]):
        if degenerate[s]:
            codes[s] = DEGENERATE
            continue
        worst = 0.0
        for i in range(b.shape[1]):
            v = abs(b[s, i])
            if v > worst:
                worst = v
        if worst <= 1.0 + eps:
            codes[s] = HIT
            continue
        value, ok = max_violation_lp(A[s], b[s], max_iter)
        if not ok:
            codes[s] = SOLVER_FAILURE
        elif value <= eps:
            codes[s] = HIT
        else:
            codes[s] = MISS


@njit(cache=True, nogil=True)
def polygon_vertices(rows, eps, out):
    """Vertices of ``{c in R^2 : |<r_i, c>| <= 1}`` by brute-force line pairing.

    Zero rows are vacuous constraints.  Writes unsorted vertices into ``out``
    and returns their number, or -1 if the set is unbounded (fewer than four
    vertices) or ``out`` overflows.
    """
    n = rows.shape[0]
    count = 0
    for i in range(n):
        for l in range(i + 1, n):
            det = rows[i, 0] * rows[l, 1] - rows[i, 1] * rows[l, 0]
            if det == 0.0:
                continue
            for si in (-1.0, 1.0):
                for sl in (-1.0, 1.0):
                    x = (si * rows[l, 1] - sl * rows[i, 1]) / det
                    y = (sl * rows[i, 0] - si * rows[l, 0]) / det
                    feasible = True
                    for q in range(n):
                        if abs(rows[q, 0] * x + rows[q, 1] * y) > 1.0 + eps:
                            feasible = False
                            break
                    if not feasible:
                        continue
                    scale = max(1.0, np.sqrt(x * x + y * y))
                    duplicate = False
                    for v in range(count):
                        if abs(out[v, 0] - x) <= 1e-9 * scale and abs(out[v, 1] - y) <= 1e-9 * scale:
                            duplicate = True
                            break
                    if duplicate:
                        continue
                    if count == out.shape[0]:
                        return -1
                    out[count, 0] = x
                    out[count, 1] = y
                    count += 1
    if count < 4:
        return -1
    return count


@njit(cache=True, nogil=True)
def polygon_vertex_counts(bases, eps, counts):
    n = bases.shape[1]
    work = np.empty((2 * n + 8, 2))
    for s in range(bases.shape[0]):
        counts[s] = polygon_vertices(bases[s], eps, work)


@njit(cache=True, nogil=True)
def _cross(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


@njit(cache=True, nogil=True)
def hull_indices(points):
    """Andrew's monotone chain; returns counter-clockwise hull point indices.

    Collinear boundary points are dropped.
    """
    n = points.shape[0]
    order = np.argsort(points[:, 0], kind="mergesort")
    # ties in x broken by y
    for a in range(1, n):
        b = a
        while b > 0 and points[order[b - 1], 0] == points[order[b], 0] and (
            points[order[b - 1], 1] > points[order[b], 1]
        ):
            order[b - 1], order[b] = order[b], order[b - 1]
            b -= 1
    hull = np.empty(2 * n + 1, dtype=np.int64)
    h = 0
    for idx in range(n):
        i = order[idx]
        while h >= 2 and _cross(points[hull[h - 2], 0], points[hull[h - 2], 1],
                                points[hull[h - 1], 0], points[hull[h - 1], 1],
                                points[i, 0], points[i, 1]) <= 0.0:
            h -= 1
        hull[h] = i
        h += 1
    lower = h + 1
    for idx in range(n - 2, -1, -1):
        i = order[idx]
        while h >= lower and _cross(points[hull[h - 2], 0], points[hull[h - 2], 1],
                                    points[hull[h - 1], 0], points[hull[h - 1], 1],
                                    points[i, 0], points[i, 1]) <= 0.0:
            h -= 1
        hull[h] = i
        h += 1
    return hull[: h - 1]


@njit(cache=True, nogil=True)
def symmetric_hull_counts(gauss, counts):
    """Vertex counts of ``conv{±g_1, ..., ±g_n}`` for a batch of point sets."""
    n = gauss.shape[1]
    pts = np.empty((2 * n, 2))
    for s in range(gauss.shape[0]):
        for i in range(n):
            pts[i, 0] = gauss[s, i, 0]
            pts[i, 1] = gauss[s, i, 1]
            pts[n + i, 0] = -gauss[s, i, 0]
            pts[n + i, 1] = -gauss[s, i, 1]
        counts[s] = hull_indices(pts).shape[0]
