"""Random subspaces of R^n and the exact geometry of their cube sections.

A ``j``-face of the section ``X ∩ [-1, 1]^n`` of a ``k``-dimensional subspace
``X`` is the intersection of ``X`` with an ``(n-k+j)``-face of the cube, i.e.
a face obtained by pinning ``k - j`` coordinates to ``±1``.  Deciding whether
``X`` meets such a face is a small feasibility problem: a square linear
system when ``j = 0`` and a linear programme over the ``j``-dimensional
solution set otherwise.

Subspaces are represented by ``(n, k)`` arrays with orthonormal columns;
batches carry a leading sample axis.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .analysis import gaussian_cube_measure
from .errors import DegenerateInputError, DomainError, LPSolverError

__all__ = [
    "CubeFace",
    "Polygon2D",
    "SectionMeasureResult",
    "DEFAULT_EPS",
    "sample_subspace",
    "orthonormalize",
    "is_orthonormal",
    "canonical_face",
    "face_hit",
    "face_hit_codes",
    "section_polygon",
    "symmetric_hull",
    "gaussian_hull_vertex_count",
    "section_measure_check",
]

DEFAULT_EPS = 1e-9
LP_MAX_ITER = 500
_RANK_TOL = 1e-12


@dataclass(frozen=True)
class CubeFace:
    """Face of ``[-1, 1]^n`` with ``x[i] = sign`` for each pinned index.

    Indices are zero-based.
    """

    n: int
    indices: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.indices) != len(self.signs):
            raise DomainError("indices and signs differ in length")
        if len(set(self.indices)) != len(self.indices):
            raise DomainError("pinned indices must be distinct")
        if any(not 0 <= i < self.n for i in self.indices):
            raise DomainError(f"indices must lie in [0, {self.n})")
        if any(s not in (-1, 1) for s in self.signs):
            raise DomainError("signs must be +1 or -1")

    @property
    def dimension(self) -> int:
        return self.n - len(self.indices)

    @property
    def free_indices(self) -> tuple[int, ...]:
        pinned = set(self.indices)
        return tuple(i for i in range(self.n) if i not in pinned)


@dataclass(frozen=True)
class Polygon2D:
    """Convex polygon with vertices in counter-clockwise order."""

    vertices: np.ndarray

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def is_centrally_symmetric(self, tol: float = 1e-9) -> bool:
        v = self.vertices
        d = np.linalg.norm(v[:, None, :] + v[None, :, :], axis=-1)
        return bool(np.all(d.min(axis=1) <= tol * max(1.0, float(np.abs(v).max()))))


class SectionMeasureResult(NamedTuple):
    lhs_estimate: float
    rhs: float
    std_error: float


def is_orthonormal(basis: np.ndarray, tol: float = 1e-12) -> bool:
    basis = np.asarray(basis)
    k = basis.shape[-1]
    gram = np.swapaxes(basis, -1, -2) @ basis
    return bool(np.max(np.abs(gram - np.eye(k))) <= tol)


def orthonormalize(gauss: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """QR-orthonormalise the columns of one or many ``(n, k)`` matrices.

    Columns are flipped so that the triangular factor has a positive
    diagonal, which makes the map from Gaussian matrix to basis unique.
    Returns the bases and a boolean array flagging numerically
    rank-deficient inputs.
    """
    q, r = np.linalg.qr(gauss)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    signs = np.where(diag < 0, -1.0, 1.0)
    q = q * signs[..., None, :]
    absdiag = np.abs(diag)
    degenerate = absdiag.min(axis=-1) <= _RANK_TOL * np.maximum(absdiag.max(axis=-1), 1e-300)
    return q, degenerate


def sample_subspace(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """Draw a uniformly distributed ``k``-dimensional subspace of ``R^n``.

    An ``n x k`` standard Gaussian matrix is orthonormalised; the
    distribution of its column span is rotation invariant.  A rank-deficient
    draw is retried once.
    """
    if not (1 <= k < n):
        raise DomainError(f"need 1 <= k < n, got k={k}, n={n}")
    for _ in range(2):
        basis, degenerate = orthonormalize(rng.standard_normal((n, k)))
        if not degenerate:
            return basis
    raise DegenerateInputError("two consecutive rank-deficient Gaussian draws")


def canonical_face(j: int, k: int, n: int) -> CubeFace:
    """The ``(n-k+j)``-face with the last ``k - j`` coordinates pinned to ``+1``."""
    if not (0 <= j < k < n):
        raise DomainError(f"need 0 <= j < k < n, got (j, k, n) = {(j, k, n)}")
    d = k - j
    return CubeFace(n, tuple(range(n - d, n)), (1,) * d)


def face_hit_codes(
    bases: np.ndarray,
    face: CubeFace,
    eps: float = DEFAULT_EPS,
    max_iter: int = LP_MAX_ITER,
) -> np.ndarray:
    """Vectorised intersection test for a batch of bases against one face.

    Returns ``int8`` codes: 0 miss, 1 hit, 2 degenerate (singular pinned-row
    system, excluded from estimates), 3 LP iteration limit.
    """
    bases = np.asarray(bases, dtype=float)
    if bases.ndim == 2:
        bases = bases[None]
    count, n, k = bases.shape
    if n != face.n:
        raise DomainError(f"basis has {n} rows but the face lives in R^{face.n}")
    pinned = np.array(face.indices, dtype=np.intp)
    free = np.array(face.free_indices, dtype=np.intp)
    signs = np.array(face.signs, dtype=float)
    d = len(pinned)
    if not 1 <= d <= k:
        raise DomainError(f"face pins {d} coordinates; need 1..{k}")

    fixed_rows = bases[:, pinned, :]
    free_rows = bases[:, free, :]
    codes = np.empty(count, dtype=np.int8)

    if d == k:
        sv = np.linalg.svd(fixed_rows, compute_uv=False)
        degenerate = sv[:, -1] <= _RANK_TOL * sv[:, 0]
        safe = np.where(degenerate[:, None, None], np.eye(k), fixed_rows)
        coeffs = np.linalg.solve(safe, np.broadcast_to(signs, (count, k))[..., None])
        values = free_rows @ coeffs
        inside = np.all(np.abs(values[..., 0]) <= 1.0 + eps, axis=1)
        codes[:] = np.where(inside, _kernels.HIT, _kernels.MISS)
        codes[degenerate] = _kernels.DEGENERATE
        return codes

    # Pinned rows M (d x k): solutions of M c = s are c0 + N y with N spanning ker M.
    q, r = np.linalg.qr(np.swapaxes(fixed_rows, 1, 2), mode="complete")
    r1 = r[:, :d, :]
    diag = np.abs(np.diagonal(r1, axis1=1, axis2=2))
    degenerate = diag.min(axis=1) <= _RANK_TOL * np.maximum(diag.max(axis=1), 1e-300)
    safe = np.where(degenerate[:, None, None], np.eye(d), r1)
    z = np.linalg.solve(np.swapaxes(safe, 1, 2), np.broadcast_to(signs, (count, d))[..., None])
    c0 = q[:, :, :d] @ z
    null = q[:, :, d:]
    A = np.ascontiguousarray(free_rows @ null)
    b = np.ascontiguousarray((free_rows @ c0)[..., 0])
    _kernels.lp_hit_codes(A, b, degenerate, float(eps), int(max_iter), codes)
    return codes


def face_hit(basis: np.ndarray, face: CubeFace, eps: float = DEFAULT_EPS) -> bool:
    """Whether the column span of ``basis`` meets ``face``.

    A singular pinned-row system is reported as a miss with a warning.
    """
    code = int(face_hit_codes(basis, face, eps)[0])
    if code == _kernels.SOLVER_FAILURE:
        raise LPSolverError("simplex iteration limit exceeded")
    if code == _kernels.DEGENERATE:
        warnings.warn("singular pinned-row system; reported as a miss", RuntimeWarning, stacklevel=2)
        return False
    return code == _kernels.HIT


def _sort_ccw(points: np.ndarray) -> np.ndarray:
    centre = points.mean(axis=0)
    angles = np.arctan2(points[:, 1] - centre[1], points[:, 0] - centre[0])
    return points[np.argsort(angles, kind="stable")]


def section_polygon(basis: np.ndarray, eps: float = DEFAULT_EPS) -> Polygon2D:
    """Exact section of the cube by a plane, in the plane's own coordinates.

    With rows ``r_i`` of the ``(n, 2)`` basis the section is
    ``{c : |<r_i, c>| <= 1}``.  Every pair of boundary lines is intersected
    and the feasible points kept, an ``O(n^3)`` method that is easy to trust.
    """
    basis = np.ascontiguousarray(basis, dtype=float)
    if basis.ndim != 2 or basis.shape[1] != 2:
        raise DomainError(f"expected an (n, 2) basis, got shape {basis.shape}")
    n = basis.shape[0]
    out = np.empty((2 * n + 8, 2))
    count = _kernels.polygon_vertices(basis, float(eps), out)
    if count < 0:
        raise DegenerateInputError("section is unbounded or degenerate")
    return Polygon2D(_sort_ccw(out[:count].copy()))


def symmetric_hull(points: np.ndarray) -> np.ndarray:
    """Counter-clockwise hull vertices of ``{±p_i}``."""
    points = np.asarray(points, dtype=float)
    both = np.ascontiguousarray(np.concatenate([points, -points]))
    return both[_kernels.hull_indices(both)]


def gaussian_hull_vertex_count(n: int, rng: np.random.Generator) -> int:
    """Vertex count of the symmetric hull of ``n`` standard planar Gaussians."""
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    for _ in range(2):
        count = len(symmetric_hull(rng.standard_normal((n, 2))))
        if count >= 4 and count % 2 == 0:
            return count
    raise DegenerateInputError("two consecutive degenerate hulls")


def section_measure_check(
    m: int,
    j: int,
    tau: float,
    rng: np.random.Generator,
    trials: int,
    subspace: np.ndarray | None = None,
    offset: np.ndarray | None = None,
) -> SectionMeasureResult:
    """Monte Carlo check that an affine section of ``tau C^m`` is Gaussian-small.

    Estimates the standard Gaussian measure (in ``j`` dimensions, centred at
    ``y0``) of ``(Y ∩ tau C^m) - y0`` and compares it with
    ``gamma_j(tau sqrt(m/j) C^j)``, which bounds it for every ``Y`` and ``y0``.

    Parameters
    ----------
    m, j : int
        Ambient and subspace dimension, ``1 <= j < m``.
    tau : float
        Cube half-width.
    rng : numpy.random.Generator
    trials : int
        Gaussian points drawn in the section plane.
    subspace : array, optional
        ``(m, j)`` orthonormal basis of ``Y``; Haar-random when omitted.
    offset : array, optional
        Point of ``R^m`` projected onto ``Y`` to give ``y0``.  By default
        ``y0`` is uniform on the ball of radius ``tau sqrt(m)`` in ``Y``.
    """
    if not (1 <= j < m):
        raise DomainError(f"need 1 <= j < m, got j={j}, m={m}")
    if not tau > 0:
        raise DomainError(f"tau must be positive, got {tau}")
    if subspace is None:
        subspace = sample_subspace(m, j, rng)
    subspace = np.asarray(subspace, dtype=float)
    if offset is None:
        direction = rng.standard_normal(j)
        direction /= np.linalg.norm(direction)
        radius = tau * math.sqrt(m) * rng.random() ** (1.0 / j)
        coords0 = radius * direction
    else:
        coords0 = subspace.T @ np.asarray(offset, dtype=float)
    y0 = subspace @ coords0
    z = rng.standard_normal((trials, j))
    points = y0 + z @ subspace.T
    inside = np.all(np.abs(points) <= tau, axis=1)
    p = float(inside.mean())
    rhs = gaussian_cube_measure(j, tau * math.sqrt(m / j))
    return SectionMeasureResult(p, rhs, math.sqrt(max(p * (1.0 - p), 0.0) / trials))
