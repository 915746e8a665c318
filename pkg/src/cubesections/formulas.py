"""Exact values, bounds and asymptotics for ``f(j, k, n)``.

``f(j, k, n)`` is the expected number of ``j``-faces of ``X ∩ [-1, 1]^n`` for a
uniformly random ``k``-dimensional linear subspace ``X``.  Vertex counts
(``j = 0``) have an exact one-dimensional integral representation; for
``j >= 1`` only a lower bound is available, sandwiched against the trivial
count of the cube faces that could produce a ``j``-face.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .analysis import DEFAULT_TOL, cube_gauss_integral
from .errors import DomainError, RangeError

__all__ = [
    "FaceQuery",
    "BoundPair",
    "binomial",
    "face_count",
    "f0_exact",
    "f0_codim1_closed_form",
    "f0_codim_lower_bound",
    "f0_asymptotic",
    "t_bound",
    "f_lower_bound",
    "f_upper_bound",
    "f_bounds",
    "f_codim_asymptotic",
]

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
TRIVIAL_T_BOUND = 0.5


class FaceQuery(NamedTuple):
    """Indices ``(j, k, n)`` of an expected face count, ``0 <= j < k < n``."""

    j: int
    k: int
    n: int

    def validate(self) -> "FaceQuery":
        j, k, n = self
        if not (0 <= j < k < n):
            raise DomainError(f"need 0 <= j < k < n, got (j, k, n) = {tuple(self)}")
        return self


class BoundPair(NamedTuple):
    lower: float
    upper: float


def _query(q) -> FaceQuery:
    return FaceQuery(*(int(v) for v in q)).validate()


def binomial(n: int, r: int) -> int:
    """Exact integer binomial coefficient."""
    if n < 0 or r < 0 or r > n:
        raise DomainError(f"binomial({n}, {r}) is undefined")
    return math.comb(n, r)


def _to_float(x: int | float, what: str) -> float:
    try:
        value = float(x)
    except OverflowError:
        raise RangeError(f"{what} exceeds the float64 range") from None
    if math.isinf(value):
        raise RangeError(f"{what} exceeds the float64 range")
    return value


def face_count(k_minus_j: int, n: int) -> int:
    """Number ``2^(k-j) C(n, k-j)`` of ``(n-k+j)``-faces of the ``n``-cube."""
    return 2**k_minus_j * binomial(n, k_minus_j)


def f0_exact(k: int, n: int, tol: float = DEFAULT_TOL) -> float:
    """Expected vertex count of a random ``k``-section of the ``n``-cube.

    ``2^k C(n, k) sqrt(2k/pi) I(k, n - k)``.  ``tol`` is an absolute tolerance
    on the returned count; the integral is evaluated with the tolerance
    divided by the prefactor.
    """
    if not (1 <= k < n):
        raise DomainError(f"need 1 <= k < n, got k={k}, n={n}")
    prefactor = _to_float(face_count(k, n), f"2^{k} C({n},{k})") * _SQRT_2_OVER_PI * math.sqrt(k)
    integral = cube_gauss_integral(k, n - k, tol=tol / prefactor)
    return _to_float(prefactor * integral.value, f"f(0,{k},{n})")


def f0_codim1_closed_form(n: int) -> float:
    """``(2^n n / pi) arctan(1 / sqrt(n - 1))``, the hyperplane-section vertex count."""
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    return _to_float(2**n * n, f"2^{n} {n}") / math.pi * math.atan(1.0 / math.sqrt(n - 1))


def f0_codim_lower_bound(d: int, n: int) -> float:
    """Lower bound on ``f(0, n - d, n)`` from Jensen's inequality; exact at ``d = 1``."""
    if not (1 <= d < n):
        raise DomainError(f"need 1 <= d < n, got d={d}, n={n}")
    count = _to_float(binomial(n, d) * 2**n, f"C({n},{d}) 2^{n}")
    return count * (math.atan(1.0 / math.sqrt(n - d)) / math.pi) ** d


def f0_asymptotic(k: int, n: int) -> float:
    """Fixed-``k`` large-``n`` approximation ``(2^k / sqrt k) (pi log n)^((k-1)/2)``."""
    if k < 1 or n < 2:
        raise DomainError(f"need k >= 1 and n >= 2, got k={k}, n={n}")
    return 2.0**k / math.sqrt(k) * (math.pi * math.log(n)) ** (0.5 * (k - 1))


def t_bound(j: int, k: int, n: int, tol: float = DEFAULT_TOL) -> float:
    """Upper bound on the largest spherical measure of a section of a face cone.

    Returns the smaller of ``1/2`` (the cone lies in a half-space) and
    ``sqrt(alpha / 2 pi) I(alpha, j)`` with ``alpha = j(k-j)/(n-k+j)``.
    """
    if not (1 <= j < k < n):
        raise DomainError(f"need 1 <= j < k < n, got (j, k, n) = {(j, k, n)}")
    alpha = j * (k - j) / (n - k + j)
    scale = _INV_SQRT_2PI * math.sqrt(alpha)
    bound = scale * cube_gauss_integral(alpha, j, tol=tol / scale).value
    return min(TRIVIAL_T_BOUND, bound)


def f_lower_bound(q, tol: float = DEFAULT_TOL) -> float:
    """Lower bound ``f(0, k-j, n) / (2 t_bound(j, k, n))`` on ``f(j, k, n)``, ``j >= 1``."""
    j, k, n = _query(q)
    if j < 1:
        raise DomainError("the face lower bound needs j >= 1; use f0_exact for vertices")
    return f0_exact(k - j, n, tol=tol) / (2.0 * t_bound(j, k, n, tol=tol))


def f_upper_bound(q) -> float:
    """Trivial upper bound ``2^(k-j) C(n, k-j)``: one ``j``-face per cube face hit."""
    j, k, n = _query(q)
    return _to_float(face_count(k - j, n), f"2^{k - j} C({n},{k - j})")


def f_bounds(q, tol: float = DEFAULT_TOL) -> BoundPair:
    """Both bounds on ``f(j, k, n)``; for ``j = 0`` the lower bound is the exact value."""
    j, k, n = _query(q)
    lower = f0_exact(k, n, tol=tol) if j == 0 else f_lower_bound((j, k, n), tol=tol)
    return BoundPair(lower, f_upper_bound((j, k, n)))


def f_codim_asymptotic(l: int, m: int, n: int) -> float:
    """Large-``n`` value ``(2n)^(m-l) / (m-l)!`` of ``f(n-m, n-l, n)`` for fixed ``l < m``."""
    if not (1 <= l < m < n):
        raise DomainError(f"need 1 <= l < m < n, got (l, m, n) = {(l, m, n)}")
    d = m - l
    return _to_float((2 * n) ** d, f"(2*{n})^{d}") / math.factorial(d)
