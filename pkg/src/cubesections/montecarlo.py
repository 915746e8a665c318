"""Reproducible Monte Carlo estimators of ``f(j, k, n)``.

Samples are grouped into fixed blocks of ``BLOCK_SIZE`` consecutive indices.
Block ``b`` of a run with seed ``s`` always draws from the same Philox
stream, keyed by ``SeedSequence(s, spawn_key=(method_tag, b))``, so the
sample-to-randomness map depends only on ``(seed, sample index)``.  Workers
take whole blocks and the reduction sums integers, which makes results
bit-identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _kernels
from .errors import DataQualityError, DomainError, LPSolverError
from .formulas import FaceQuery, face_count
from .geometry import DEFAULT_EPS, canonical_face, face_hit_codes, orthonormalize

__all__ = [
    "METHODS",
    "BLOCK_SIZE",
    "DEFAULT_SAMPLES",
    "DEFAULT_SEED",
    "RunConfig",
    "Estimate",
    "block_stream",
    "estimate",
    "estimate_face_count",
    "estimate_polygon_fvector",
    "estimate_hull_fvector",
]

METHODS = ("face_hit_lp", "polygon_exact", "gaussian_hull")
BLOCK_SIZE = 2048
DEFAULT_SAMPLES = 100_000
DEFAULT_SEED = 20_240_601
MAX_DISCARD_FRACTION = 1e-3

_METHOD_TAGS = {name: i for i, name in enumerate(METHODS)}


@dataclass(frozen=True)
class RunConfig:
    query: FaceQuery
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    workers: int = 1
    eps: float = DEFAULT_EPS
    method: str = "face_hit_lp"

    def __post_init__(self):
        object.__setattr__(self, "query", FaceQuery(*self.query).validate())
        if self.method not in METHODS:
            raise DomainError(f"unknown method {self.method!r}; choose from {METHODS}")
        if self.method != "face_hit_lp" and self.query.k != 2:
            raise DomainError(f"method {self.method} needs k = 2, got k = {self.query.k}")
        if self.method != "face_hit_lp" and self.query.j != 0:
            raise DomainError(f"method {self.method} counts vertices; use j = 0")
        if self.samples < 2:
            raise DomainError("need at least two samples")
        if self.workers < 1:
            raise DomainError("need at least one worker")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo estimate with its standard error.

    ``samples`` counts the samples that entered the mean; ``discarded``
    counts measure-zero degenerate draws that were excluded.
    ``distribution`` maps vertex counts to frequencies for the polygon and
    hull estimators.
    """

    mean: float
    std_error: float
    samples: int
    discarded: int
    seed: int
    distribution: dict[int, int] | None = field(default=None, compare=True)


def block_stream(seed: int, block: int, method: str = "face_hit_lp") -> np.random.Generator:
    """Counter-based generator for one block of samples."""
    seq = np.random.SeedSequence(seed, spawn_key=(_METHOD_TAGS[method], block))
    return np.random.Generator(np.random.Philox(seq))


def _blocks(samples: int) -> list[tuple[int, int]]:
    return [(b, min(BLOCK_SIZE, samples - b * BLOCK_SIZE)) for b in range(math.ceil(samples / BLOCK_SIZE))]


def _run_blocks(cfg: RunConfig, work: Callable[[int, int], np.ndarray]) -> np.ndarray:
    blocks = _blocks(cfg.samples)
    if cfg.workers == 1:
        parts = [work(b, size) for b, size in blocks]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(lambda bs: work(*bs), blocks))
    return np.concatenate(parts)


def _check_discards(discarded: int, total: int) -> None:
    if discarded > MAX_DISCARD_FRACTION * total:
        raise DataQualityError(f"{discarded} of {total} samples were degenerate")


def estimate_face_count(cfg: RunConfig) -> Estimate:
    """Scaled hit frequency ``2^(k-j) C(n, k-j) * P(X meets a fixed face)``.

    ``j = 0`` uses the square linear solve, ``j >= 1`` the simplex test.
    """
    j, k, n = cfg.query
    face = canonical_face(j, k, n)

    def work(block: int, size: int) -> np.ndarray:
        rng = block_stream(cfg.seed, block, "face_hit_lp")
        bases, degenerate = orthonormalize(rng.standard_normal((size, n, k)))
        codes = face_hit_codes(bases, face, cfg.eps)
        codes[degenerate] = _kernels.DEGENERATE
        return codes

    codes = _run_blocks(cfg, work)
    failures = int(np.count_nonzero(codes == _kernels.SOLVER_FAILURE))
    if failures:
        raise LPSolverError(f"{failures} simplex solves hit the iteration limit")
    discarded = int(np.count_nonzero(codes == _kernels.DEGENERATE))
    _check_discards(discarded, cfg.samples)
    valid = cfg.samples - discarded
    hits = int(np.count_nonzero(codes == _kernels.HIT))
    p = hits / valid
    scale = float(face_count(k - j, n))
    return Estimate(
        mean=scale * p,
        std_error=scale * math.sqrt(p * (1.0 - p) / valid),
        samples=valid,
        discarded=discarded,
        seed=cfg.seed,
    )


def _count_estimate(cfg: RunConfig, counts: np.ndarray) -> Estimate:
    bad = counts < 0
    discarded = int(np.count_nonzero(bad))
    _check_discards(discarded, cfg.samples)
    good = counts[~bad].astype(np.int64)
    valid = good.size
    total = int(good.sum())
    total_sq = int((good * good).sum())
    mean = total / valid
    var = (total_sq - total * total / valid) / (valid - 1)
    values, freq = np.unique(good, return_counts=True)
    return Estimate(
        mean=mean,
        std_error=math.sqrt(max(var, 0.0) / valid),
        samples=valid,
        discarded=discarded,
        seed=cfg.seed,
        distribution={int(v): int(c) for v, c in zip(values, freq)},
    )


def estimate_polygon_fvector(cfg: RunConfig) -> Estimate:
    """Mean vertex count of exact 2-sections of the cube."""
    if cfg.method != "polygon_exact":
        cfg = RunConfig(cfg.query, cfg.samples, cfg.seed, cfg.workers, cfg.eps, "polygon_exact")
    n = cfg.query.n

    def work(block: int, size: int) -> np.ndarray:
        rng = block_stream(cfg.seed, block, "polygon_exact")
        bases, degenerate = orthonormalize(rng.standard_normal((size, n, 2)))
        counts = np.empty(size, dtype=np.int64)
        _kernels.polygon_vertex_counts(np.ascontiguousarray(bases), cfg.eps, counts)
        counts[degenerate] = -1
        return counts

    return _count_estimate(cfg, _run_blocks(cfg, work))


def estimate_hull_fvector(cfg: RunConfig) -> Estimate:
    """Mean vertex count of ``conv{±G_1, ..., ±G_n}`` for planar Gaussians."""
    if cfg.method != "gaussian_hull":
        cfg = RunConfig(cfg.query, cfg.samples, cfg.seed, cfg.workers, cfg.eps, "gaussian_hull")
    n = cfg.query.n

    def work(block: int, size: int) -> np.ndarray:
        rng = block_stream(cfg.seed, block, "gaussian_hull")
        counts = np.empty(size, dtype=np.int64)
        _kernels.symmetric_hull_counts(rng.standard_normal((size, n, 2)), counts)
        counts[(counts < 4) | (counts % 2 == 1)] = -1
        return counts

    return _count_estimate(cfg, _run_blocks(cfg, work))


def estimate(cfg: RunConfig) -> Estimate:
    """Dispatch on ``cfg.method``."""
    return {
        "face_hit_lp": estimate_face_count,
        "polygon_exact": estimate_polygon_fvector,
        "gaussian_hull": estimate_hull_fvector,
    }[cfg.method](cfg)
