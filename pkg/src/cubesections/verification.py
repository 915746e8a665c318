"""Acceptance checks shared by ``cubesections verify`` and the test suite.

Every check returns a :class:`CheckResult`.  Statistical checks report the
z-scores they were judged on; deterministic checks report the worst error.
"""

from __future__ import annotations

import io
import itertools
import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import analysis, formulas, geometry
from .montecarlo import RunConfig, estimate, estimate_face_count

REFERENCE_F023 = 4.7016


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    z_scores: list[float] = field(default_factory=list)

    def as_dict(self) -> dict:
        return asdict(self)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def _z(a: float, sa: float, b: float, sb: float) -> float:
    s = math.hypot(sa, sb)
    if s == 0.0:
        return 0.0 if a == b else math.inf
    return (a - b) / s


def closed_form_agreement(ns=range(3, 13), tol: float = 1e-8) -> CheckResult:
    errors = {n: abs(formulas.f0_exact(n - 1, n) - formulas.f0_codim1_closed_form(n)) for n in ns}
    worst = max(errors, key=errors.get)
    return CheckResult(
        "closed_form_agreement",
        errors[worst] <= tol,
        f"max |f0_exact(n-1,n) - closed form| = {errors[worst]:.3e} at n={worst} (tol {tol:g})",
    )


def reference_value_f023(tol: float = 1e-3) -> CheckResult:
    value = formulas.f0_exact(2, 3)
    return CheckResult(
        "reference_value_f023",
        abs(value - REFERENCE_F023) <= tol,
        f"f0_exact(2,3) = {value!r}, target {REFERENCE_F023} ± {tol:g}",
    )


def exact_identity(m_max: int = 200, tol: float = 1e-9) -> CheckResult:
    target = math.sqrt(math.pi / 2.0)
    worst_m, worst = 0, 0.0
    for m in range(m_max + 1):
        err = abs(analysis.cube_gauss_integral(1.0, m, tol=1e-13).value * (m + 1) - target)
        if err > worst:
            worst_m, worst = m, err
    return CheckResult(
        "exact_identity",
        worst <= tol,
        f"max |(m+1) I(1,m) - sqrt(pi/2)| = {worst:.3e} at m={worst_m} (tol {tol:g})",
    )


def estimator_concordance(ns=(3, 5, 10), samples: int = 100_000, seed: int = 1, workers: int = 1) -> CheckResult:
    zs, worst = [], ("", 0.0)
    for i, n in enumerate(ns):
        values = {"quadrature": (formulas.f0_exact(2, n), 0.0)}
        for t, method in enumerate(("face_hit_lp", "polygon_exact", "gaussian_hull")):
            est = estimate(RunConfig((0, 2, n), samples, seed + 97 * i + t, workers, method=method))
            values[method] = (est.mean, est.std_error)
        for (na, (a, sa)), (nb, (b, sb)) in itertools.combinations(values.items(), 2):
            z = _z(a, sa, b, sb)
            zs.append(z)
            if abs(z) > abs(worst[1]):
                worst = (f"{na} vs {nb} at n={n}", z)
    return CheckResult(
        "estimator_concordance",
        all(abs(z) <= 3.0 for z in zs),
        f"{len(zs)} pairwise comparisons, worst |z| = {abs(worst[1]):.2f} ({worst[0]})",
        zs,
    )


def vertex_floor(ns=(3, 10, 50), samples: int = 100_000, seed: int = 2, workers: int = 1) -> CheckResult:
    minima = {}
    for i, n in enumerate(ns):
        est = estimate(RunConfig((0, 2, n), samples, seed + i, workers, method="polygon_exact"))
        minima[n] = min(est.distribution)
    return CheckResult(
        "vertex_floor",
        all(v >= 4 for v in minima.values()),
        "minimum vertex count per n: " + ", ".join(f"n={n}: {v}" for n, v in minima.items()),
    )


def bound_sandwich(n_max: int = 8, samples: int = 100_000, seed: int = 3, workers: int = 1) -> CheckResult:
    failures, zs, count = [], [], 0
    for n in range(3, n_max + 1):
        for k in range(2, n):
            for j in range(1, k):
                est = estimate_face_count(RunConfig((j, k, n), samples, seed + 1000 * n + 10 * k + j, workers))
                lower, upper = formulas.f_bounds((j, k, n))
                sigma = est.std_error
                count += 1
                if sigma > 0:
                    zs.append((est.mean - lower) / sigma)
                if not (lower - 3 * sigma <= est.mean <= upper + 3 * sigma):
                    failures.append(f"(j,k,n)=({j},{k},{n}): {est.mean:.4g} not in [{lower:.4g}, {upper:.4g}]")
    return CheckResult(
        "bound_sandwich",
        not failures,
        f"{count} queries checked" + ("; " + "; ".join(failures) if failures else ""),
        zs,
    )


def codim_trend(ns=(6, 10, 14), samples: int = 100_000, seed: int = 4, workers: int = 1, threshold: float = 0.8) -> CheckResult:
    ratios = []
    for i, n in enumerate(ns):
        est = estimate_face_count(RunConfig((n - 2, n - 1, n), samples, seed + i, workers))
        ratios.append(est.mean / formulas.f_codim_asymptotic(1, 2, n))
    monotone = all(b >= a for a, b in zip(ratios, ratios[1:]))
    return CheckResult(
        "codim_trend",
        monotone and ratios[-1] > threshold and all(r <= 1.0 for r in ratios),
        "f(n-2,n-1,n)/(2n): " + ", ".join(f"n={n}: {r:.6f}" for n, r in zip(ns, ratios)),
    )


def parallelogram_vs_hexagon(samples: int = 1_000_000, seed: int = 5, workers: int = 1) -> CheckResult:
    est = estimate(RunConfig((0, 2, 3), samples, seed, workers, method="gaussian_hull"))
    p4 = est.distribution.get(4, 0) / est.samples
    p6 = est.distribution.get(6, 0) / est.samples
    z_shape = (p4 - p6) / (2.0 * math.sqrt(p4 * (1.0 - p4) / est.samples))
    z_mean = (est.mean - REFERENCE_F023) / est.std_error
    return CheckResult(
        "parallelogram_vs_hexagon",
        z_shape > 5.0 and abs(z_mean) <= 3.0,
        f"P(4)={p4:.5f}, P(6)={p6:.5f}, z={z_shape:.1f}; mean {est.mean:.5f} (z vs {REFERENCE_F023} = {z_mean:.2f})",
        [z_shape, z_mean],
    )


def section_measure_inequality(configs: int = 20, trials: int = 100_000, seed: int = 6) -> CheckResult:
    rng = np.random.default_rng(seed)
    zs, failures = [], []
    for _ in range(configs):
        j = int(rng.integers(1, 3))
        m = int(rng.integers(j + 1, 7))
        tau = float(rng.choice([0.5, 1.0, 2.0]))
        res = geometry.section_measure_check(m, j, tau, rng, trials)
        se = max(res.std_error, 1.0 / trials)
        z = (res.lhs_estimate - res.rhs) / se
        zs.append(z)
        if res.lhs_estimate > res.rhs + 3 * se:
            failures.append(f"(j={j}, m={m}, tau={tau}): {res.lhs_estimate:.4f} > {res.rhs:.4f}")
    return CheckResult(
        "section_measure_inequality",
        not failures,
        f"{configs} configurations, max z = {max(zs):.2f}" + ("; " + "; ".join(failures) if failures else ""),
        zs,
    )


def gumbel_convergence(xs=(-1.0, 0.0, 1.0, 2.0), tol: float = 0.02) -> CheckResult:
    small = {x: analysis.gumbel_limit_check(10**3, x) for x in xs}
    large = {x: analysis.gumbel_limit_check(10**6, x) for x in xs}
    ok = all(large[x] < tol and large[x] < small[x] for x in xs)
    return CheckResult(
        "gumbel_convergence",
        ok,
        "deviation n=1e3 -> 1e6: " + ", ".join(f"x={x:g}: {small[x]:.4f} -> {large[x]:.4f}" for x in xs),
    )


def asymptotic_integral(alpha: float = 2.0, tol: float = 0.15) -> CheckResult:
    dev = {}
    for m in (10**3, 10**5):
        asym = analysis.integral_asymptotic(alpha, m)
        value = analysis.cube_gauss_integral(alpha, m, tol=asym * 1e-10).value
        dev[m] = abs(value / asym - 1.0)
    return CheckResult(
        "asymptotic_integral",
        dev[10**5] <= tol and dev[10**5] < dev[10**3],
        f"|I/asymptotic - 1| at alpha={alpha:g}: m=1e3 {dev[10**3]:.4f}, m=1e5 {dev[10**5]:.4f} (tol {tol:g})",
    )


def reproducibility(samples: int = 100_000, seed: int = 7, worker_counts=(1, 4, 8)) -> CheckResult:
    from .cli import main

    outputs = []
    for w in worker_counts:
        buf = io.StringIO()
        main(["simulate", "--j", "0..1", "--k", "2..3", "--n", "4", "--samples", str(samples),
              "--seed", str(seed), "--workers", str(w)], stdout=buf)
        outputs.append(buf.getvalue())
    same = all(o == outputs[0] for o in outputs)
    return CheckResult(
        "reproducibility",
        same and bool(outputs[0]),
        f"simulate output identical across workers {list(worker_counts)}: {same}",
    )


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[..., CheckResult]
    quick: dict | None
    full: dict


def suite(seed: int, workers: int = 1) -> list[Check]:
    """The verification checks with their quick and full scale parameters.

    ``quick = None`` marks checks that only run at the full level.
    """
    mc = {"seed": seed, "workers": workers}
    return [
        Check("closed_form_agreement", closed_form_agreement, {}, {}),
        Check("reference_value_f023", reference_value_f023, {}, {}),
        Check("exact_identity", exact_identity, {}, {}),
        Check("estimator_concordance", estimator_concordance,
              {"samples": 20_000, **mc}, {"samples": 100_000, **mc}),
        Check("vertex_floor", vertex_floor,
              {"ns": (3, 10), "samples": 20_000, "seed": seed + 1, "workers": workers},
              {"samples": 100_000, "seed": seed + 1, "workers": workers}),
        Check("bound_sandwich", bound_sandwich,
              {"n_max": 6, "samples": 10_000, "seed": seed + 2, "workers": workers},
              {"samples": 100_000, "seed": seed + 2, "workers": workers}),
        Check("codim_trend", codim_trend,
              {"samples": 20_000, "seed": seed + 3, "workers": workers},
              {"samples": 100_000, "seed": seed + 3, "workers": workers}),
        Check("parallelogram_vs_hexagon", parallelogram_vs_hexagon,
              {"samples": 100_000, "seed": seed + 4, "workers": workers},
              {"samples": 1_000_000, "seed": seed + 4, "workers": workers}),
        Check("section_measure_inequality", section_measure_inequality, None, {"seed": seed + 5}),
        Check("gumbel_convergence", gumbel_convergence, None, {}),
        Check("asymptotic_integral", asymptotic_integral, {}, {}),
        Check("reproducibility", reproducibility,
              {"samples": 5_000, "seed": seed + 6}, {"samples": 100_000, "seed": seed + 6}),
    ]


def run_suite(level: str = "quick", seed: int = 1, workers: int = 1, on_result=None) -> list[CheckResult]:
    results = []
    for check in suite(seed, workers):
        params = check.quick if level == "quick" else check.full
        if params is None:
            continue
        result = check.run(**params)
        results.append(result)
        if on_result is not None:
            on_result(result)
    return results
