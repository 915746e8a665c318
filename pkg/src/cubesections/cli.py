"""Command-line front end: ``eval``, ``simulate`` and ``verify``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical
failure (quadrature, LP or data quality).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import analysis, formulas, montecarlo
from .errors import DataQualityError, DomainError, IntegrationError, LPSolverError

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3


@dataclass
class OutputRecord:
    j: int
    k: int
    n: int
    method: str
    value: float | None = None
    std_error: float | None = None
    lower_bound: float | None = None
    upper_bound: float | None = None
    asymptotic: float | None = None
    samples: int | None = None
    seed: int | None = None


FIELDS = [f.name for f in fields(OutputRecord)]
_INT_FIELDS = {"j", "k", "n", "samples", "seed"}
_FLOAT_FIELDS = {"value", "std_error", "lower_bound", "upper_bound", "asymptotic"}


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _parse_cell(name: str, text: str):
    if text == "":
        return None
    if name in _INT_FIELDS:
        return int(text)
    if name in _FLOAT_FIELDS:
        return float(text)
    return text


def read_records(text: str, fmt: str) -> list[OutputRecord]:
    """Parse CSV or JSON output back into records."""
    if fmt == "json":
        return [OutputRecord(**obj) for obj in json.loads(text)]
    reader = csv.DictReader(io.StringIO(text))
    return [OutputRecord(**{k: _parse_cell(k, v) for k, v in row.items()}) for row in reader]


class RecordWriter:
    """Streams records as CSV or as a JSON array, flushing after each one."""

    def __init__(self, stream, fmt: str):
        self.stream = stream
        self.fmt = fmt
        self.count = 0
        if fmt == "csv":
            stream.write(",".join(FIELDS) + "\n")
        else:
            stream.write("[")

    def write(self, record: OutputRecord) -> None:
        if self.fmt == "csv":
            self.stream.write(",".join(_csv_cell(getattr(record, f)) for f in FIELDS) + "\n")
        else:
            self.stream.write(("," if self.count else "") + "\n  " + json.dumps(asdict(record)))
        self.count += 1
        self.stream.flush()

    def close(self) -> None:
        if self.fmt == "json":
            self.stream.write("\n]\n" if self.count else "]\n")
        self.stream.flush()


def parse_range(text: str) -> list[int]:
    """``"5"`` -> ``[5]``; ``"3..6"`` -> ``[3, 4, 5, 6]`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range a..b, got {text!r}") from None


def parse_seed(text: str) -> int:
    if text == "random":
        return int(np.random.SeedSequence().entropy % 2**63)
    try:
        seed = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer or 'random', got {text!r}") from None
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return seed


def _grid(args, parser) -> list[formulas.FaceQuery]:
    points = [
        formulas.FaceQuery(j, k, n)
        for n in args.n
        for k in args.k
        for j in args.j
        if 0 <= j < k < n
    ]
    if not points:
        parser.error("no valid (j, k, n) with 0 <= j < k < n in the requested grid")
    return points


def eval_record(q: formulas.FaceQuery, tol: float) -> OutputRecord:
    j, k, n = q
    upper = formulas.f_upper_bound(q)
    if j == 0:
        value = formulas.f0_exact(k, n, tol=tol)
        # at codimension 1 the bound is the exact closed form; keep roundoff from inverting the pair
        lower = min(formulas.f0_codim_lower_bound(n - k, n), value)
        return OutputRecord(j, k, n, "quadrature", value=value,
                            lower_bound=lower, upper_bound=upper,
                            asymptotic=formulas.f0_asymptotic(k, n))
    return OutputRecord(j, k, n, "bounds", lower_bound=formulas.f_lower_bound(q, tol=tol),
                        upper_bound=upper, asymptotic=formulas.f_codim_asymptotic(n - k, n - j, n))


def cmd_eval(args, parser, out) -> int:
    writer = RecordWriter(out, args.format)
    for q in _grid(args, parser):
        writer.write(eval_record(q, args.tol))
    writer.close()
    return EXIT_OK


def cmd_simulate(args, parser, out) -> int:
    configs = []
    for q in _grid(args, parser):
        try:
            configs.append(montecarlo.RunConfig(q, args.samples, args.seed, args.workers, args.eps, args.method))
        except DomainError as exc:
            parser.error(str(exc))
    writer = RecordWriter(out, args.format)
    for cfg in configs:
        est = montecarlo.estimate(cfg)
        j, k, n = cfg.query
        writer.write(OutputRecord(j, k, n, cfg.method, value=est.mean, std_error=est.std_error,
                                  samples=est.samples, seed=est.seed))
    writer.close()
    return EXIT_OK


def cmd_verify(args, parser, out) -> int:
    from .verification import run_suite

    def progress(result):
        print(result.line(), file=sys.stderr, flush=True)

    results = run_suite(args.level, args.seed, args.workers, on_result=progress)
    passed = all(r.passed for r in results)
    report = {
        "level": args.level,
        "seed": args.seed,
        "passed": passed,
        "failed": [r.name for r in results if not r.passed],
        "checks": [r.as_dict() for r in results],
    }
    out.write(json.dumps(report, indent=2) + "\n")
    return EXIT_OK if passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubesections",
        description="Expected face numbers of random central sections of the n-cube.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def grid_args(p):
        p.add_argument("--j", type=parse_range, required=True, help="face dimension, e.g. 0 or 0..2")
        p.add_argument("--k", type=parse_range, required=True, help="section dimension")
        p.add_argument("--n", type=parse_range, required=True, help="ambient dimension, e.g. 3..12")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("eval", help="exact values, bounds and asymptotics")
    grid_args(p)
    p.add_argument("--tol", type=float, default=analysis.DEFAULT_TOL)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("simulate", help="Monte Carlo estimates")
    grid_args(p)
    p.add_argument("--samples", type=int, default=montecarlo.DEFAULT_SAMPLES)
    p.add_argument("--seed", type=parse_seed, default=montecarlo.DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--eps", type=float, default=1e-9)
    p.add_argument("--method", choices=montecarlo.METHODS, default="face_hit_lp")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--seed", type=parse_seed, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, stdout=None) -> int:
    parser = build_parser()
    out = sys.stdout if stdout is None else stdout
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, parser, out)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (IntegrationError, LPSolverError, DataQualityError) as exc:
        print(f"cubesections: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except DomainError as exc:
        print(f"cubesections: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())
