"""``qzeta compute`` and ``qzeta verify``."""

from __future__ import annotations

import argparse
import json
import os
import platform
import sys
from dataclasses import dataclass

from . import __version__, kernels
from .graph import GraphError, read_graph
from .series import series_to_json
from .zeta import METHODS, MIN_ORDER, ROUTES_WITH_IHARA, ComparisonReport, ZetaResult, compare_methods

WORKERS_ENV = "QZETA_WORKERS"


@dataclass
class ComputeConfig:
    input_path: str
    order: int
    methods: list[str]
    output_path: str | None = None
    workers: int = 1


class InputError(Exception):
    """Bad command input; reported as a one-line diagnostic."""


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise InputError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
    return n


def parse_methods(text: str) -> list[str]:
    methods = [m.strip() for m in text.split(",") if m.strip()]
    if not methods:
        raise InputError("methods: empty list")
    for m in methods:
        if m not in ROUTES_WITH_IHARA:
            raise InputError(f"methods: unknown method {m!r} (choose from {', '.join(ROUTES_WITH_IHARA)})")
    return list(dict.fromkeys(methods))


def result_document(r: ZetaResult) -> dict:
    return {
        "z_inv": series_to_json(r.z_inv),
        "z": series_to_json(r.z),
        "cycles": r.cycle_count,
        "ms": round(r.elapsed * 1000, 3),
    }


def report_document(report: ComparisonReport) -> dict:
    disc = report.first_discrepancy
    return {
        "graph": {"n": report.n, "m": report.m},
        "order": report.order,
        "results": {name: result_document(r) for name, r in report.results.items()},
        "agreement": report.agreement,
        "first_discrepancy": None if disc is None else {
            "degree": disc.degree,
            "methods": list(disc.methods),
            "values": list(disc.values),
        },
        "environment": {
            "python": platform.python_version(),
            "qzeta": __version__,
            "backend": kernels.BACKEND,
        },
    }


def run_compute(config: ComputeConfig) -> ComparisonReport:
    for m in config.methods:
        if config.order < MIN_ORDER[m]:
            raise InputError(f"{m} requires order ≥ {MIN_ORDER[m]}")
    try:
        G = read_graph(config.input_path)
    except OSError as exc:
        raise InputError(f"input: {exc.strerror or exc}: {config.input_path}") from None
    except GraphError as exc:
        raise InputError(str(exc)) from None
    if len(config.methods) == 1:
        name = config.methods[0]
        result = ROUTES_WITH_IHARA[name](G, config.order)
        return ComparisonReport(config.order, {name: result}, True, None, G.n, G.m)
    return compare_methods(G, config.order, config.methods, workers=config.workers)


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    from .verify import SUITES

    parser = argparse.ArgumentParser(prog="qzeta", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute and compare zeta reciprocals for a graph file")
    c.add_argument("--input", required=True, metavar="PATH", help="graph JSON document")
    c.add_argument("--order", required=True, type=_positive, metavar="T", help="truncation order")
    c.add_argument("--methods", default=",".join(METHODS),
                   metavar="LIST", help="comma-separated subset of " + ",".join(ROUTES_WITH_IHARA))
    c.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")

    v = sub.add_parser("verify", help="run the randomized property suites")
    v.add_argument("--seed", type=int, default=0, metavar="N")
    v.add_argument("--trials", type=_positive, default=20, metavar="K")
    v.add_argument("--suite", choices=SUITES, metavar="NAME", help="one of: " + ", ".join(SUITES))
    return parser


def _compute(args) -> int:
    config = ComputeConfig(args.input, args.order, parse_methods(args.methods), args.output, worker_count())
    report = run_compute(config)
    text = json.dumps(report_document(report), indent=2) + "\n"
    if config.output_path:
        with open(config.output_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not report.agreement:
        d = report.first_discrepancy
        print(f"qzeta: methods disagree at t^{d.degree}: {d.methods[0]}={d.values[0]}, "
              f"{d.methods[1]}={d.values[1]}", file=sys.stderr)
        return 1
    return 0


def _verify(args) -> int:
    from .verify import run_verify

    def show(o):
        print(f"{'ok  ' if o.passed else 'FAIL'} [{o.suite}] {o.name}", flush=True)
        if not o.passed:
            print("     failing instance: " + json.dumps(o.failure, sort_keys=True), flush=True)

    report = run_verify(args.seed, args.trials, args.suite, progress=show)
    failed = report.failures()
    if failed:
        print("qzeta: failing properties: " + "; ".join(o.name for o in failed), file=sys.stderr)
        return 1
    print(f"all {len(report.outcomes)} properties held for {args.trials} trials (seed {args.seed})")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _compute(args) if args.command == "compute" else _verify(args)
    except (InputError, GraphError, ValueError) as exc:
        print(f"qzeta: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
