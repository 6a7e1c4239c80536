"""Command-line interface for the benchmark harness.

Two subcommands mirror the two experiment styles::

    anthemius throughput --preset dexbursty --threads 4,8,12,16 --out out.csv
    anthemius latency --preset nft --threads 16 --batches 5 --out lat.csv

Builders and engines accept comma-separated lists; the report then carries
one row per (builder, engine, worker count). Exit codes: 0 on success, 2 on
configuration errors, 3 when a run trips the non-termination guard.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .harness import (
    BUILDERS,
    ENGINES,
    MODES,
    ExperimentConfig,
    HarnessError,
    emit_report,
    merge_reports,
    run_latency,
    run_throughput,
)
from .workload import PRESET_NAMES, load_config, preset


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _parse_choices(valid: tuple[str, ...]):
    def parse(text: str) -> tuple[str, ...]:
        items = tuple(part.strip() for part in text.split(",") if part.strip())
        for item in items:
            if item not in valid:
                raise argparse.ArgumentTypeError(
                    f"{item!r} is not one of {', '.join(valid)}"
                )
        if not items:
            raise argparse.ArgumentTypeError("empty list")
        return items

    return parse


def _add_common_options(sub: argparse.ArgumentParser, default_threads: str) -> None:
    source = sub.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", choices=PRESET_NAMES, help="named workload preset")
    source.add_argument("--workload", metavar="FILE", help="workload config file (key = value lines)")
    sub.add_argument(
        "--builder",
        type=_parse_choices(BUILDERS),
        default=("anthemius",),
        help="block builder(s), comma-separated (default: anthemius)",
    )
    sub.add_argument(
        "--engine",
        type=_parse_choices(ENGINES),
        default=("guided",),
        help="execution engine(s), comma-separated (default: guided)",
    )
    sub.add_argument(
        "--threads",
        type=_parse_int_list,
        default=_parse_int_list(default_threads),
        help=f"worker counts to sweep (default: {default_threads})",
    )
    sub.add_argument("--batches", type=int, default=5, help="number of generated batches (default: 5)")
    sub.add_argument("--mode", choices=MODES, default="decoupled")
    sub.add_argument(
        "--seed",
        type=int,
        default=None,
        help="override the workload seed (default: the preset's or file's own seed)",
    )
    sub.add_argument("--out", required=True, metavar="PATH", help="output file")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--repeats", type=int, default=1, help="scheduling wall-clock repetitions")
    sub.add_argument("--gas-per-second", type=float, default=1e6, dest="gas_per_second")
    sched = sub.add_argument_group("scheduler overrides")
    sched.add_argument("--maxgas", type=int, default=None)
    sched.add_argument("--maxlen", type=int, default=10_000)
    sched.add_argument("--lim", type=int, default=None)
    sched.add_argument("--maxhotr", type=int, default=4)
    sched.add_argument("--maxrelaxnum", type=int, default=2)
    sched.add_argument("--maxrelaxrate", type=float, default=100.0)
    sched.add_argument("--target-inc-rate", type=float, default=None, dest="target_inc_rate")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anthemius",
        description="Dependency-aware block assembly benchmarks",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    throughput = subparsers.add_parser(
        "throughput", help="sweep worker counts until the first batch has executed"
    )
    _add_common_options(throughput, default_threads="4,8,12,16,20,24,28,32")
    latency = subparsers.add_parser(
        "latency", help="drain all batches and report latency percentiles"
    )
    _add_common_options(latency, default_threads="16")
    return parser


def _experiment_configs(args: argparse.Namespace):
    if args.preset is not None:
        workload = preset(args.preset)
        name = args.preset
    else:
        workload = load_config(args.workload)
        name = Path(args.workload).stem
    for builder in args.builder:
        for engine in args.engine:
            yield ExperimentConfig(
                builder=builder,
                engine=engine,
                workload=workload,
                workload_name=name,
                worker_counts=args.threads,
                num_batches=args.batches,
                mode=args.mode,
                seed=args.seed,
                gas_per_second=args.gas_per_second,
                repeats=args.repeats,
                maxgas=args.maxgas,
                maxlen=args.maxlen,
                lim=args.lim,
                maxhotr=args.maxhotr,
                maxrelaxnum=args.maxrelaxnum,
                maxrelaxrate=args.maxrelaxrate,
                target_inc_rate=args.target_inc_rate,
            )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    runner = run_throughput if args.command == "throughput" else run_latency
    try:
        reports = [runner(cfg) for cfg in _experiment_configs(args)]
        emit_report(merge_reports(*reports), args.out, args.format)
    except HarnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
