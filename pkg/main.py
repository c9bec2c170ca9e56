#!/usr/bin/env python3
"""
Factor integers on a simulated duality computer.

Usage:
    python main.py run --algorithm shor --n 21 --base 2 --q 512 --seed 7
    python main.py run --algorithm naive --n 15 --trace output/naive15.jsonl
    python main.py run --algorithm fermat --n 11 --format json
    python main.py bench --min 9 --max 99 --out output/bench.csv
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dualfactor import Runner
from dualfactor.bench import bench
from dualfactor.config import Algorithm, OutputFormat, RunConfig, Settings
from dualfactor.errors import DualityError, UsageError
from dualfactor.runner import EXIT_OK, EXIT_USAGE


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dualfactor", description="Duality-computer factorization simulator")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = commands.add_parser("run", help="run one algorithm or baseline on n")
    run.add_argument("--algorithm", required=True, choices=[a.value for a in Algorithm])
    run.add_argument("--n", required=True, type=int)
    run.add_argument("--seed", type=int, default=Settings().default_seed)
    run.add_argument("--base", type=int, help="Shor base a")
    run.add_argument("--q", type=int, help="Shor precision q (default: the power of two in (n², 2n²])")
    run.add_argument("--allow-q-out-of-range", action="store_true", help="skip the n² < q <= 2n² check")
    run.add_argument("--max-samples", type=int, help="Shor readouts before giving up on a stable gcd")
    run.add_argument("--retry-bases", action="store_true", help="Shor: move on to the next base on failure")
    run.add_argument("--trace", type=Path, help="write one JSON trace event per line to this file")
    run.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.TEXT.value)

    bench_cmd = commands.add_parser("bench", help="compare primitive counts with classical step counts")
    bench_cmd.add_argument("--min", dest="n_min", type=int, required=True)
    bench_cmd.add_argument("--max", dest="n_max", type=int, required=True)
    bench_cmd.add_argument("--out", type=Path, required=True)
    bench_cmd.add_argument("--workers", type=int, default=Settings().bench_workers)
    return parser


def _run(args: argparse.Namespace) -> int:
    config = RunConfig(
        algorithm=Algorithm(args.algorithm),
        n=args.n,
        seed=args.seed,
        shor_base=args.base,
        shor_q=args.q,
        allow_q_out_of_range=args.allow_q_out_of_range,
        max_samples=args.max_samples,
        retry_bases=args.retry_bases,
        trace_path=args.trace,
        format=OutputFormat(args.format),
    )
    runner = Runner(config)
    result = runner.run()
    runner.save(result)
    sys.stdout.write(result.render(config.format))
    return result.exit_code


def _bench(args: argparse.Namespace) -> int:
    rows = bench(args.n_min, args.n_max, args.out, workers=args.workers)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(
            level=logging.DEBUG if args.verbose else logging.WARNING,
            format="%(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
        )
        return _run(args) if args.command == "run" else _bench(args)
    except DualityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
