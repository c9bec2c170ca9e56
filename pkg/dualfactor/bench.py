from __future__ import annotations

import csv
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from functools import partial
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import arith
from .algorithms import ShorParams, dc_fermat, dc_shor, naive_factorize
from .baselines import classical_fermat, trial_division
from .config import Settings
from .errors import UsageError
from .registers import default_precision_q

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BenchRow:
    n: int
    dc_naive_ops: int
    dc_shor_ops: int
    dc_fermat_ops: int
    classical_fermat_steps: int
    trial_division_steps: int


CSV_HEADER = [f.name for f in fields(BenchRow)]


def bench_inputs(n_min: int, n_max: int, settings: Optional[Settings] = None) -> List[int]:
    settings = settings or Settings()
    if n_min > n_max:
        raise UsageError(f"empty range: --min {n_min} > --max {n_max}")
    if n_min < 9:
        raise UsageError(f"--min must be at least 9, got {n_min}")
    if n_max > settings.bench_ceiling:
        raise UsageError(f"--max {n_max} above the bench ceiling {settings.bench_ceiling}")

    start = n_min if n_min % 2 else n_min + 1
    odd_composites = [n for n in range(start, n_max + 1, 2) if not arith.is_prime(n)]

    dense = [n for n in odd_composites if n <= settings.bench_sample_above]
    sparse = [n for n in odd_composites if n > settings.bench_sample_above]
    if len(sparse) > settings.bench_sample_size:
        rng = np.random.default_rng(settings.default_seed)
        picks = rng.choice(len(sparse), size=settings.bench_sample_size, replace=False)
        sparse = [sparse[i] for i in sorted(picks.tolist())]
    return dense + sparse


def bench_shor_params(n: int, settings: Settings) -> ShorParams:
    q = default_precision_q(n)
    if q <= settings.bench_max_shor_q:
        return ShorParams.for_input(n, settings=settings)
    return ShorParams.for_input(n, precision_q=settings.bench_max_shor_q, allow_out_of_range=True, settings=settings)


def bench_row(n: int, settings: Settings) -> BenchRow:
    seed = settings.default_seed
    return BenchRow(
        n=n,
        dc_naive_ops=naive_factorize(n, seed, settings).ops_per_pass,
        dc_shor_ops=dc_shor(n, bench_shor_params(n, settings), seed, settings).ops_per_pass,
        dc_fermat_ops=dc_fermat(n, seed, settings).ops_per_pass,
        classical_fermat_steps=classical_fermat(n).steps,
        trial_division_steps=trial_division(n).steps,
    )


def bench(
    n_min: int,
    n_max: int,
    output: Path,
    settings: Optional[Settings] = None,
    workers: Optional[int] = None,
) -> List[BenchRow]:
    settings = settings or Settings()
    inputs = bench_inputs(n_min, n_max, settings)
    workers = workers or settings.bench_workers
    logger.info("bench over %d odd composites in [%d, %d] with %d worker(s)", len(inputs), n_min, n_max, workers)

    row_for = partial(bench_row, settings=settings)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(row_for, inputs, chunksize=16))
    else:
        rows = [row_for(n) for n in inputs]

    output = Path(output)
    try:
        output.parent.mkdir(parents=True, exist_ok=True)
        with output.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(CSV_HEADER)
            writer.writerows(astuple(row) for row in rows)
    except OSError as exc:
        raise UsageError(f"cannot write {output}: {exc.strerror}") from exc
    return rows
