from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class Settings:
    prune_threshold: float = 1e-12
    norm_tolerance: float = 1e-9
    divider: Tuple[complex, ...] = (0.5, 0.5)

    shor_max_samples: int = 32
    shor_stability_window: int = 3
    shor_max_bases: int = 5

    default_seed: int = 0

    bench_ceiling: int = 10**6
    bench_sample_above: int = 10**4
    bench_sample_size: int = 200
    bench_max_shor_q: int = 2**16
    bench_workers: int = 1
