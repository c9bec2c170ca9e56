from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional

from ..errors import UsageError


class Algorithm(str, Enum):
    NAIVE = "naive"
    SHOR = "shor"
    FERMAT = "fermat"
    TRIAL = "trial"
    CLASSICAL_FERMAT = "classical-fermat"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


@dataclass(frozen=True)
class RunConfig:
    algorithm: Algorithm
    n: int
    seed: int = 0
    shor_base: Optional[int] = None
    shor_q: Optional[int] = None
    allow_q_out_of_range: bool = False
    max_samples: Optional[int] = None
    retry_bases: bool = False
    trace_path: Optional[Path] = None
    format: OutputFormat = OutputFormat.TEXT

    def validate(self) -> None:
        if self.n < 1:
            raise UsageError(f"n must be a positive integer, got {self.n}")

        shor_only = {
            "--base": self.shor_base is not None,
            "--q": self.shor_q is not None,
            "--allow-q-out-of-range": self.allow_q_out_of_range,
            "--max-samples": self.max_samples is not None,
            "--retry-bases": self.retry_bases,
        }
        if self.algorithm is not Algorithm.SHOR:
            given = [flag for flag, present in shor_only.items() if present]
            if given:
                raise UsageError(f"{', '.join(given)} only valid with --algorithm shor")

        if self.retry_bases and self.shor_base is not None:
            raise UsageError("--retry-bases picks its own bases; drop --base")

        if self.max_samples is not None and self.max_samples < 1:
            raise UsageError("--max-samples must be positive")
