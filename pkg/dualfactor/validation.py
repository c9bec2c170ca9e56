from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import List, Optional

from .algorithms import FactorOutcome
from .config import Settings
from .trace import TraceEvent


@dataclass
class OutcomeValidation:
    input_n: int
    invalid_factors: List[int]
    product: int
    trace_violations: List[TraceEvent]

    @property
    def complete(self) -> bool:
        return self.product == self.input_n

    @property
    def ok(self) -> bool:
        return not self.invalid_factors and self.input_n % self.product == 0 and not self.trace_violations

    def summary_lines(self) -> List[str]:
        lines = []
        if self.invalid_factors:
            lines.append(f"invalid factors: {', '.join(map(str, self.invalid_factors))}")
        if self.input_n % self.product:
            lines.append(f"factor product {self.product} does not divide {self.input_n}")
        if self.trace_violations:
            lines.append(f"trace violations: {len(self.trace_violations)}")
        if not lines:
            lines.append("validation ok")
        return lines


def validate_outcome(outcome: FactorOutcome, settings: Optional[Settings] = None) -> OutcomeValidation:
    settings = settings or Settings()
    n = outcome.input_n
    invalid = [f for f in outcome.factors if not (1 < f < n and n % f == 0)]

    violations = []
    previous = -1
    for event in outcome.trace:
        if event.step_index <= previous or not 0.0 <= event.norm_sq <= 1.0 + settings.norm_tolerance:
            violations.append(event)
        previous = event.step_index

    return OutcomeValidation(
        input_n=n,
        invalid_factors=invalid,
        product=prod(outcome.factors),
        trace_violations=violations,
    )
