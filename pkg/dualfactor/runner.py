from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from .algorithms import (
    FactorOutcome,
    OutcomeStatus,
    ShorParams,
    dc_fermat,
    dc_shor,
    dc_shor_factorize,
    naive_factorize,
)
from .baselines import BaselineMethod, BaselineReport, classical_fermat, trial_division
from .config import Algorithm, OutputFormat, RunConfig, Settings
from .errors import EvenInputError, InputTooSmallError, NoRepresentationError
from .report import baseline_report, outcome_report, render_json, render_text
from .trace import TraceEvent, write_trace

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_RESULT = 2


@dataclass
class RunResult:
    report: Dict[str, Any]
    exit_code: int
    trace: List[TraceEvent] = field(default_factory=list)

    def render(self, fmt: OutputFormat) -> str:
        return render_json(self.report) if fmt is OutputFormat.JSON else render_text(self.report)


class Runner:
    def __init__(self, config: RunConfig, settings: Optional[Settings] = None) -> None:
        self.config = config
        self.settings = settings or Settings()

    def run(self) -> RunResult:
        config = self.config
        config.validate()
        if config.n < 4:
            raise InputTooSmallError()

        if config.algorithm is Algorithm.TRIAL:
            return self._baseline(trial_division(config.n))
        if config.algorithm is Algorithm.CLASSICAL_FERMAT:
            return self._classical_fermat()

        outcome = self._duality_outcome()
        exit_code = EXIT_OK if outcome.status.conclusive else EXIT_NO_RESULT
        logger.info("%s n=%d finished: %s", outcome.algorithm, config.n, outcome.status.value)
        return RunResult(outcome_report(outcome), exit_code, list(outcome.trace))

    def _duality_outcome(self) -> FactorOutcome:
        config = self.config
        if config.algorithm is Algorithm.NAIVE:
            return naive_factorize(config.n, config.seed, self.settings)
        if config.algorithm is Algorithm.FERMAT:
            return dc_fermat(config.n, config.seed, self.settings)

        params = ShorParams.for_input(
            config.n,
            base_a=config.shor_base if config.shor_base is not None else 2,
            precision_q=config.shor_q,
            max_samples=config.max_samples,
            allow_out_of_range=config.allow_q_out_of_range,
            settings=self.settings,
        )
        if config.retry_bases:
            return dc_shor_factorize(config.n, params, config.seed, self.settings)
        return dc_shor(config.n, params, config.seed, self.settings)

    def _baseline(self, baseline: BaselineReport) -> RunResult:
        status = OutcomeStatus.FACTORED if len(baseline.factors) > 1 else OutcomeStatus.PRIME
        report = baseline_report(baseline, self.config.n, self.config.seed, status.value)
        return RunResult(report, EXIT_OK)

    def _classical_fermat(self) -> RunResult:
        n = self.config.n
        if n % 2 == 0:
            raise EvenInputError()
        try:
            return self._baseline(classical_fermat(n))
        except NoRepresentationError as exc:
            report = baseline_report(
                BaselineReport(BaselineMethod.CLASSICAL_FERMAT, steps=exc.steps),
                n,
                self.config.seed,
                OutcomeStatus.PRIME.value,
                message=str(exc),
            )
            return RunResult(report, EXIT_OK)

    def save(self, result: RunResult, output: Optional[Path] = None) -> None:
        path = output or self.config.trace_path
        if path is not None:
            write_trace(result.trace, path)
