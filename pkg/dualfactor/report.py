from __future__ import annotations

import json
from typing import Any, Dict, List

from .algorithms import FactorOutcome
from .baselines import BaselineReport
from .validation import validate_outcome


def outcome_report(outcome: FactorOutcome) -> Dict[str, Any]:
    report: Dict[str, Any] = {
        "algorithm": outcome.algorithm,
        "n": outcome.input_n,
        "seed": outcome.seed,
        "status": outcome.status.value,
        "factors": list(outcome.factors),
        "period": outcome.period,
        "success_probability": outcome.success_probability,
        "message": outcome.message,
        "passes": outcome.passes,
        "ops_per_pass": outcome.ops_per_pass,
        "op_counts": dict(sorted(outcome.op_counts.items())),
    }
    if outcome.algorithm == "naive":
        report["foundlist"] = list(outcome.foundlist)
    if outcome.algorithm == "shor":
        report["base"] = outcome.base_a
        report["q"] = outcome.precision_q
        report["sampled_gcd"] = outcome.sampled_gcd
    if outcome.representation is not None:
        report["representation"] = list(outcome.representation)
    report["validation"] = validate_outcome(outcome).summary_lines()
    return report


def baseline_report(baseline: BaselineReport, n: int, seed: int, status: str, message: str = "") -> Dict[str, Any]:
    return {
        "algorithm": baseline.method.value,
        "n": n,
        "seed": seed,
        "status": status,
        "factors": list(baseline.factors),
        "period": baseline.period,
        "success_probability": 1.0,
        "message": message,
        "steps": baseline.steps,
    }


def _text_value(value: Any) -> str:
    if isinstance(value, list):
        return ", ".join(_text_value(v) for v in value) if value else "-"
    if isinstance(value, dict):
        return ", ".join(f"{k}={v}" for k, v in value.items()) or "-"
    if value is None:
        return "-"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_text(report: Dict[str, Any]) -> str:
    width = max(len(key) for key in report)
    lines: List[str] = [f"{key.ljust(width)} : {_text_value(value)}" for key, value in report.items()]
    return "\n".join(lines) + "\n"


def render_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2) + "\n"
