from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

from .wave import DualityState, SubWaveBundle

WAVE_OPS = ("init", "divide", "apply_function", "apply_sign", "combine", "readout")


@dataclass(frozen=True)
class TraceEvent:
    step_index: int
    op: str
    label: str
    norm_sq: float
    support_size: int
    payload: Optional[Dict[str, Any]] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, line: str) -> "TraceEvent":
        return cls(**json.loads(line))


class TraceRecorder:
    """Collects the events of one run and the primitive counts behind them.

    Counts can also be charged without an event, for passes whose wave is
    reused rather than rebuilt.
    """

    def __init__(self) -> None:
        self._events: List[TraceEvent] = []
        self._op_counts: Dict[str, int] = {}

    @property
    def events(self) -> List[TraceEvent]:
        return list(self._events)

    @property
    def op_counts(self) -> Dict[str, int]:
        return dict(self._op_counts)

    def charge(self, op: str, times: int = 1) -> None:
        if op not in WAVE_OPS:
            raise ValueError(f"unknown wave primitive {op!r}")
        self._op_counts[op] = self._op_counts.get(op, 0) + times

    def record(
        self,
        op: str,
        label: str,
        wave: DualityState | SubWaveBundle,
        **payload: Any,
    ) -> TraceEvent:
        self.charge(op)
        if isinstance(wave, SubWaveBundle):
            support_size = max((len(part) for part in wave.parts), default=0)
        else:
            support_size = len(wave)
        event = TraceEvent(
            step_index=len(self._events),
            op=op,
            label=label,
            norm_sq=wave.norm_sq,
            support_size=support_size,
            payload=payload or None,
        )
        self._events.append(event)
        return event

    def write(self, path: Path) -> None:
        write_trace(self._events, path)


def write_trace(events: Iterable[TraceEvent], path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as handle:
        for event in events:
            handle.write(event.to_json() + "\n")


def read_trace(path: Path) -> List[TraceEvent]:
    with Path(path).open(encoding="utf-8") as handle:
        return [TraceEvent.from_json(line) for line in handle if line.strip()]
