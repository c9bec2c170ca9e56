from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, NamedTuple, Sequence, Tuple

import numpy as np

from ..errors import EmptyRegisterError, InvalidParameterError

INT64_MAX = np.iinfo(np.int64).max
# Largest reg1 range a dense uniform wave is built over (about half a GiB of terms).
MAX_REGISTER_SIZE = 1 << 24


class BasisLabel(NamedTuple):
    reg1: int
    reg2: int


@dataclass(frozen=True)
class RegisterSpec:
    reg1_min: int
    reg1_max: int
    reg2_max: int = 0

    def __post_init__(self) -> None:
        if self.reg1_min < 0 or self.reg2_max < 0:
            raise InvalidParameterError("register bounds must be nonnegative")
        if self.reg1_min > self.reg1_max:
            raise EmptyRegisterError()
        if self.reg1_max > INT64_MAX or self.reg2_max > INT64_MAX:
            raise InvalidParameterError("register bounds exceed 64-bit storage")
        if self.reg1_max - self.reg1_min + 1 > MAX_REGISTER_SIZE:
            raise InvalidParameterError(
                f"register range [{self.reg1_min}, {self.reg1_max}] holds more than {MAX_REGISTER_SIZE} basis values"
            )
        object.__setattr__(self, "size", self.reg1_max - self.reg1_min + 1)
        object.__setattr__(self, "reg2_capacity", (1 << self.reg2_max.bit_length()) - 1)

    # Number of reg1 basis values, and the largest value reg2 can hold once
    # XOR writes are taken into account.
    size: int = field(init=False, compare=False)
    reg2_capacity: int = field(init=False, compare=False)

    def contains(self, reg1: int, reg2: int) -> bool:
        return self.reg1_min <= reg1 <= self.reg1_max and 0 <= reg2 <= self.reg2_capacity


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class DualityState:
    """Sparse two-register wave.

    Terms are kept sorted by (reg1, reg2) with no duplicate labels and no
    amplitude below the pruning threshold, so two states built from the same
    amplitudes compare array-for-array. The arrays are read-only; operations
    always return a new state.
    """

    spec: RegisterSpec
    reg1: np.ndarray
    reg2: np.ndarray
    amps: np.ndarray

    @classmethod
    def build(
        cls,
        spec: RegisterSpec,
        reg1: np.ndarray,
        reg2: np.ndarray,
        amps: np.ndarray,
        prune_threshold: float = 0.0,
    ) -> "DualityState":
        reg1 = np.asarray(reg1, dtype=np.int64)
        reg2 = np.asarray(reg2, dtype=np.int64)
        amps = np.asarray(amps, dtype=np.complex128)

        if len(amps):
            order = np.lexsort((reg2, reg1))
            reg1, reg2, amps = reg1[order], reg2[order], amps[order]
            starts = np.flatnonzero(
                np.concatenate(([True], (np.diff(reg1) != 0) | (np.diff(reg2) != 0)))
            )
            reg1, reg2 = reg1[starts], reg2[starts]
            amps = np.add.reduceat(amps, starts)

            keep = (amps != 0) & (np.abs(amps) >= prune_threshold)
            reg1, reg2, amps = reg1[keep], reg2[keep], amps[keep]

        return cls(spec, _frozen(reg1.copy()), _frozen(reg2.copy()), _frozen(amps.copy()))

    @classmethod
    def zero(cls, spec: RegisterSpec) -> "DualityState":
        empty = np.empty(0, dtype=np.int64)
        return cls.build(spec, empty, empty, np.empty(0, dtype=np.complex128))

    @classmethod
    def from_amplitudes(
        cls,
        spec: RegisterSpec,
        amplitudes: Mapping[Tuple[int, int], complex],
        prune_threshold: float = 0.0,
    ) -> "DualityState":
        labels = list(amplitudes)
        for reg1, reg2 in labels:
            if not spec.contains(reg1, reg2):
                raise InvalidParameterError(f"label |{reg1}⟩|{reg2}⟩ outside register spec {spec}")
        return cls.build(
            spec,
            np.array([label[0] for label in labels], dtype=np.int64),
            np.array([label[1] for label in labels], dtype=np.int64),
            np.array([amplitudes[label] for label in labels], dtype=np.complex128),
            prune_threshold,
        )

    def __len__(self) -> int:
        return len(self.amps)

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    def labels(self) -> Iterator[BasisLabel]:
        for reg1, reg2 in zip(self.reg1.tolist(), self.reg2.tolist()):
            yield BasisLabel(reg1, reg2)

    def label_at(self, index: int) -> BasisLabel:
        return BasisLabel(int(self.reg1[index]), int(self.reg2[index]))

    def amplitude(self, label: Tuple[int, int]) -> complex:
        reg1, reg2 = label
        hits = np.flatnonzero((self.reg1 == reg1) & (self.reg2 == reg2))
        return complex(self.amps[hits[0]]) if len(hits) else 0j

    def as_dict(self) -> Dict[BasisLabel, complex]:
        return dict(zip(self.labels(), (complex(a) for a in self.amps)))

    def reg1_values(self) -> List[int]:
        return self.reg1.tolist()

    def scaled(self, coefficient: complex) -> "DualityState":
        if coefficient == 0:
            return DualityState.zero(self.spec)
        return DualityState(
            self.spec,
            self.reg1,
            self.reg2,
            _frozen(self.amps * np.complex128(coefficient)),
        )

    def with_terms(self, reg1: np.ndarray, reg2: np.ndarray, amps: np.ndarray) -> "DualityState":
        return DualityState.build(self.spec, reg1, reg2, amps)


@dataclass(frozen=True)
class SubWaveBundle:
    parts: Tuple[DualityState, ...]
    coefficients: Tuple[complex, ...]

    def __post_init__(self) -> None:
        if len(self.parts) != len(self.coefficients):
            raise InvalidParameterError("sub-wave bundle needs one coefficient per part")

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, index: int) -> DualityState:
        return self.parts[index]

    def replace_part(self, index: int, state: DualityState) -> "SubWaveBundle":
        parts: List[DualityState] = list(self.parts)
        parts[index] = state
        return SubWaveBundle(tuple(parts), self.coefficients)

    @property
    def norm_sq(self) -> float:
        return sum(part.norm_sq for part in self.parts)

    @staticmethod
    def of(parts: Sequence[DualityState], coefficients: Sequence[complex]) -> "SubWaveBundle":
        return SubWaveBundle(tuple(parts), tuple(complex(c) for c in coefficients))
