from __future__ import annotations

import logging
from dataclasses import dataclass
from numbers import Integral
from typing import Any, Dict, FrozenSet, Optional, Sequence, Union

import numpy as np

from ..config import Settings
from ..errors import (
    DividerError,
    DualityError,
    IncompatibleWavesError,
    InvalidParameterError,
    OracleEvaluationError,
    OracleKindError,
    SignOracleError,
)
from .oracles import OracleFn, OracleKind
from .state import BasisLabel, DualityState, RegisterSpec, SubWaveBundle

logger = logging.getLogger(__name__)

Seed = Union[int, np.random.Generator]


@dataclass(frozen=True)
class Readout:
    label: Optional[BasisLabel]
    success_probability: float

    @property
    def found(self) -> bool:
        return self.label is not None


def _rng(seed: Seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def norm_sq(state: DualityState) -> float:
    return state.norm_sq


def support(state: DualityState) -> FrozenSet[BasisLabel]:
    return frozenset(state.labels())


def init_uniform(spec: RegisterSpec, reg2_value: int = 0) -> DualityState:
    if not 0 <= reg2_value <= spec.reg2_capacity:
        raise InvalidParameterError(f"reg2 value {reg2_value} outside register spec {spec}")
    reg1 = np.arange(spec.reg1_min, spec.reg1_max + 1, dtype=np.int64)
    amps = np.full(spec.size, 1.0 / np.sqrt(spec.size), dtype=np.complex128)
    return DualityState.build(spec, reg1, np.full(spec.size, reg2_value, dtype=np.int64), amps)


def divide(
    state: DualityState,
    coefficients: Optional[Sequence[complex]] = None,
    settings: Optional[Settings] = None,
) -> SubWaveBundle:
    settings = settings or Settings()
    if coefficients is None:
        coefficients = settings.divider
    coefficients = tuple(complex(c) for c in coefficients)
    if not coefficients or abs(sum(coefficients) - 1) > settings.norm_tolerance:
        raise DividerError()
    return SubWaveBundle.of([state.scaled(c) for c in coefficients], coefficients)


def _evaluate(oracle: OracleFn, *args: int) -> Any:
    try:
        return oracle.body(*args)
    except DualityError:
        raise
    except Exception as exc:
        raise OracleEvaluationError(args[0]) from exc


def _evaluate_batch(oracle: OracleFn, *columns: np.ndarray) -> np.ndarray:
    try:
        values = np.asarray(oracle.batch(*columns))
    except DualityError:
        raise
    except Exception as exc:
        raise OracleEvaluationError(int(columns[0][0])) from exc
    if values.shape != columns[0].shape or not np.issubdtype(values.dtype, np.integer):
        raise InvalidParameterError(f"{oracle.name} batch form must return one integer per term")
    return values.astype(np.int64)


def _is_integer(value: Any) -> bool:
    return isinstance(value, Integral) and not isinstance(value, bool)


def _function_values(state: DualityState, oracle: OracleFn, distinct: np.ndarray) -> np.ndarray:
    if oracle.batch is not None:
        return _evaluate_batch(oracle, distinct)

    values = []
    for i in distinct.tolist():
        value = _evaluate(oracle, i)
        if not _is_integer(value):
            raise InvalidParameterError(f"{oracle.name} returned non-integer {value!r} at basis value {i}")
        if not 0 <= value <= state.spec.reg2_max:
            raise InvalidParameterError(
                f"{oracle.name} wrote {value} at basis value {i}, outside the second register"
            )
        values.append(int(value))
    return np.asarray(values, dtype=np.int64)


def apply_function(state: DualityState, oracle: OracleFn) -> DualityState:
    if oracle.kind is not OracleKind.FUNCTION:
        raise OracleKindError(f"apply_function needs a function-evaluation oracle, got {oracle.kind.value}")
    if not len(state):
        return state

    # reg1 values repeat once a state holds several reg2 branches per reg1.
    distinct, inverse = np.unique(state.reg1, return_inverse=True)
    values = _function_values(state, oracle, distinct)
    outside = (values < 0) | (values > state.spec.reg2_max)
    if np.any(outside):
        at = int(np.flatnonzero(outside)[0])
        raise InvalidParameterError(
            f"{oracle.name} wrote {int(values[at])} at basis value {int(distinct[at])}, outside the second register"
        )

    written = values[inverse.reshape(-1)]
    logger.debug("apply_function %s over %d terms", oracle.name, len(state))
    return state.with_terms(state.reg1, np.bitwise_xor(state.reg2, written), state.amps)


def apply_sign(state: DualityState, oracle: OracleFn) -> DualityState:
    if oracle.kind is not OracleKind.SIGN:
        raise OracleKindError(f"apply_sign needs a sign oracle, got {oracle.kind.value}")
    if not len(state):
        return state

    if oracle.batch is not None:
        signs = _evaluate_batch(oracle, state.reg1, state.reg2)
        if not np.all((signs == 1) | (signs == -1)):
            raise SignOracleError()
    else:
        raw = [_evaluate(oracle, i, r) for i, r in zip(state.reg1.tolist(), state.reg2.tolist())]
        # Checked before any conversion: 1.5 must not pass as 1.
        if not all(_is_integer(v) and v in (1, -1) for v in raw):
            raise SignOracleError()
        signs = np.asarray(raw, dtype=np.int64)

    logger.debug("apply_sign %s flipped %d of %d terms", oracle.name, int(np.sum(signs < 0)), len(state))
    return state.with_terms(state.reg1, state.reg2, state.amps * signs)


def combine(bundle: SubWaveBundle, settings: Optional[Settings] = None) -> DualityState:
    settings = settings or Settings()
    if not bundle.parts:
        raise IncompatibleWavesError()
    spec = bundle.parts[0].spec
    if any(part.spec != spec for part in bundle.parts):
        raise IncompatibleWavesError()

    return DualityState.build(
        spec,
        np.concatenate([part.reg1 for part in bundle.parts]),
        np.concatenate([part.reg2 for part in bundle.parts]),
        np.concatenate([part.amps for part in bundle.parts]),
        prune_threshold=settings.prune_threshold,
    )


def _distribution(state: DualityState, settings: Settings) -> Optional[np.ndarray]:
    total = state.norm_sq
    if total <= settings.prune_threshold:
        return None
    return np.abs(state.amps) ** 2 / total


def readout(state: DualityState, seed: Seed, settings: Optional[Settings] = None) -> Readout:
    """Read both registers, renormalising over whatever survived the combiner.

    The wave's own squared norm is reported separately as the success
    probability; an empty wave reads out nothing.
    """
    settings = settings or Settings()
    probs = _distribution(state, settings)
    if probs is None:
        return Readout(label=None, success_probability=0.0)

    index = int(_rng(seed).choice(len(state), p=probs))
    return Readout(label=state.label_at(index), success_probability=min(state.norm_sq, 1.0))


def sample(
    state: DualityState,
    shots: int,
    seed: Seed,
    settings: Optional[Settings] = None,
) -> Dict[BasisLabel, int]:
    settings = settings or Settings()
    if shots < 1:
        raise InvalidParameterError(f"shots must be positive, got {shots}")
    probs = _distribution(state, settings)
    if probs is None:
        return {}

    outcomes = _rng(seed).choice(len(state), size=shots, p=probs)
    indices, counts = np.unique(outcomes, return_counts=True)
    return {state.label_at(int(i)): int(c) for i, c in zip(indices, counts)}
