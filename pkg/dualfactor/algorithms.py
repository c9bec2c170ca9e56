"""The three duality-computer factorization procedures.

Each procedure is a loop over one wave pass (prepare, divide, act on a path,
combine, read out). The ``*_wave`` builders expose a single pass up to the
combiner so the interference pattern itself can be inspected.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import arith
from .config import Settings
from .errors import DualityError, EvenInputError, InputTooSmallError, InvalidParameterError
from .registers import (
    default_precision_q,
    fermat_register,
    naive_register,
    precision_in_range,
    shor_register,
)
from .trace import TraceEvent, TraceRecorder
from .wave import (
    DualityState,
    apply_function,
    apply_sign,
    combine,
    divide,
    divisibility_oracle,
    fermat_oracle,
    init_uniform,
    marked_unfound_oracle,
    modexp_oracle,
    period_marker_oracle,
    readout,
    sample,
)

logger = logging.getLogger(__name__)

UPPER, LOWER = 0, 1

# Primitives charged for one Shor pass before its readout.
SHOR_PIPELINE = ("init", "apply_function", "divide", "apply_sign", "combine")


class OutcomeStatus(str, Enum):
    FACTORED = "factored"
    PRIME = "prime"
    DEGENERATE = "degenerate"
    POST_PROCESSING_FAILED = "post-processing-failed"
    NO_PERIOD = "no-period"

    @property
    def conclusive(self) -> bool:
        return self in (OutcomeStatus.FACTORED, OutcomeStatus.PRIME, OutcomeStatus.DEGENERATE)


@dataclass(frozen=True)
class FactorOutcome:
    algorithm: str
    input_n: int
    status: OutcomeStatus
    factors: Tuple[int, ...] = ()
    period: Optional[int] = None
    foundlist: Tuple[int, ...] = ()
    success_probability: float = 0.0
    op_counts: Dict[str, int] = field(default_factory=dict)
    passes: int = 0
    seed: int = 0
    trace: Tuple[TraceEvent, ...] = ()
    wave_support: Tuple[int, ...] = ()
    message: str = ""
    base_a: Optional[int] = None
    precision_q: Optional[int] = None
    sampled_gcd: Optional[int] = None
    representation: Optional[Tuple[int, int]] = None

    @property
    def ops_per_pass(self) -> int:
        if not self.passes:
            return 0
        return sum(self.op_counts.values()) // self.passes

    def to_dict(self, include_trace: bool = False) -> Dict[str, Any]:
        data = asdict(self)
        data["status"] = self.status.value
        data["ops_per_pass"] = self.ops_per_pass
        data["factors"] = list(self.factors)
        data["foundlist"] = list(self.foundlist)
        data["representation"] = list(self.representation) if self.representation else None
        data.pop("wave_support")
        if include_trace:
            data["trace"] = [asdict(event) for event in self.trace]
        else:
            data.pop("trace")
        return data


@dataclass(frozen=True)
class ShorParams:
    base_a: int
    precision_q: int
    max_samples: int = 32
    stability_window: int = 3
    allow_out_of_range: bool = False

    @classmethod
    def for_input(
        cls,
        n: int,
        base_a: int = 2,
        precision_q: Optional[int] = None,
        max_samples: Optional[int] = None,
        allow_out_of_range: bool = False,
        settings: Optional[Settings] = None,
    ) -> "ShorParams":
        settings = settings or Settings()
        return cls(
            base_a=base_a,
            precision_q=precision_q if precision_q is not None else default_precision_q(n),
            max_samples=max_samples if max_samples is not None else settings.shor_max_samples,
            stability_window=settings.shor_stability_window,
            allow_out_of_range=allow_out_of_range,
        )

    def validate(self, n: int) -> None:
        if self.base_a < 2:
            raise InvalidParameterError(
                f"base must be at least 2, got {self.base_a} (base 1 has order 1 and carries no information)"
            )
        if self.base_a % n == 0:
            raise InvalidParameterError(f"base {self.base_a} is a multiple of {n}")
        if not self.allow_out_of_range and not precision_in_range(n, self.precision_q):
            raise InvalidParameterError(
                f"precision q={self.precision_q} outside ({n * n}, {2 * n * n}]; "
                "pass allow_out_of_range to override"
            )
        if self.max_samples < 1 or self.stability_window < 1:
            raise InvalidParameterError("max_samples and stability_window must be positive")


def _two_paths(settings: Settings) -> Tuple[complex, ...]:
    # UPPER and LOWER index into a two-part bundle.
    if len(settings.divider) != 2:
        raise InvalidParameterError(f"factorization needs a two-way divider, got {len(settings.divider)} coefficients")
    return settings.divider


def _record(recorder: Optional[TraceRecorder], op: str, label: str, wave, **payload: Any) -> None:
    if recorder is not None:
        recorder.record(op, label, wave, **payload)


def _outcome(
    algorithm: str,
    n: int,
    seed: int,
    recorder: TraceRecorder,
    status: OutcomeStatus,
    **fields: Any,
) -> FactorOutcome:
    return FactorOutcome(
        algorithm=algorithm,
        input_n=n,
        status=status,
        seed=seed,
        op_counts=recorder.op_counts,
        trace=tuple(recorder.events),
        **fields,
    )


# -- naive divisor search ---------------------------------------------------


def naive_wave(
    n: int,
    foundlist: Iterable[int] = (),
    recorder: Optional[TraceRecorder] = None,
    settings: Optional[Settings] = None,
) -> DualityState:
    settings = settings or Settings()
    oracle = divisibility_oracle(n)

    phi = init_uniform(naive_register(n))
    _record(recorder, "init", "naive:step1", phi)

    bundle = divide(phi, _two_paths(settings), settings)
    _record(recorder, "divide", "naive:step2", bundle)

    lower = apply_function(bundle[LOWER], oracle)
    _record(recorder, "apply_function", "naive:step3", lower, path="lower", oracle=oracle.name)

    marker = marked_unfound_oracle(set(foundlist))
    lower = apply_sign(lower, marker)
    _record(recorder, "apply_sign", "naive:step4", lower, path="lower", oracle=marker.name)

    # XOR is an involution: clear reg2 again so both paths share labels.
    lower = apply_function(lower, oracle)
    _record(recorder, "apply_function", "naive:step4", lower, path="lower", oracle=oracle.name, uncompute=True)

    combined = combine(bundle.replace_part(LOWER, lower), settings)
    _record(recorder, "combine", "naive:step5", combined)
    return combined


def _complete_from_divisors(n: int, divisors: Sequence[int], seed: int, settings: Settings) -> List[int]:
    if not divisors:
        return []
    factors: List[int] = []
    remaining = n
    for p in sorted(d for d in set(divisors) if arith.is_prime(d)):
        while remaining % p == 0:
            factors.append(p)
            remaining //= p
    if remaining > 1:
        if arith.is_prime(remaining):
            factors.append(remaining)
        else:
            factors.extend(naive_factorize(remaining, seed, settings).factors)
    return sorted(factors)


def naive_factorize(n: int, seed: int = 0, settings: Optional[Settings] = None) -> FactorOutcome:
    if n < 4:
        raise InputTooSmallError()
    settings = settings or Settings()
    rng = np.random.default_rng(seed)
    recorder = TraceRecorder()

    foundlist: List[int] = []
    first_support: Tuple[int, ...] = ()
    first_probability = 0.0
    passes = 0
    limit = naive_register(n).size + 1

    while passes < limit:
        combined = naive_wave(n, foundlist, recorder, settings)
        result = readout(combined, rng, settings)
        _record(
            recorder,
            "readout",
            "naive:step6",
            combined,
            outcome=list(result.label) if result.found else None,
            success_probability=result.success_probability,
        )
        if passes == 0:
            first_support = tuple(combined.reg1_values())
            first_probability = result.success_probability
        passes += 1
        logger.info("naive n=%d pass %d read %s", n, passes, result.label)

        if not result.found:
            break
        foundlist.append(result.label.reg1)

    factors = _complete_from_divisors(n, foundlist, seed, settings)
    status = OutcomeStatus.FACTORED if factors else OutcomeStatus.PRIME
    return _outcome(
        "naive",
        n,
        seed,
        recorder,
        status,
        factors=tuple(factors),
        foundlist=tuple(foundlist),
        success_probability=first_probability,
        passes=passes,
        wave_support=first_support,
        message="no divisor in range (prime)" if status is OutcomeStatus.PRIME else "",
    )


# -- Shor-style period finding ------------------------------------------------


def shor_wave(
    n: int,
    params: ShorParams,
    recorder: Optional[TraceRecorder] = None,
    settings: Optional[Settings] = None,
) -> DualityState:
    settings = settings or Settings()

    psi = init_uniform(shor_register(n, params.precision_q))
    _record(recorder, "init", "shor:step1", psi)

    oracle = modexp_oracle(params.base_a, n)
    psi = apply_function(psi, oracle)
    _record(recorder, "apply_function", "shor:step2", psi, oracle=oracle.name)

    bundle = divide(psi, _two_paths(settings), settings)
    _record(recorder, "divide", "shor:step3", bundle)

    marker = period_marker_oracle()
    lower = apply_sign(bundle[LOWER], marker)
    _record(recorder, "apply_sign", "shor:step3", lower, path="lower", oracle=marker.name)

    combined = combine(bundle.replace_part(LOWER, lower), settings)
    _record(recorder, "combine", "shor:step4", combined)
    return combined


def _prime_divisors(m: int) -> List[int]:
    primes = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            primes.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        primes.append(m)
    return primes


def refine_period(a: int, candidate: int, n: int) -> int:
    """Strip prime factors from a multiple of the order while a^(r/p) is still 1."""
    period = candidate
    for p in _prime_divisors(candidate):
        while period % p == 0 and arith.modexp(a, period // p, n) == 1:
            period //= p
    return period


def _shor_factors(a: int, period: int, n: int) -> Tuple[int, ...]:
    if period % 2:
        return ()
    half = arith.modexp(a, period // 2, n)
    if half == n - 1:
        return ()
    candidates = {arith.gcd(half - 1, n), arith.gcd(half + 1, n)}
    return tuple(sorted(f for f in candidates if 1 < f < n))


def dc_shor(
    n: int,
    params: Optional[ShorParams] = None,
    seed: int = 0,
    settings: Optional[Settings] = None,
) -> FactorOutcome:
    if n < 9:
        raise InputTooSmallError()
    if n % 2 == 0:
        raise InvalidParameterError("period finding requires odd input")
    settings = settings or Settings()
    params = params or ShorParams.for_input(n, settings=settings)
    params.validate(n)
    recorder = TraceRecorder()
    common = dict(base_a=params.base_a, precision_q=params.precision_q)

    shared = arith.gcd(params.base_a, n)
    if shared > 1:
        logger.info("shor n=%d base %d shares factor %d", n, params.base_a, shared)
        return _outcome(
            "shor",
            n,
            seed,
            recorder,
            OutcomeStatus.DEGENERATE,
            factors=tuple(sorted({shared, n // shared})),
            message=f"base shares factor {shared} with n",
            **common,
        )

    combined = shor_wave(n, params, recorder, settings)
    rng = np.random.default_rng(seed)

    running = 0
    unchanged = 0
    passes = 0
    stabilised = False
    while passes < params.max_samples:
        if passes:
            for op in SHOR_PIPELINE:
                recorder.charge(op)
        result = readout(combined, rng, settings)
        _record(
            recorder,
            "readout",
            "shor:step5",
            combined,
            outcome=list(result.label) if result.found else None,
            success_probability=result.success_probability,
        )
        passes += 1
        if not result.found:
            break

        updated = arith.gcd(running, result.label.reg1)
        unchanged = unchanged + 1 if updated == running else 0
        running = updated
        if unchanged >= params.stability_window:
            stabilised = True
            break

    wave_fields = dict(
        success_probability=min(combined.norm_sq, 1.0),
        passes=passes,
        wave_support=tuple(combined.reg1_values()),
        **common,
    )
    if running == 0:
        logger.warning("shor n=%d: combined wave is empty, q=%d too small", n, params.precision_q)
        return _outcome(
            "shor",
            n,
            seed,
            recorder,
            OutcomeStatus.NO_PERIOD,
            message="combined wave empty; precision q too small for the period",
            **wave_fields,
        )
    if not stabilised:
        logger.warning("shor n=%d: gcd still moving after %d samples", n, passes)

    period = refine_period(params.base_a, running, n)
    factors = _shor_factors(params.base_a, period, n)
    if factors:
        status, message = OutcomeStatus.FACTORED, ""
    else:
        status, message = OutcomeStatus.POST_PROCESSING_FAILED, "post-processing failed, retry with different base"
        logger.warning("shor n=%d base %d: period %d gives no factor", n, params.base_a, period)

    return _outcome(
        "shor",
        n,
        seed,
        recorder,
        status,
        factors=factors,
        period=period,
        sampled_gcd=running,
        message=message,
        **wave_fields,
    )


def dc_shor_factorize(
    n: int,
    params: Optional[ShorParams] = None,
    seed: int = 0,
    settings: Optional[Settings] = None,
) -> FactorOutcome:
    """Run dc_shor on bases 2, 3, ... until one yields factors."""
    settings = settings or Settings()
    params = params or ShorParams.for_input(n, settings=settings)
    outcome: Optional[FactorOutcome] = None
    base = 2
    for attempt in range(max(1, settings.shor_max_bases)):
        while base % n == 0:
            base += 1
        outcome = dc_shor(n, replace(params, base_a=base), seed, settings)
        if outcome.status.conclusive:
            break
        logger.info("shor n=%d: base %d inconclusive (%s)", n, base, outcome.status.value)
        base += 1
    assert outcome is not None
    return replace(outcome, message=f"{outcome.message} (tried {attempt + 1} base(s))".strip())


# -- Fermat representation search --------------------------------------------


def fermat_wave(
    n: int,
    recorder: Optional[TraceRecorder] = None,
    settings: Optional[Settings] = None,
) -> DualityState:
    settings = settings or Settings()

    phi = init_uniform(fermat_register(n))
    _record(recorder, "init", "fermat:step1", phi)

    bundle = divide(phi, _two_paths(settings), settings)
    _record(recorder, "divide", "fermat:step2", bundle)

    oracle = fermat_oracle(n)
    upper = apply_sign(bundle[UPPER], oracle)
    _record(recorder, "apply_sign", "fermat:step3", upper, path="upper", oracle=oracle.name)

    combined = combine(bundle.replace_part(UPPER, upper), settings)
    _record(recorder, "combine", "fermat:step4", combined)
    return combined


def _check_fermat_input(n: int) -> None:
    if n % 2 == 0:
        raise EvenInputError()
    if n < 9:
        raise InputTooSmallError()


def _split(n: int, x: int) -> Tuple[int, int]:
    y = arith.isqrt(x * x - n)
    p, q = x + y, x - y
    if p * q != n:
        raise DualityError(f"x={x} is not a Fermat representation of {n}")
    return p, q


def dc_fermat(n: int, seed: int = 0, settings: Optional[Settings] = None) -> FactorOutcome:
    _check_fermat_input(n)
    settings = settings or Settings()
    recorder = TraceRecorder()

    combined = fermat_wave(n, recorder, settings)
    result = readout(combined, np.random.default_rng(seed), settings)
    _record(
        recorder,
        "readout",
        "fermat:step4",
        combined,
        outcome=list(result.label) if result.found else None,
        success_probability=result.success_probability,
    )
    wave_fields = dict(
        success_probability=result.success_probability,
        passes=1,
        wave_support=tuple(combined.reg1_values()),
    )

    if not result.found:
        logger.info("fermat n=%d: no representation", n)
        return _outcome(
            "fermat",
            n,
            seed,
            recorder,
            OutcomeStatus.PRIME,
            message="no representation found (prime)",
            **wave_fields,
        )

    x = result.label.reg1
    p, q = _split(n, x)
    logger.info("fermat n=%d: X=%d gives %d * %d", n, x, p, q)
    return _outcome(
        "fermat",
        n,
        seed,
        recorder,
        OutcomeStatus.FACTORED,
        factors=tuple(sorted((p, q))),
        representation=(x, x - q),
        **wave_fields,
    )


def fermat_representations(
    n: int,
    shots: int = 64,
    seed: int = 0,
    settings: Optional[Settings] = None,
) -> List[Tuple[int, int]]:
    """Every (X, Y) with X² - Y² = n seen over ``shots`` readouts of one combined wave."""
    _check_fermat_input(n)
    counts = sample(fermat_wave(n, settings=settings), shots, seed, settings)
    return sorted((label.reg1, label.reg1 - _split(n, label.reg1)[1]) for label in counts)
