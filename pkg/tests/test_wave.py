import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualfactor.errors import (
    DividerError,
    EmptyRegisterError,
    IncompatibleWavesError,
    InvalidParameterError,
    OracleEvaluationError,
    OracleKindError,
    SignOracleError,
)
from dualfactor.wave import (
    BasisLabel,
    DualityState,
    OracleFn,
    RegisterSpec,
    SubWaveBundle,
    apply_function,
    apply_sign,
    combine,
    divide,
    init_uniform,
    modexp_oracle,
    norm_sq,
    period_marker_oracle,
    readout,
    sample,
    support,
)
from dualfactor.wave.state import MAX_REGISTER_SIZE

SPEC = RegisterSpec(reg1_min=0, reg1_max=50, reg2_max=3)


def assert_same_wave(actual: DualityState, expected: DualityState, tol: float = 1e-9) -> None:
    assert support(actual) == support(expected)
    for label, amp in expected.as_dict().items():
        assert abs(actual.amplitude(label) - amp) < tol


@st.composite
def sparse_states(draw, max_terms=60):
    labels = draw(
        st.sets(
            st.tuples(st.integers(SPEC.reg1_min, SPEC.reg1_max), st.integers(0, SPEC.reg2_max)),
            min_size=1,
            max_size=max_terms,
        )
    )
    parts = st.floats(-1.0, 1.0, allow_nan=False)
    amps = {}
    for label in labels:
        re, im = draw(parts), draw(parts)
        if abs(complex(re, im)) < 1e-3:
            re = 1e-3
        amps[label] = complex(re, im)
    scale = draw(st.floats(0.05, 1.0)) / math.sqrt(sum(abs(a) ** 2 for a in amps.values()))
    return DualityState.from_amplitudes(SPEC, {k: v * scale for k, v in amps.items()})


@st.composite
def divider_coefficients(draw):
    head = draw(
        st.lists(
            st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False),
            min_size=0,
            max_size=4,
        )
    )
    return head + [1 - sum(head)]


def test_init_uniform_small_range():
    phi = init_uniform(RegisterSpec(2, 5))
    assert phi.as_dict() == pytest.approx(
        {BasisLabel(2, 0): 0.5, BasisLabel(3, 0): 0.5, BasisLabel(4, 0): 0.5, BasisLabel(5, 0): 0.5}
    )
    assert norm_sq(phi) == pytest.approx(1.0, abs=1e-9)


def test_init_uniform_shor_register():
    phi = init_uniform(RegisterSpec(0, 511, reg2_max=20))
    assert len(phi) == 512
    assert np.allclose(phi.amps, 1 / math.sqrt(512))
    assert norm_sq(phi) == pytest.approx(1.0, abs=1e-9)


def test_init_uniform_single_value():
    phi = init_uniform(RegisterSpec(7, 7))
    assert phi.as_dict() == {BasisLabel(7, 0): pytest.approx(1.0)}


def test_empty_register_range():
    with pytest.raises(EmptyRegisterError, match="empty register range"):
        RegisterSpec(5, 4)


def test_register_size_ceiling():
    assert RegisterSpec(0, MAX_REGISTER_SIZE - 1).size == MAX_REGISTER_SIZE
    with pytest.raises(InvalidParameterError, match="more than"):
        RegisterSpec(0, MAX_REGISTER_SIZE)
    with pytest.raises(InvalidParameterError):
        RegisterSpec(3, 10**12)


def test_divide_halves():
    phi = init_uniform(RegisterSpec(2, 5))
    bundle = divide(phi, [0.5, 0.5])
    assert len(bundle) == 2
    for part in bundle.parts:
        assert np.allclose(part.amps, 0.25)
        assert norm_sq(part) == pytest.approx(0.25)


def test_divide_zero_state():
    bundle = divide(DualityState.zero(SPEC), [0.5, 0.5])
    assert [len(part) for part in bundle.parts] == [0, 0]


def test_divide_parts_do_not_alias():
    phi = init_uniform(RegisterSpec(2, 5))
    upper, lower = divide(phi).parts
    assert upper.amps is not lower.amps
    with pytest.raises(ValueError):
        upper.amps[0] = 1.0


@pytest.mark.parametrize("coefficients", [[0.6, 0.6], [], [1.0, 0.1]])
def test_divide_rejects_coefficients_not_summing_to_one(coefficients):
    with pytest.raises(DividerError, match="divider coefficients must sum to one"):
        divide(init_uniform(RegisterSpec(2, 5)), coefficients)


def test_apply_function_writes_modexp_into_second_register():
    spec = RegisterSpec(0, 511, reg2_max=20)
    oracle = modexp_oracle(2, 21)
    five = DualityState.from_amplitudes(spec, {(5, 0): 1.0})
    zero = DualityState.from_amplitudes(spec, {(0, 0): 1.0})
    assert support(apply_function(five, oracle)) == {BasisLabel(5, 11)}
    assert support(apply_function(zero, oracle)) == {BasisLabel(0, 1)}


@given(sparse_states())
@settings(max_examples=100, deadline=None)
def test_apply_function_zero_body_is_identity(state):
    assert_same_wave(apply_function(state, OracleFn.function(lambda i: 0)), state)


@given(sparse_states())
@settings(max_examples=100, deadline=None)
def test_apply_function_is_an_involution_and_keeps_norm(state):
    oracle = OracleFn.function(lambda i: (i * 7 + 1) % 4)
    once = apply_function(state, oracle)
    assert norm_sq(once) == pytest.approx(norm_sq(state), abs=1e-12)
    assert_same_wave(apply_function(once, oracle), state)


def test_apply_function_wraps_body_failures():
    def body(i):
        raise ZeroDivisionError("boom")

    state = DualityState.from_amplitudes(SPEC, {(9, 0): 1.0})
    with pytest.raises(OracleEvaluationError, match="oracle evaluation failed at basis value 9"):
        apply_function(state, OracleFn.function(body))


@pytest.mark.parametrize("value", [2.7, 1.0, True])
def test_apply_function_rejects_non_integer_results(value):
    state = DualityState.from_amplitudes(SPEC, {(1, 0): 1.0})
    with pytest.raises(InvalidParameterError, match="non-integer"):
        apply_function(state, OracleFn.function(lambda i: value))


def test_apply_function_rejects_out_of_range_results():
    state = DualityState.from_amplitudes(SPEC, {(1, 0): 1.0})
    with pytest.raises(InvalidParameterError, match="outside the second register"):
        apply_function(state, OracleFn.function(lambda i: SPEC.reg2_max + 1))


def test_apply_function_batch_form_matches_scalar_form():
    phi = init_uniform(RegisterSpec(0, 2047, reg2_max=76))
    batched = modexp_oracle(5, 77)
    scalar_only = OracleFn.function(batched.body)
    assert batched.batch is not None
    assert_same_wave(apply_function(phi, batched), apply_function(phi, scalar_only))


def test_apply_function_batch_form_must_return_integers():
    oracle = OracleFn.function(lambda i: 0, batch=lambda xs: xs * 0.5)
    with pytest.raises(InvalidParameterError, match="batch form"):
        apply_function(init_uniform(RegisterSpec(2, 5, reg2_max=3)), oracle)


def test_apply_function_rejects_sign_oracle():
    with pytest.raises(OracleKindError):
        apply_function(init_uniform(RegisterSpec(2, 5)), period_marker_oracle())


def test_apply_sign_period_marker():
    spec = RegisterSpec(0, 511, reg2_max=20)
    state = DualityState.from_amplitudes(spec, {(6, 1): 0.5, (0, 1): 0.5})
    flipped = apply_sign(state, period_marker_oracle())
    assert flipped.amplitude((6, 1)) == pytest.approx(0.5)
    assert flipped.amplitude((0, 1)) == pytest.approx(-0.5)


@given(sparse_states())
@settings(max_examples=100, deadline=None)
def test_apply_sign_all_ones_is_identity(state):
    assert_same_wave(apply_sign(state, OracleFn.sign(lambda i, r: 1)), state)


@given(sparse_states())
@settings(max_examples=100, deadline=None)
def test_apply_sign_keeps_norm(state):
    flipped = apply_sign(state, OracleFn.sign(lambda i, r: -1 if (i + r) % 3 else 1))
    assert norm_sq(flipped) == pytest.approx(norm_sq(state), abs=1e-12)


def test_apply_sign_rejects_values_other_than_plus_minus_one():
    with pytest.raises(SignOracleError, match="sign oracle must return ±1"):
        apply_sign(init_uniform(RegisterSpec(2, 5)), OracleFn.sign(lambda i, r: 2))


@pytest.mark.parametrize(
    "body",
    [
        lambda i, r: 1.5 if i == 3 else -1.2,
        lambda i, r: 1.0,
        lambda i, r: -1 if i == 4 else 0.999,
        lambda i, r: True,
    ],
)
def test_apply_sign_rejects_non_integer_signs(body):
    with pytest.raises(SignOracleError):
        apply_sign(init_uniform(RegisterSpec(2, 5)), OracleFn.sign(body))


def test_apply_sign_batch_form_is_checked():
    oracle = OracleFn.sign(lambda i, r: 1, batch=lambda reg1, reg2: np.where(reg1 == 3, 2, -1))
    with pytest.raises(SignOracleError):
        apply_sign(init_uniform(RegisterSpec(2, 5)), oracle)


def test_apply_sign_batch_form_matches_scalar_form():
    spec = RegisterSpec(0, 63, reg2_max=3)
    state = DualityState.from_amplitudes(spec, {(i, i % 4): 0.125 for i in range(64)})
    batched = period_marker_oracle()
    assert_same_wave(apply_sign(state, batched), apply_sign(state, OracleFn.sign(batched.body)))


def test_apply_sign_rejects_function_oracle():
    with pytest.raises(OracleKindError):
        apply_sign(init_uniform(RegisterSpec(2, 5)), modexp_oracle(2, 21))


def test_combine_restores_divided_wave():
    phi = init_uniform(RegisterSpec(2, 5))
    assert_same_wave(combine(divide(phi)), phi)


def test_combine_cancels_opposite_parts():
    phi = init_uniform(RegisterSpec(2, 5))
    bundle = SubWaveBundle.of([phi.scaled(0.5), phi.scaled(-0.5)], [0.5, -0.5])
    combined = combine(bundle)
    assert len(combined) == 0
    assert norm_sq(combined) == 0.0


def test_combine_rejects_mismatched_registers():
    bundle = SubWaveBundle.of([init_uniform(RegisterSpec(2, 5)), init_uniform(RegisterSpec(2, 6))], [0.5, 0.5])
    with pytest.raises(IncompatibleWavesError, match="incompatible sub-waves"):
        combine(bundle)


@given(sparse_states(), divider_coefficients())
@settings(max_examples=1000, deadline=None)
def test_combine_after_divide_is_identity(state, coefficients):
    assert_same_wave(combine(divide(state, coefficients)), state)


@given(sparse_states(max_terms=120), st.data())
@settings(max_examples=1000, deadline=None)
def test_two_path_sign_pattern_keeps_marked_and_cancels_the_rest(state, data):
    marked = data.draw(st.sets(st.sampled_from(sorted(support(state)))))
    oracle = OracleFn.sign(lambda i, r: 1 if (i, r) in marked else -1)

    upper, lower = divide(state, [0.5, 0.5]).parts
    combined = combine(SubWaveBundle.of([upper, apply_sign(lower, oracle)], [0.5, 0.5]))

    assert support(combined) == marked
    for label in marked:
        assert abs(combined.amplitude(label) - state.amplitude(label)) < 1e-9


def test_readout_of_zero_state():
    result = readout(DualityState.zero(SPEC), seed=0)
    assert result.label is None
    assert result.success_probability == 0.0


def test_readout_of_single_term():
    state = DualityState.from_amplitudes(SPEC, {(3, 0): 0.4})
    result = readout(state, seed=11)
    assert result.label == BasisLabel(3, 0)
    assert result.success_probability == pytest.approx(0.16)


@given(sparse_states(), st.integers(0, 2**32))
@settings(max_examples=100, deadline=None)
def test_readout_is_deterministic_per_seed(state, seed):
    first, second = readout(state, seed), readout(state, seed)
    assert first == second
    assert first.label in support(state)


def test_norm_and_support():
    assert norm_sq(DualityState.zero(SPEC)) == 0.0
    assert support(DualityState.zero(SPEC)) == frozenset()
    phi = init_uniform(RegisterSpec(0, 511, reg2_max=20))
    assert norm_sq(phi) == pytest.approx(1.0)
    assert len(support(phi)) == 512


def test_sample_matches_renormalised_distribution():
    weights = [1, 2, 3, 4, 5, 6, 7, 8]
    amps = {(i, i % 2): math.sqrt(w / 72) * 0.8 for i, w in enumerate(weights)}
    state = DualityState.from_amplitudes(SPEC, amps)
    shots = 10**5

    counts = sample(state, shots, seed=2024)

    assert sum(counts.values()) == shots
    for i, w in enumerate(weights):
        p = w / sum(weights)
        sigma = math.sqrt(shots * p * (1 - p))
        assert abs(counts.get(BasisLabel(i, i % 2), 0) - shots * p) <= 3 * sigma


def test_sample_of_zero_state_is_empty():
    assert sample(DualityState.zero(SPEC), 10, seed=0) == {}


def test_readout_matches_renormalised_distribution():
    weights = [1, 2, 3, 4, 5, 6, 7, 8]
    amps = {(i, 0): math.sqrt(w / 36) * 0.5 for i, w in enumerate(weights)}
    state = DualityState.from_amplitudes(SPEC, amps)
    rng = np.random.default_rng(99)
    shots = 10**5

    counts = Counter(readout(state, rng).label.reg1 for _ in range(shots))

    assert sum(counts.values()) == shots
    for i, w in enumerate(weights):
        p = w / sum(weights)
        sigma = math.sqrt(shots * p * (1 - p))
        assert abs(counts[i] - shots * p) <= 3 * sigma


def test_readout_advances_a_shared_generator():
    state = init_uniform(RegisterSpec(0, 511))
    rng = np.random.default_rng(5)
    labels = {readout(state, rng).label for _ in range(50)}
    assert len(labels) > 1
    assert readout(state, 5) == readout(state, 5)
