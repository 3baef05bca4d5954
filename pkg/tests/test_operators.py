import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from fockledger.errors import InvalidParams, ZeroState
from fockledger.families import build
from fockledger.fock import FockState, fidelity, mean_photon_number, normalize
from fockledger.operators import (
    ANNIHILATE,
    OPERATORS,
    SHORT_NAMES,
    WEIGHTED_ANNIHILATE,
    OperatorKind,
    added,
    apply,
    apply_chain,
    exp_phase,
    iterate,
    raw_apply,
    subtracted,
    weighted_annihilate,
)
from fockledger.statistics import predictions, stats

amplitude_lists = st.lists(
    st.floats(min_value=-1.0, max_value=1.0, allow_nan=False), min_size=2, max_size=12
)


def random_state(values):
    amplitudes = np.array(values, dtype=complex)
    if np.max(np.abs(amplitudes[1:])) < 1e-3:
        amplitudes[-1] = 0.5
    return normalize(FockState(amplitudes))


def fock(n):
    amplitudes = np.zeros(n + 1)
    amplitudes[n] = 1.0
    return FockState(amplitudes)


def test_fock_ladder():
    state, norm_sq = subtracted(fock(3), return_norm=True)
    assert norm_sq == pytest.approx(3.0)
    assert fidelity(state, fock(2)) == pytest.approx(1.0)

    state, norm_sq = added(fock(3), return_norm=True)
    assert norm_sq == pytest.approx(4.0)
    assert fidelity(state, fock(4)) == pytest.approx(1.0)


def test_vacuum_is_annihilated():
    with pytest.raises(ZeroState):
        subtracted(fock(0))
    with pytest.raises(ZeroState):
        exp_phase(fock(0), "down")


def test_exp_phase_down_near_vacuum_is_singular():
    state = normalize(FockState([1.0, 1e-8]))
    with pytest.raises(ZeroState):
        exp_phase(state, "down")


def test_raw_norms_are_denominators():
    state = build("negbin:xi=0.5,mu=2")
    report = stats(state)
    p0 = state.probabilities[0]

    assert np.sum(np.abs(raw_apply(state, "sub")) ** 2) == pytest.approx(report.mean)
    assert np.sum(np.abs(raw_apply(state, "add")) ** 2) == pytest.approx(1.0 + report.mean)
    assert np.sum(np.abs(raw_apply(state, "eminus")) ** 2) == pytest.approx(1.0 - p0)
    assert np.sum(np.abs(raw_apply(state, "eplus")) ** 2) == pytest.approx(state.norm_sq())


def test_coherent_is_eigenstate_of_annihilation():
    state = build("coherent:alpha=1.5")
    result, norm_sq = subtracted(state, return_norm=True)

    assert norm_sq == pytest.approx(2.25, abs=1e-10)
    assert fidelity(result, state) == pytest.approx(1.0, abs=1e-10)


def test_chain_reports_failing_step():
    with pytest.raises(ZeroState) as e:
        apply_chain(fock(1), ["sub", "sub"])
    assert e.value.step == 2


def test_iterated_subtraction_of_negbin():
    steps = iterate(build("negbin:xi=0.5,mu=2"), "sub", 2)

    assert [report.mean for _, report in steps] == pytest.approx([3.0, 4.0], abs=1e-8)
    assert [report.mandel_q for _, report in steps] == pytest.approx([1.0, 1.0], abs=1e-8)


def test_iterate_needs_positive_k():
    with pytest.raises(InvalidParams):
        iterate(fock(2), "sub", 0)


def test_weighted_annihilation_of_two_fock():
    state = build("twofock:n=4,m=0,r=0.5")
    result = weighted_annihilate(state, lambda k: 1.0 / (k + 1.0))

    assert fidelity(result, fock(3)) == pytest.approx(1.0, abs=1e-14)


def test_operator_kinds():
    assert set(SHORT_NAMES.values()) == set(OPERATORS)
    assert OperatorKind(ANNIHILATE) == OperatorKind(ANNIHILATE)
    with pytest.raises(InvalidParams):
        OperatorKind("squeeze")
    with pytest.raises(InvalidParams):
        OperatorKind(WEIGHTED_ANNIHILATE)
    with pytest.raises(InvalidParams):
        apply(fock(2), "teleport")


@pytest.mark.parametrize(
    "spec",
    [
        "negbin:xi=0.5,mu=2",
        "cohvac:alpha=3,eta=0.1",
        "twofock:n=10,m=1,r=0.5",
        "phase:z=0.6",
        "binomial:p=0.3,M=10",
    ],
)
def test_weighted_annihilation_special_cases(spec):
    state = build(spec)

    assert_array_equal(
        weighted_annihilate(state, lambda k: 1.0).amplitudes, subtracted(state).amplitudes
    )
    assert_allclose(
        weighted_annihilate(state, lambda k: 1.0 / math.sqrt(k + 1)).amplitudes,
        exp_phase(state, "down").amplitudes,
        atol=1e-14,
    )


def test_weight_function_must_be_finite():
    with pytest.raises(InvalidParams):
        weighted_annihilate(fock(3), lambda k: math.inf if k == 1 else 1.0)


@settings(max_examples=50, deadline=None)
@given(amplitude_lists)
def test_photon_excess_is_mandel_q(values):
    state = random_state(values)
    report = stats(state)

    assert mean_photon_number(subtracted(state)) - report.mean == pytest.approx(
        report.mandel_q, abs=1e-9
    )


@settings(max_examples=50, deadline=None)
@given(amplitude_lists)
def test_added_mean(values):
    state = random_state(values)
    report = stats(state)
    n_plus = mean_photon_number(added(state))

    assert n_plus == pytest.approx(
        report.mean + 1.0 + report.variance / (1.0 + report.mean), abs=1e-9
    )
    assert n_plus - report.mean >= 1.0 - 1e-10


@settings(max_examples=50, deadline=None)
@given(amplitude_lists)
def test_exp_phase_means(values):
    state = random_state(values)
    expected = predictions(state)

    assert mean_photon_number(exp_phase(state, "up")) == pytest.approx(
        expected.n_tilde_plus, abs=1e-10
    )
    if expected.n_tilde_minus is not None:
        assert mean_photon_number(exp_phase(state, "down")) == pytest.approx(
            expected.n_tilde_minus, abs=1e-9
        )


@settings(max_examples=30, deadline=None)
@given(amplitude_lists)
def test_exp_phase_inverse(values):
    state = random_state(values)
    round_trip = exp_phase(exp_phase(state, "up"), "down")

    assert_allclose(round_trip.amplitudes, state.amplitudes, atol=1e-12)
