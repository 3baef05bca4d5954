import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import gamma as gamma_function
from scipy.stats import nbinom, poisson

from fockledger.errors import InvalidDistribution, InvalidParams
from fockledger.fock import FockState, PhotonDistribution
from fockledger.genfun import GenFun
from fockledger.statistics import (
    HYPER_POISSONIAN,
    POISSONIAN,
    SUB_POISSONIAN,
    SUPER_CHAOTIC,
    SUPER_POISSONIAN,
    check_hyper,
    classify,
    factorial_moment,
    negbin_plus_excess,
    predictions,
    stats,
    tilde_excess_gamma,
    two_fock_analysis,
)

weights = st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=2, max_size=15)


def negbin_distribution(xi, mu, size=400):
    return PhotonDistribution(nbinom.pmf(np.arange(size), mu, 1.0 - xi))


def test_fock_statistics():
    report = stats(PhotonDistribution([0.0, 0.0, 0.0, 1.0]))

    assert report.mean == 3.0
    assert report.variance == 0.0
    assert report.mandel_q == -1.0
    assert report.g2 == pytest.approx(2.0 / 3.0)
    assert report.klass == SUB_POISSONIAN
    assert report.factorial_moments == [3.0, 6.0, 6.0, 0.0]


def test_vacuum_is_unclassified():
    report = stats(PhotonDistribution([1.0]))

    assert report.mean == 0.0
    assert report.mandel_q is None
    assert report.g2 is None
    assert report.klass is None


def test_poisson_statistics():
    report = stats(PhotonDistribution(poisson.pmf(np.arange(80), 4.0)))

    assert report.mean == pytest.approx(4.0, abs=1e-12)
    assert report.mandel_q == pytest.approx(0.0, abs=1e-9)
    assert report.g2 == pytest.approx(1.0, abs=1e-9)
    assert report.klass == POISSONIAN


def test_classify_tiers():
    assert classify(1.0, 4.0) == HYPER_POISSONIAN
    assert classify(1.0, 2.0) == SUPER_CHAOTIC
    assert classify(1.0, 0.5) == SUPER_POISSONIAN
    assert classify(1.0, -0.5) == SUB_POISSONIAN
    assert classify(1.0, 1e-12) == POISSONIAN
    assert classify(0.0, None) is None
    # On a tier boundary the weaker tier is reported
    assert classify(1.0, 3.0) == SUPER_CHAOTIC


def test_negbin_factorial_moments():
    xi, mu = 0.5, 2.0
    dist = negbin_distribution(xi, mu)
    q = xi / (1.0 - xi)

    for r in range(1, 5):
        expected = gamma_function(mu + r) / gamma_function(mu) * q ** r
        assert factorial_moment(dist, r) == pytest.approx(expected, rel=1e-10)

    with pytest.raises(InvalidParams):
        factorial_moment(dist, 0)


def test_negbin_predictions():
    xi, mu = 0.5, 2.0
    expected = predictions(negbin_distribution(xi, mu))

    assert expected.n_minus == pytest.approx(3.0, rel=1e-10)
    assert expected.n_plus == pytest.approx(2.0 + negbin_plus_excess(xi, mu), rel=1e-10)
    assert expected.q_minus == pytest.approx(1.0, rel=1e-10)
    assert expected.n_tilde_plus == pytest.approx(3.0, rel=1e-10)
    assert expected.n_tilde_minus == pytest.approx(2.0 / (1.0 - 0.25) - 1.0, rel=1e-10)


def test_predictions_of_vacuum():
    expected = predictions(PhotonDistribution([1.0]))

    assert expected.n_minus is None
    assert expected.q_minus is None
    assert expected.n_tilde_minus is None
    assert expected.n_plus == 1.0


def test_check_hyper():
    check = check_hyper(negbin_distribution(0.8, 0.25, size=600))
    assert check.holds
    assert check.direct
    assert check.bound == pytest.approx(3.0, rel=1e-9)

    check = check_hyper(PhotonDistribution(poisson.pmf(np.arange(60), 2.0)))
    assert not check.holds
    assert not check.direct

    with pytest.raises(InvalidParams):
        check_hyper(PhotonDistribution([1.0]))


def test_two_fock_analysis():
    analysis = two_fock_analysis(10, 1, 0.5)

    assert analysis.nbar == pytest.approx(5.5)
    assert analysis.n_minus == pytest.approx(45.0 / 5.5)
    assert analysis.q == pytest.approx(45.0 / 5.5 - 5.5)
    assert analysis.condition_holds
    assert analysis.q_minus_limit == pytest.approx(0.0)
    assert analysis.weight_reduction == pytest.approx(10.0)
    assert two_fock_analysis(10, 0, 0.5).weight_reduction is None
    # With n - m small the subtraction lowers the mean
    assert not two_fock_analysis(2, 1, 0.5).condition_holds


@pytest.mark.parametrize("n, m, r", [(3, 3, 0.5), (2, 5, 0.5), (4, 1, 1.0), (4, 1, 0.0)])
def test_two_fock_domain(n, m, r):
    with pytest.raises(InvalidParams):
        two_fock_analysis(n, m, r)


def test_tilde_excess_gamma_at_poisson():
    nbar = 2.0
    p0 = math.exp(-nbar)
    direct = (1.0 - p0) * (nbar / (1.0 - p0) - 1.0 - nbar)

    assert tilde_excess_gamma(nbar, 1.0) == pytest.approx(direct, rel=1e-12)


def test_unrecognized_input():
    with pytest.raises(InvalidDistribution):
        stats("not a distribution")


@pytest.mark.parametrize(
    "dist",
    [
        np.array([0.2, 0.2, -0.5]),
        [0.5, 0.25],
        FockState([0.0, 2.0]),
        GenFun([1.5, -0.5]),
    ],
)
def test_invalid_input_is_rejected(dist):
    with pytest.raises(InvalidDistribution):
        stats(dist)
    with pytest.raises(InvalidDistribution):
        predictions(dist)
    with pytest.raises(InvalidDistribution):
        check_hyper(dist)


def test_raw_probabilities_are_validated():
    report = stats(np.array([0.25, 0.5, 0.25]))

    assert report.mean == pytest.approx(1.0)
    assert report.mandel_q == pytest.approx(-0.5)
    assert stats(FockState([0.0, 1.0])).mean == 1.0


@settings(max_examples=100, deadline=None)
@given(weights)
def test_moment_identities(values):
    probs = np.array(values)
    if probs[1:].sum() < 1e-3:
        probs[-1] = 1.0
    report = stats(PhotonDistribution(probs / probs.sum()))
    n1, n2 = report.factorial_moments[:2]

    assert report.variance == pytest.approx(n2 + n1 - n1 ** 2, abs=1e-10)
    assert report.mandel_q == pytest.approx(report.variance / report.mean - 1.0, abs=1e-10)
    assert report.g2 == pytest.approx(1.0 + report.mandel_q / report.mean, abs=1e-8)
