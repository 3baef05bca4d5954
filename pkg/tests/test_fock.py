import csv
import logging

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.stats import poisson

from fockledger.errors import CutoffOverflow, InvalidDistribution, InvalidParams, ZeroState
from fockledger.fock import (
    AmplitudeSource,
    CutoffPolicy,
    FockState,
    PhotonDistribution,
    ProbabilitySource,
    distribution_of,
    dump_distribution,
    dump_state,
    ensure_cutoff,
    fidelity,
    inner_product,
    load_distribution,
    mean_photon_number,
    normalize,
    state_from_distribution,
)


def poisson_source(mean):
    return ProbabilitySource(lambda n: poisson.pmf(n, mean), normalized=True, name="poisson")


def test_policy_from_config():
    policy = CutoffPolicy.from_config()

    assert policy.tail_tol == 1e-12
    assert policy.max_cutoff == 4096
    assert policy.initial_cutoff == 32
    assert policy.moment_order == 4

    policy = CutoffPolicy.from_config(tail_tol=1e-6, max_cutoff=None)
    assert policy.tail_tol == 1e-6
    assert policy.max_cutoff == 4096


def test_policy_rejects_bad_values():
    with pytest.raises(InvalidParams):
        CutoffPolicy(tail_tol=0.0)
    with pytest.raises(InvalidParams):
        CutoffPolicy(initial_cutoff=0)


def test_distribution_validation():
    with pytest.raises(InvalidDistribution):
        PhotonDistribution([0.5, -0.1, 0.6])
    with pytest.raises(InvalidDistribution):
        PhotonDistribution([0.5, 0.4])
    with pytest.raises(InvalidDistribution):
        PhotonDistribution([])

    # Rounding negatives are clamped
    dist = PhotonDistribution([1.0, -1e-14])
    assert dist.probs[1] == 0.0


def test_clamping_is_logged(caplog):
    with caplog.at_level(logging.WARNING, logger="fockledger.fock"):
        PhotonDistribution([1.0, -1e-14])

    assert [record.levelno for record in caplog.records] == [logging.WARNING]
    assert "Clamping 1 rounding negatives" in caplog.text


def test_distribution_is_read_only():
    dist = PhotonDistribution([0.25, 0.75])
    with pytest.raises(ValueError):
        dist.probs[0] = 1.0


def test_cutoff_search_is_minimal():
    policy = CutoffPolicy(tail_tol=1e-12)
    dist = ensure_cutoff(poisson_source(3.0), policy)

    assert 1.0 - np.sum(dist.probs) <= 1e-12 + 1e-15
    assert 1.0 - np.sum(dist.probs[:-1]) > 1e-12 - 1e-15
    assert_allclose(dist.probs, poisson.pmf(np.arange(dist.cutoff + 1), 3.0), rtol=1e-14)


def test_cutoff_grows_with_moment_order():
    plain = ensure_cutoff(poisson_source(10.0), CutoffPolicy(moment_order=0))
    weighted = ensure_cutoff(poisson_source(10.0), CutoffPolicy(moment_order=4))

    assert weighted.cutoff >= plain.cutoff


def test_cutoff_overflow():
    with pytest.raises(CutoffOverflow):
        ensure_cutoff(poisson_source(50.0), CutoffPolicy(max_cutoff=16, initial_cutoff=8))


def test_materialized_state_is_capped():
    policy = CutoffPolicy(max_cutoff=2)
    small_tail = FockState(np.sqrt([0.5, 0.5 - 1e-14, 0.0, 1e-14]))
    capped = ensure_cutoff(small_tail, policy)
    assert capped.cutoff == 2

    big_tail = FockState(np.sqrt([0.5, 0.25, 0.0, 0.25]))
    with pytest.raises(CutoffOverflow):
        ensure_cutoff(big_tail, policy)


def test_amplitude_source():
    z = 0.5
    source = AmplitudeSource(
        lambda n: np.sqrt(1.0 - z ** 2) * z ** np.asarray(n, dtype=float), normalized=True
    )
    state = ensure_cutoff(source, CutoffPolicy(moment_order=0))

    assert 1.0 - state.norm_sq() <= 1e-12
    assert mean_photon_number(state) == pytest.approx(1.0 / 3.0, abs=1e-10)


def test_normalize():
    state = normalize(FockState([3.0, 4.0j]))

    assert state.norm_sq() == pytest.approx(1.0)
    assert state.amplitudes[1] == pytest.approx(0.8j)
    with pytest.raises(ZeroState):
        normalize(FockState([0.0, 0.0]))


def test_inner_product_and_fidelity():
    a = FockState([1.0, 0.0])
    b = FockState([0.0, 0.0, 1.0])
    c = FockState(np.array([1.0, 1.0j]) / np.sqrt(2.0))

    assert inner_product(a, b) == 0
    assert fidelity(a, a) == pytest.approx(1.0)
    assert fidelity(a, c) == pytest.approx(0.5)
    assert inner_product(c, a) == pytest.approx(1.0 / np.sqrt(2.0))


def test_state_from_distribution():
    state = state_from_distribution([0.25, 0.75], phases=[0.0, np.pi / 2])

    assert_allclose(state.amplitudes, [0.5, 1j * np.sqrt(0.75)], atol=1e-15)
    assert_allclose(distribution_of(state).probs, [0.25, 0.75])
    with pytest.raises(InvalidDistribution):
        state_from_distribution([0.5, 0.6])


def test_dump_and_load_distribution(tmp_path):
    path = str(tmp_path / "dist.csv")
    dist = PhotonDistribution([1.0 / 3.0, 2.0 / 3.0])
    dump_distribution(dist, path)

    with open(path) as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["n", "p_n"]
    assert rows[1] == ["0", "0.33333333333333331"]

    loaded = load_distribution(path)
    assert_allclose(loaded.probs, dist.probs, rtol=0, atol=0)


@pytest.mark.parametrize(
    "text",
    [
        "n,p_n\n0,0.5\n2,0.5\n",
        "n,p_n\n1,0.5\n0,0.5\n",
        "n,p_n\n0,half\n",
        "k,p\n0,1\n",
        "n,p_n\n",
    ],
)
def test_load_malformed_distribution(tmp_path, text):
    path = tmp_path / "bad.csv"
    path.write_text(text)

    with pytest.raises(InvalidDistribution):
        load_distribution(str(path))


def test_dump_state(tmp_path):
    path = str(tmp_path / "state.csv")
    dump_state(FockState([0.6, 0.8j]), path)

    with open(path) as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["n", "re_c", "im_c"]
    assert [float(x) for x in rows[2]] == [1.0, 0.0, 0.8]
