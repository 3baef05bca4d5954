import logging
import os

import pytest
import yaml

import fockledger
from fockledger.fock import CutoffPolicy
from fockledger.meta import MAX_CUTOFF_ENV, Meta, init_config
from fockledger.utils.utils import claim_rng, merge, str2dict


def test_default_config():
    config = Meta.get_config()

    assert config["meta_config"]["seed"] == 0
    assert config["fock_config"]["tail_tol"] == 1e-12
    assert config["fock_config"]["max_cutoff"] == 4096
    assert config["statistics_config"]["poissonian_band"] == 1e-9
    assert config["verify_config"]["draws"] == 100
    assert config["verify_config"]["identity_tol"] == 1e-9
    assert config["verify_config"]["limit_tol"] == 1e-2
    # Loading the config alone never creates a run directory
    assert Meta.log_path is None


def test_init_creates_log_dir_and_merges_config(tmp_path):
    fockledger.init(
        log_dir=str(tmp_path),
        level=logging.WARNING,
        config={"fock_config": {"tail_tol": 1e-10}, "meta_config": {"seed": 7}},
    )

    assert os.path.isdir(Meta.log_path)
    assert Meta.log_path.startswith(str(tmp_path))
    assert Meta.config["fock_config"]["tail_tol"] == 1e-10
    # Untouched siblings survive the merge
    assert Meta.config["fock_config"]["max_cutoff"] == 4096
    assert Meta.config["meta_config"]["seed"] == 7


def test_update_config_searches_parent_directories(tmp_path):
    with open(tmp_path / "fockledger-config.yaml", "w") as f:
        yaml.dump({"verify_config": {"draws": 12}}, f)
    nested = tmp_path / "a" / "b"
    nested.mkdir(parents=True)

    Meta.update_config(path=str(nested))

    assert Meta.config["verify_config"]["draws"] == 12
    assert Meta.config["verify_config"]["workers"] == 1


def test_config_layers(tmp_path, monkeypatch):
    with open(tmp_path / "fockledger-config.yaml", "w") as f:
        yaml.dump(
            {
                "meta_config": {"log_path": str(tmp_path / "runs")},
                "fock_config": {"tail_tol": 1e-8, "max_cutoff": 512},
                "verify_config": {"draws": 12},
            },
            f,
        )
    monkeypatch.setenv(MAX_CUTOFF_ENV, "256")

    fockledger.init(
        level=logging.WARNING,
        config={"fock_config": {"tail_tol": 1e-10}},
        config_dir=str(tmp_path),
    )

    assert Meta.config["fock_config"]["tail_tol"] == 1e-10
    assert Meta.config["verify_config"]["draws"] == 12
    assert Meta.config["fock_config"]["max_cutoff"] == 256
    assert Meta.log_path.startswith(str(tmp_path / "runs"))


def test_logging_is_initialized_once(tmp_path):
    fockledger.init(log_dir=str(tmp_path / "first"), level=logging.WARNING)
    first = Meta.log_path
    fockledger.init_logging(str(tmp_path / "second"))

    assert Meta.log_path == first


def test_max_cutoff_env(monkeypatch):
    monkeypatch.setenv(MAX_CUTOFF_ENV, "64")
    init_config()

    assert Meta.config["fock_config"]["max_cutoff"] == 64
    assert CutoffPolicy.from_config().max_cutoff == 64


def test_max_cutoff_env_must_be_integer(monkeypatch):
    monkeypatch.setenv(MAX_CUTOFF_ENV, "many")
    with pytest.raises(ValueError, match=MAX_CUTOFF_ENV):
        init_config()


def test_merge():
    x = {"a": {"b": 1, "c": 2}, "d": 3}
    y = {"a": {"c": 5}, "e": 6}

    assert merge(x, y) == {"a": {"b": 1, "c": 5}, "d": 3, "e": 6}


def test_str2dict():
    assert str2dict("xi=0.5, mu=2") == {"xi": "0.5", "mu": "2"}
    assert str2dict("") == {}
    with pytest.raises(ValueError):
        str2dict("xi")


def test_claim_rng_depends_on_seed_and_claim_only():
    a = claim_rng(0, "excess.identity").uniform(size=3)
    b = claim_rng(0, "excess.identity").uniform(size=3)
    c = claim_rng(0, "added.mean").uniform(size=3)
    d = claim_rng(1, "excess.identity").uniform(size=3)

    assert list(a) == list(b)
    assert list(a) != list(c)
    assert list(a) != list(d)
