"""Fock states and two-Fock superpositions sqrt(r)|n> + sqrt(1-r)|m>."""
import numpy as np

from fockledger.families.base import Family, require
from fockledger.fock import FockState, ensure_cutoff
from fockledger.statistics import two_fock_analysis


def build_fock(policy, n):
    require(n >= 0, f"fock needs n >= 0, got n={n}")
    amplitudes = np.zeros(n + 1, dtype=complex)
    amplitudes[n] = 1.0
    return ensure_cutoff(FockState(amplitudes, policy.tail_tol), policy)


def build_twofock(policy, n, m, r):
    two_fock_analysis(n, m, r)
    amplitudes = np.zeros(n + 1, dtype=complex)
    amplitudes[n] = np.sqrt(r)
    amplitudes[m] = np.sqrt(1.0 - r)
    return ensure_cutoff(FockState(amplitudes, policy.tail_tol), policy)


def twofock_relations(n, m, r):
    analysis = two_fock_analysis(n, m, r)
    nbar = analysis.nbar
    variance = (analysis.q + 1.0) * nbar
    relations = analysis.to_dict()
    relations["n_plus"] = nbar + 1.0 + variance / (1.0 + nbar)
    return relations


def sample_fock(rng):
    return {"n": int(rng.integers(1, 21))}


def sample_twofock(rng):
    n = int(rng.integers(1, 31))
    return {
        "n": n,
        "m": int(rng.integers(0, n)),
        "r": float(rng.uniform(0.05, 0.95)),
    }


FOCK = Family("fock", ("n",), build_fock, sample_fock, integer_params=("n",))
TWOFOCK = Family(
    "twofock",
    ("n", "m", "r"),
    build_twofock,
    sample_twofock,
    relations=twofock_relations,
    integer_params=("n", "m"),
)
