"""Negative binomial and binomial states with nonnegative real amplitudes."""
import numpy as np
from scipy.stats import binom, nbinom

from fockledger.families.base import Family, require
from fockledger.fock import AmplitudeSource, FockState, ensure_cutoff
from fockledger.statistics import negbin_plus_excess


def build_negbin(policy, xi, mu):
    require(0 <= xi < 1, f"negbin needs 0 <= xi < 1, got xi={xi}")
    require(mu > 0, f"negbin needs mu > 0, got mu={mu}")

    def fn(n):
        return np.sqrt(nbinom.pmf(n, mu, 1.0 - xi))

    return ensure_cutoff(AmplitudeSource(fn, normalized=True, name="negbin"), policy)


def negbin_relations(xi, mu):
    q = xi / (1.0 - xi)
    nbar = mu * q
    return {
        "nbar": nbar,
        "q": q,
        "n_minus": nbar + q,
        "n_plus": nbar + negbin_plus_excess(xi, mu),
        "hyper": mu < 0.5 < xi * (1.0 - mu),
    }


def build_binomial(policy, p, M):
    require(0 <= p <= 1, f"binomial needs 0 <= p <= 1, got p={p}")
    require(M >= 1, f"binomial needs M >= 1, got M={M}")
    amplitudes = np.sqrt(binom.pmf(np.arange(M + 1), M, p))
    return ensure_cutoff(FockState(amplitudes, policy.tail_tol), policy)


def sample_negbin(rng):
    return {"xi": float(rng.uniform(0.05, 0.8)), "mu": float(rng.uniform(0.2, 5.0))}


def sample_binomial(rng):
    return {"p": float(rng.uniform(0.05, 0.95)), "M": int(rng.integers(1, 41))}


NEGBIN = Family(
    "negbin", ("xi", "mu"), build_negbin, sample_negbin, relations=negbin_relations
)
BINOMIAL = Family(
    "binomial", ("p", "M"), build_binomial, sample_binomial, integer_params=("M",)
)
