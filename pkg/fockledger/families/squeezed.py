"""The squeezed vacuum, parameterized by its mean nbar or its squeeze s."""
import math

import numpy as np
from scipy.special import gammaln

from fockledger.families.base import Family, require
from fockledger.fock import AmplitudeSource, FockState, ensure_cutoff


def squeeze_of(nbar=None, s=None):
    if s is None:
        require(nbar >= 0, f"squeezed needs nbar >= 0, got nbar={nbar}")
        return math.asinh(math.sqrt(nbar))
    require(s >= 0, f"squeezed needs s >= 0, got s={s}")
    return s


def build_squeezed(policy, nbar=None, s=None):
    s = squeeze_of(nbar, s)
    if s == 0:
        return ensure_cutoff(FockState([1.0], policy.tail_tol), policy)

    log_tanh = math.log(math.tanh(s))
    log_cosh = math.log(math.cosh(s))

    def fn(n):
        n = np.asarray(n, dtype=float)
        m = np.floor(n / 2)
        # p_2m = (2m)! tanh^2m(s) / (4^m (m!)^2 cosh s)
        log_p = (
            gammaln(2 * m + 1)
            - 2 * gammaln(m + 1)
            - m * math.log(4.0)
            + 2 * m * log_tanh
            - log_cosh
        )
        values = np.where(m % 2 == 0, 1.0, -1.0) * np.exp(0.5 * log_p)
        values[n % 2 == 1] = 0.0
        return values

    return ensure_cutoff(AmplitudeSource(fn, normalized=True, name="squeezed"), policy)


def squeezed_relations(nbar=None, s=None):
    if nbar is None:
        nbar = math.sinh(squeeze_of(s=s)) ** 2
    q = 1.0 + 2.0 * nbar
    return {
        "nbar": nbar,
        "q": q,
        "n_minus": nbar + q,
        "n_plus": 1.0 + 3.0 * nbar,
        "hyper_bound": 1.0 + 2.0 * nbar,
    }


def sample_squeezed(rng):
    return {"nbar": float(rng.uniform(0.05, 5.0))}


SQUEEZED = Family(
    "squeezed",
    ("nbar", "s"),
    build_squeezed,
    sample_squeezed,
    relations=squeezed_relations,
    one_of=True,
)
