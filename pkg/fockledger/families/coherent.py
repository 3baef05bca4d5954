"""Coherent states, the coherent+vacuum superposition and odd coherent states."""
import logging
import math

import numpy as np
from scipy.special import gammaln

from fockledger.errors import NoRealRoot
from fockledger.families.base import Family, require
from fockledger.fock import AmplitudeSource, ensure_cutoff

logger = logging.getLogger(__name__)


def coherent_amplitudes(alpha):
    """c_n = e^{-alpha^2/2} alpha^n / sqrt(n!) for real alpha >= 0."""

    def fn(n):
        n = np.asarray(n, dtype=float)
        if alpha == 0:
            return (n == 0).astype(float)
        return np.exp(-0.5 * alpha ** 2 + n * math.log(alpha) - 0.5 * gammaln(n + 1))

    return fn


def build_coherent(policy, alpha):
    require(alpha >= 0, f"coherent needs alpha >= 0, got alpha={alpha}")
    return ensure_cutoff(
        AmplitudeSource(coherent_amplitudes(alpha), normalized=True, name="coherent"),
        policy,
    )


def vacuum_coefficient(alpha, eta):
    """Solve eta + xi^2 + 2 sqrt(eta) e^{-alpha^2/2} xi = 1 for real xi.

    Of the two roots the one with the smaller |xi| is returned.

    :raises NoRealRoot: if the discriminant is negative.
    """

    b = math.sqrt(eta) * math.exp(-0.5 * alpha ** 2)
    discriminant = b ** 2 + 1.0 - eta
    if discriminant < 0:
        raise NoRealRoot(
            f"cohvac normalization has no real root at alpha={alpha}, eta={eta}: "
            f"eta e^(-alpha^2) + 1 - eta = {discriminant:.6g} < 0"
        )
    return -b + math.sqrt(discriminant)


def build_cohvac(policy, alpha, eta):
    require(alpha >= 0, f"cohvac needs alpha >= 0, got alpha={alpha}")
    require(eta > 0, f"cohvac needs eta > 0, got eta={eta}")

    xi = vacuum_coefficient(alpha, eta)
    coherent = coherent_amplitudes(alpha)
    vacuum = math.sqrt(eta) * math.exp(-0.5 * alpha ** 2) + xi
    logger.debug(f"cohvac alpha={alpha} eta={eta}: xi={xi}")

    def fn(n):
        values = math.sqrt(eta) * coherent(n)
        values[np.asarray(n) == 0] = vacuum
        return values

    return ensure_cutoff(AmplitudeSource(fn, normalized=True, name="cohvac"), policy)


def cohvac_relations(alpha, eta):
    nbar = eta * alpha ** 2
    n_minus = alpha ** 2
    second = eta * (alpha ** 4 + alpha ** 2)
    return {
        "nbar": nbar,
        "n_minus": n_minus,
        "q": n_minus - nbar,
        "n_plus": (second + 2.0 * nbar + 1.0) / (1.0 + nbar),
        "regime": 3.0 * eta + alpha ** -2 if alpha > 0 else math.inf,
    }


def build_oddcoh(policy, alpha):
    require(alpha > 0, f"oddcoh needs alpha > 0, got alpha={alpha}")
    # log sinh(alpha^2), stable for large alpha
    log_norm = alpha ** 2 + math.log1p(-math.exp(-2.0 * alpha ** 2)) - math.log(2.0)

    def fn(n):
        n = np.asarray(n, dtype=float)
        values = np.exp(n * math.log(alpha) - 0.5 * gammaln(n + 1) - 0.5 * log_norm)
        values[n % 2 == 0] = 0.0
        return values

    return ensure_cutoff(AmplitudeSource(fn, normalized=True, name="oddcoh"), policy)


def sample_coherent(rng):
    return {"alpha": float(rng.uniform(0.1, 4.0))}


def sample_cohvac(rng):
    return {"alpha": float(rng.uniform(0.2, 3.0)), "eta": float(rng.uniform(0.05, 1.0))}


def sample_oddcoh(rng):
    return {"alpha": float(rng.uniform(0.2, 3.0))}


COHERENT = Family("coherent", ("alpha",), build_coherent, sample_coherent)
COHVAC = Family(
    "cohvac", ("alpha", "eta"), build_cohvac, sample_cohvac, relations=cohvac_relations
)
ODDCOH = Family("oddcoh", ("alpha",), build_oddcoh, sample_oddcoh)
