"""States whose photon distributions come from a generating function.

The amplitudes are sqrt(p_n) with zero phases; the statistics do not
depend on the phases.
"""
import math

from fockledger import genfun
from fockledger.families.base import Family
from fockledger.fock import state_from_distribution


def build_gamma(policy, nbar, gamma):
    return state_from_distribution(genfun.gamma_family(nbar, gamma, policy))


def gamma_relations(nbar, gamma):
    return {
        "nbar": nbar,
        "q": (gamma - 1.0) * nbar,
        "n_minus": gamma * nbar,
        "p0": (gamma + math.expm1(-gamma * nbar)) / gamma,
        "boundary": genfun.gamma_boundary(gamma),
    }


def build_logq(policy, nbar, q):
    return state_from_distribution(genfun.log_q_family(nbar, q, policy))


def logq_relations(nbar, q):
    return {
        "nbar": nbar,
        "q": q,
        "n_minus": nbar + q,
        "q_minus": nbar,
        "p0": genfun.log_q_probability(0, nbar, q),
        "bound": genfun.log_q_bound(q),
    }


def build_log0(policy, nbar):
    return state_from_distribution(genfun.log0_family(nbar, policy))


def log0_relations(nbar):
    return {
        "nbar": nbar,
        "q": 0.0,
        "n_minus": nbar,
        "p0": 1.0 - math.log1p(nbar),
        "factorial_moments": [math.factorial(r - 1) * nbar ** r for r in range(1, 5)],
        "bound": math.e - 1.0,
    }


def sample_gamma(rng):
    gamma = float(rng.uniform(0.2, 5.0))
    high = min(5.0, 0.999 * genfun.gamma_boundary(gamma))
    return {"nbar": float(rng.uniform(0.05, high)), "gamma": gamma}


def sample_logq(rng):
    q = float(rng.uniform(0.1, 5.0))
    high = min(5.0, 0.999 * genfun.log_q_bound(q))
    return {"nbar": float(rng.uniform(0.05, high)), "q": q}


def sample_log0(rng):
    return {"nbar": float(rng.uniform(0.05, 0.999 * (math.e - 1.0)))}


GAMMA = Family(
    "gamma", ("nbar", "gamma"), build_gamma, sample_gamma, relations=gamma_relations
)
LOGQ = Family("logq", ("nbar", "q"), build_logq, sample_logq, relations=logq_relations)
LOG0 = Family("log0", ("nbar",), build_log0, sample_log0, relations=log0_relations)
