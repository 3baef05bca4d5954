"""Logarithmic states and their subtracted partners, the coherent phase states.

The logarithmic state c|0> + sum_{n>=1} z^n/sqrt(n) |n> has |c|^2 = 1 + ln(1 - z^2),
so it exists only for z <= sqrt(1 - 1/e), i.e. nbar = z^2/(1 - z^2) <= e - 1.
"""
import logging
import math

import numpy as np

from fockledger.families.base import Family, require
from fockledger.fock import AmplitudeSource, ensure_cutoff, fidelity
from fockledger.operators import subtracted

logger = logging.getLogger(__name__)

SIMONLOG_MAX_Z = math.sqrt(1.0 - 1.0 / math.e)
DOMAIN_RTOL = 1e-12
PHASE_FIDELITY_TOL = 1e-10


def _log_amplitudes(z, vacuum):
    log_z = math.log(z)

    def fn(n):
        n = np.asarray(n, dtype=float)
        values = np.zeros(n.shape[0])
        positive = n > 0
        values[positive] = np.exp(n[positive] * log_z - 0.5 * np.log(n[positive]))
        if vacuum is None:
            # normalize the n >= 1 part alone
            values /= math.sqrt(-math.log1p(-z ** 2))
        else:
            values[~positive] = vacuum
        return values

    return fn


def build_simonlog(policy, z):
    require(
        0 <= z <= SIMONLOG_MAX_Z * (1.0 + DOMAIN_RTOL),
        f"simonlog needs 0 <= z <= sqrt(1 - 1/e) = {SIMONLOG_MAX_Z} (nbar <= e - 1), "
        f"got z={z}",
    )
    if z == 0:
        return build_phase(policy, 0.0)

    vacuum = math.sqrt(max(1.0 + math.log1p(-z ** 2), 0.0))
    return ensure_cutoff(
        AmplitudeSource(_log_amplitudes(z, vacuum), normalized=True, name="simonlog"),
        policy,
    )


def vacuum_free_log_state(z, policy):
    """sum_{n>=1} z^n/sqrt(n) |n>, normalized; defined for every 0 < z < 1."""

    require(0 < z < 1, f"needs 0 < z < 1, got z={z}")
    return ensure_cutoff(
        AmplitudeSource(_log_amplitudes(z, None), normalized=True, name="log"), policy
    )


def simonlog_relations(z):
    w = z ** 2
    nbar = w / (1.0 - w)
    return {
        "nbar": nbar,
        "q": 0.0,
        "n_minus": nbar,
        "n_plus": nbar + 1.0 + w,
        "p0": 1.0 + math.log1p(-w),
    }


def build_phase(policy, z):
    require(0 <= z < 1, f"phase needs 0 <= z < 1, got z={z}")
    scale = math.sqrt(1.0 - z ** 2)

    def fn(n):
        n = np.asarray(n, dtype=float)
        if z == 0:
            return (n == 0).astype(float)
        return scale * np.exp(n * math.log(z))

    return ensure_cutoff(AmplitudeSource(fn, normalized=True, name="phase"), policy)


def phase_relations(z):
    w = z ** 2
    nbar = w / (1.0 - w)
    return {
        "nbar": nbar,
        "q": nbar,
        "n_minus": 2.0 * nbar,
        "n_plus": 2.0 * nbar + 1.0,
        "n_tilde_minus": nbar,
        "p0": 1.0 - w,
    }


def simonlog_phase_fidelity(z, policy):
    """|<phase(z)| a |log(z)>|^2 / nbar, falling back to the vacuum-free log
    state above sqrt(1 - 1/e); a ignores the vacuum amplitude either way."""

    require(0 < z < 1, f"needs 0 < z < 1, got z={z}")
    if z <= SIMONLOG_MAX_Z:
        state = build_simonlog(policy, z)
    else:
        state = vacuum_free_log_state(z, policy)
    value = fidelity(subtracted(state), build_phase(policy, z))
    logger.debug(f"subtracted log state vs phase state at z={z}: fidelity {value}")
    return value


def sample_simonlog(rng):
    return {"z": float(rng.uniform(0.05, 0.999 * SIMONLOG_MAX_Z))}


def sample_phase(rng):
    return {"z": float(rng.uniform(0.05, 0.9))}


SIMONLOG = Family(
    "simonlog", ("z",), build_simonlog, sample_simonlog, relations=simonlog_relations
)
PHASE = Family("phase", ("z",), build_phase, sample_phase, relations=phase_relations)
