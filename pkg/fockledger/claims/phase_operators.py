"""Claims on the exponential phase operators E_- and E_+."""
import numpy as np

from fockledger.claims.base import LIMIT, claim, max_abs, probs_of
from fockledger.families import make_spec
from fockledger.families.logarithmic import simonlog_phase_fidelity
from fockledger.fock import FockState, distribution_of, fidelity, mean_photon_number, normalize
from fockledger.operators import exp_phase
from fockledger.statistics import predictions, tilde_excess_gamma


def _tilde_means(state, policy):
    down = mean_photon_number(exp_phase(state, "down"))
    up = mean_photon_number(exp_phase(state, "up", policy=policy))
    return down, up


@claim("phase_ops.inverse", "E_- E_+ = 1 and E_+ E_- = 1 - |0><0|", tolerance=1e-12)
def eminus_eplus_identity(ctx):
    deviations = []
    for spec, state in ctx.random_states():
        round_trip = exp_phase(exp_phase(state, "up", policy=ctx.policy), "down")
        deviations.append(1.0 - fidelity(round_trip, state))

        if 1.0 - probs_of(state)[0] > 1e-6:
            amplitudes = np.array(state.amplitudes)
            amplitudes[0] = 0.0
            projected = normalize(FockState(amplitudes, state.tail_tol))
            down_up = exp_phase(exp_phase(state, "down"), "up", policy=ctx.policy)
            deviations.append(1.0 - fidelity(down_up, projected))
    return max_abs(deviations), 0.0


@claim("phase_ops.plus_mean", "E_+ adds exactly one photon to any state", tolerance=1e-10)
def e_plus_mean(ctx):
    deviations = []
    for spec, state in ctx.random_states():
        n_tilde_plus = mean_photon_number(exp_phase(state, "up", policy=ctx.policy))
        deviations.append(n_tilde_plus - mean_photon_number(state) - 1.0)
    return max_abs(deviations), 0.0


@claim("phase_ops.minus_mean", "the E_- mean is nbar/(1 - p_0) - 1")
def e_minus_mean(ctx):
    deviations = []
    for spec, state in ctx.random_states():
        predicted = predictions(distribution_of(state)).n_tilde_minus
        deviations.append(mean_photon_number(exp_phase(state, "down")) - predicted)
    return max_abs(deviations), 0.0


@claim("phase_ops.phase_eigenstate", "the coherent phase state keeps its mean under E_-",
       tolerance=1e-10)
def phase_eigenstate(ctx):
    deviations = []
    for z in [0.1, 0.6, 0.9]:
        state = ctx.build(make_spec("phase", z=z))
        deviations.append(mean_photon_number(exp_phase(state, "down")) - mean_photon_number(state))
    return max_abs(deviations), 0.0


@claim("phase_ops.coherent_small_limit", "E_- halves the mean of a weak coherent state",
       tolerance=LIMIT)
def coherent_small_limit(ctx):
    state = ctx.build(make_spec("coherent", alpha=0.1))
    ratio = mean_photon_number(exp_phase(state, "down")) / mean_photon_number(state)
    return ratio / 0.5, 1.0


@claim("phase_ops.tilde_excess_positive",
       "(1 - p_0)(N~_- - nbar) > 0 at large nbar for gamma > 1 and for negbin near xi = 1")
def tilde_excess_positive(ctx):
    deviations = []
    violations = 0
    for gamma in [2.0, 5.0]:
        for nbar in [2.0, 5.0, 10.0]:
            state = ctx.build(make_spec("gamma", nbar=nbar, gamma=gamma))
            p0 = probs_of(state)[0]
            measured = (1.0 - p0) * (mean_photon_number(exp_phase(state, "down")) - nbar)
            deviations.append(measured - tilde_excess_gamma(nbar, gamma))
            violations += measured <= 0

    for xi in [0.9, 0.95]:
        state = ctx.build(make_spec("negbin", xi=xi, mu=0.5))
        excess = mean_photon_number(exp_phase(state, "down")) - mean_photon_number(state)
        violations += excess <= 0
    return [max_abs(deviations), violations], [0.0, 0]


@claim("phase_ops.tilde_crossover", "nbar > 2(1 - p_0)/p_0 implies N~_- > N~_+", tolerance=0)
def tilde_crossover(ctx):
    violations = 0
    covered = 0
    for gamma in [1.5, 2.0, 5.0]:
        for nbar in [0.5, 1.0, 2.0, 5.0, 10.0, 20.0]:
            state = ctx.build(make_spec("gamma", nbar=nbar, gamma=gamma))
            p0 = probs_of(state)[0]
            if not mean_photon_number(state) > 2.0 * (1.0 - p0) / p0:
                continue
            covered += 1
            down, up = _tilde_means(state, ctx.policy)
            violations += not down > up
    return [violations, covered > 0], [0, True]


@claim("log_states.simonlog_to_phase", "a maps the logarithmic state to the phase state",
       tolerance=1e-10)
def simonlog_to_phase(ctx):
    deviations = []
    for z in [0.1, 0.5, 0.9]:
        deviations.append(1.0 - simonlog_phase_fidelity(z, ctx.policy))
    return max_abs(deviations), 0.0
