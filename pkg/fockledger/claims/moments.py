"""Photon excess under a and a^dagger, measured on randomized states."""
import math

from fockledger.claims.base import claim, max_abs
from fockledger.families import make_spec
from fockledger.fock import distribution_of, mean_photon_number
from fockledger.operators import added, subtracted
from fockledger.statistics import check_hyper, poissonian_band, predictions, stats

BOUNDARY_GAP = 1e-8
ADDED_EXCESS_SLACK = 1e-10


@claim("excess.identity", "N_- - nbar equals Mandel's q")
def photon_excess(ctx):
    deviations = []
    for spec, state in ctx.random_states():
        report = stats(distribution_of(state))
        n_minus = mean_photon_number(subtracted(state))
        deviations.append(n_minus - report.mean - report.mandel_q)
    return max_abs(deviations), 0.0


@claim("excess.prediction", "N_- from the moments equals N_- of the subtracted state")
def prediction_minus(ctx):
    deviations = []
    for spec, state in ctx.random_states():
        predicted = predictions(distribution_of(state)).n_minus
        deviations.append(predicted - mean_photon_number(subtracted(state)))
    return max_abs(deviations), 0.0


@claim("excess.sign", "a increases the mean exactly when q > 0", tolerance=0)
def sign_theorem(ctx):
    band = poissonian_band()
    violations = 0
    for spec, state in ctx.random_states():
        report = stats(distribution_of(state))
        if abs(report.mandel_q) <= band:
            continue
        excess = mean_photon_number(subtracted(state)) - report.mean
        violations += (excess > 0) != (report.mandel_q > 0)
    return violations, 0


@claim("added.mean", "N_+ = nbar + 1 + var/(1 + nbar)")
def photon_added_mean(ctx):
    deviations = []
    for spec, state in ctx.random_states():
        report = stats(distribution_of(state))
        expected = report.mean + 1.0 + report.variance / (1.0 + report.mean)
        deviations.append(mean_photon_number(added(state, policy=ctx.policy)) - expected)
    return max_abs(deviations), 0.0


@claim("added.at_least_one", "a^dagger adds at least one photon on average", tolerance=0)
def creation_excess_at_least_one(ctx):
    violations = 0
    for spec, state in ctx.random_states():
        excess = mean_photon_number(added(state, policy=ctx.policy)) - mean_photon_number(state)
        violations += excess < 1.0 - ADDED_EXCESS_SLACK
    return violations, 0


@claim("added.fock_equality", "N_+ - nbar = 1 exactly on Fock states", tolerance=1e-10)
def fock_equality(ctx):
    deviations = []
    for n in range(21):
        state = ctx.build(make_spec("fock", n=n))
        deviations.append(
            mean_photon_number(added(state, policy=ctx.policy)) - mean_photon_number(state) - 1.0
        )

    equalities = 0
    for spec, state in ctx.random_states(exclude=("fock",)):
        excess = mean_photon_number(added(state, policy=ctx.policy)) - mean_photon_number(state)
        equalities += abs(excess - 1.0) <= ADDED_EXCESS_SLACK
    return [max_abs(deviations), equalities], [0.0, 0]


@claim("hyper.equivalence", "N_- > N_+ exactly when q > 1 + 2 nbar", tolerance=0)
def hyper_equivalence(ctx):
    mismatches = 0
    for spec, state in ctx.random_states():
        check = check_hyper(distribution_of(state))
        if abs(check.mandel_q - check.bound) <= BOUNDARY_GAP:
            continue
        mismatches += check.holds != check.direct
    return mismatches, 0


@claim("hyper.squeezed_boundary", "the squeezed vacuum has q = 1 + 2 nbar", tolerance=1e-8)
def squeezed_boundary(ctx):
    deviations = []
    for nbar in [0.5, 1.3811, 5.0]:
        report = stats(distribution_of(ctx.build(make_spec("squeezed", nbar=nbar))))
        deviations.append(report.mandel_q - (1.0 + 2.0 * report.mean))
    return max_abs(deviations), 0.0


@claim("subtracted.q_minus", "q of the subtracted state from n^(1), n^(2), n^(3)")
def q_minus_prediction(ctx):
    deviations = []
    for spec, state in ctx.random_states():
        predicted = predictions(distribution_of(state)).q_minus
        if predicted is None:
            continue
        measured = stats(distribution_of(subtracted(state))).mandel_q
        if measured is None or not math.isfinite(measured):
            continue
        deviations.append(predicted - measured)
    return max_abs(deviations), 0.0
