"""Claims on particular families: sub-Poissonian, coherent+vacuum, negative
binomial and two-Fock states."""
import math

import numpy as np
from scipy.optimize import brentq
from scipy.stats import poisson

from fockledger.claims.base import claim, max_abs, probs_of
from fockledger.families import (
    build,
    closed_form_relations,
    make_spec,
    subtracted_coherent_fidelity,
)
from fockledger.fock import (
    EPS_NORM,
    FockState,
    distribution_of,
    fidelity,
    mean_photon_number,
)
from fockledger.operators import added, iterate, subtracted, weighted_annihilate
from fockledger.statistics import poissonian_band, stats, two_fock_analysis

COHVAC_POINT = {"alpha": 3.0, "eta": 0.1}


@claim("sub_poissonian.binomial", "binomial states have q = -p < 0")
def binomial_subpoissonian(ctx):
    deviations = []
    violations = 0
    for spec, state in ctx.random_states(kinds=["binomial"]):
        q = stats(distribution_of(state)).mandel_q
        deviations.append(q + spec.params["p"])
        violations += q >= 0
    return [max_abs(deviations), violations], [0.0, 0]


@claim("sub_poissonian.odd_coherent", "odd coherent states have q = -2 alpha^2 / sinh(2 alpha^2) < 0")
def odd_coherent_subpoissonian(ctx):
    deviations = []
    violations = 0
    for alpha in [0.2, 0.5, 1.0, 2.0, 3.0]:
        q = stats(distribution_of(ctx.build(make_spec("oddcoh", alpha=alpha)))).mandel_q
        deviations.append(q + 2.0 * alpha ** 2 / math.sinh(2.0 * alpha ** 2))
        violations += q >= 0
    return [max_abs(deviations), violations], [0.0, 0]


@claim("cohvac.means", "nbar = eta alpha^2, N_- = alpha^2 and N_+ for alpha=3, eta=0.1",
       tolerance=1e-6)
def cohvac_means(ctx):
    state = ctx.build(make_spec("cohvac", **COHVAC_POINT))
    measured = [
        mean_photon_number(state),
        mean_photon_number(subtracted(state)),
        mean_photon_number(added(state, policy=ctx.policy)),
    ]
    return measured, [0.9, 9.0, 11.8 / 1.9]


@claim("cohvac.regime", "nbar < 1 < N_+ < N_- when 3 eta + alpha^-2 < 1", tolerance=0)
def cohvac_regime(ctx):
    state = ctx.build(make_spec("cohvac", **COHVAC_POINT))
    nbar = mean_photon_number(state)
    n_minus = mean_photon_number(subtracted(state))
    n_plus = mean_photon_number(added(state, policy=ctx.policy))
    relations = closed_form_relations(make_spec("cohvac", **COHVAC_POINT))
    return [nbar < 1.0 < n_plus < n_minus, relations["regime"] < 1.0], [True, True]


@claim("cohvac.subtracted_coherent", "a maps the coherent+vacuum state to |alpha>",
       tolerance=1e-10)
def cohvac_subtracted_coherent(ctx):
    points = [(3.0, 0.1), (1.0, 0.5), (0.2, 0.9)]
    points += [
        (spec.params["alpha"], spec.params["eta"]) for spec in ctx.random_specs(kinds=["cohvac"])
    ]
    return max_abs(1.0 - subtracted_coherent_fidelity(a, e, ctx.policy) for a, e in points), 0.0


@claim("cohvac.probabilities", "p_0 = 1 - eta(1 - e^-alpha^2), p_n = eta Poisson(alpha^2)")
def cohvac_probabilities(ctx):
    deviations = []
    for spec, state in ctx.random_states(kinds=["cohvac"]):
        alpha, eta = spec.params["alpha"], spec.params["eta"]
        probs = probs_of(state)
        expected = eta * poisson.pmf(np.arange(probs.shape[0]), alpha ** 2)
        expected[0] = 1.0 - eta * -math.expm1(-(alpha ** 2))
        deviations.append(np.max(np.abs(probs - expected)))
    return max_abs(deviations), 0.0


@claim("negbin.iterated_subtraction", "each subtraction adds q to the mean and keeps q",
       tolerance=1e-8)
def iterated_subtraction(ctx):
    # five subtractions weight p_n by n^5, beyond the default moment order
    policy = ctx.policy.replace(moment_order=8)
    deviations = []
    for xi, mu in [(0.5, 2.0), (0.3, 0.7), (0.8, 0.25)]:
        spec = make_spec("negbin", xi=xi, mu=mu)
        q = xi / (1.0 - xi)
        nbar = mu * q
        for k, (state, report) in enumerate(iterate(ctx.build(spec, policy), "sub", 5), start=1):
            deviations.append(report.mean - (nbar + k * q))
            deviations.append(report.mandel_q - q)
    return max_abs(deviations), 0.0


@claim("negbin.annihilation_beats_creation", "mu < 1/2 < xi(1 - mu) gives N_- > N_+",
       tolerance=0)
def annihilation_beats_creation(ctx):
    spec = make_spec("negbin", xi=0.8, mu=0.25)
    state = ctx.build(spec)
    n_minus = mean_photon_number(subtracted(state))
    n_plus = mean_photon_number(added(state, policy=ctx.policy))
    return [n_minus > n_plus, closed_form_relations(spec)["hyper"]], [True, True]


@claim("negbin.moments", "q = xi/(1 - xi) and nbar = mu q")
def negbin_moments(ctx):
    deviations = []
    for spec, state in ctx.random_states(kinds=["negbin"]):
        report = stats(distribution_of(state))
        relations = closed_form_relations(spec)
        deviations.append(report.mandel_q - relations["q"])
        deviations.append(report.mean - relations["nbar"])
        deviations.append(mean_photon_number(added(state, policy=ctx.policy)) - relations["n_plus"])
    return max_abs(deviations), 0.0


@claim("twofock.condition_grid", "r(1-r)(n-m)^2 > r(n-m) + m exactly when a adds photons",
       tolerance=0)
def condition_grid(ctx):
    band = poissonian_band()
    mismatches = 0
    for n in range(1, 101):
        for m in range(0, min(n, 6)):
            for r in np.arange(1, 10) / 10.0:
                state = ctx.build(make_spec("twofock", n=n, m=m, r=float(r)))
                excess = mean_photon_number(subtracted(state)) - mean_photon_number(state)
                if abs(excess) <= band:
                    continue
                mismatches += two_fock_analysis(n, m, r).condition_holds != (excess > 0)
    return mismatches, 0


@claim("twofock.q_minus_limit", "q_- tends to (1 - r)m/r - 1 for n >> m", tolerance=0.05)
def q_minus_limit(ctx):
    n, m, r = 2000, 1, 0.5
    state = ctx.build(make_spec("twofock", n=n, m=m, r=r))
    measured = stats(distribution_of(subtracted(state))).mandel_q
    return measured, two_fock_analysis(n, m, r).q_minus_limit


@claim("twofock.weight_reduction", "a scales the low/high weight ratio by m/n")
def weight_reduction(ctx):
    deviations = []
    for n, m, r in [(10, 1, 0.5), (20, 3, 0.3), (50, 2, 0.9), (7, 5, 0.1)]:
        analysis = two_fock_analysis(n, m, r)
        probs = probs_of(subtracted(ctx.build(make_spec("twofock", n=n, m=m, r=r))))
        ratio = probs[m - 1] / probs[n - 1]
        deviations.append(ratio / analysis.weight_ratio_after - 1.0)
        deviations.append(
            analysis.weight_ratio_before / analysis.weight_ratio_after - analysis.weight_reduction
        )
    return max_abs(deviations), 0.0


@claim("twofock.weighted_annihilation", "f(n)a maps sqrt(r)|n> + sqrt(1-r)|0> to |n-1>",
       tolerance=1e-12)
def weighted_annihilation(ctx):
    weights = [
        lambda k: 1.0,
        lambda k: 1.0 / math.sqrt(k + 1.0),
        lambda k: math.exp(-0.1 * k) + 2.0,
    ]
    deviations = []
    for n in [1, 4, 12]:
        state = ctx.build(make_spec("twofock", n=n, m=0, r=0.5))
        target = np.zeros(n, dtype=complex)
        target[n - 1] = 1.0
        for f in weights:
            result = weighted_annihilate(state, f)
            deviations.append(1.0 - fidelity(result, FockState(target)))
    return max_abs(deviations), 0.0


@claim("twofock.subcoherent_roots",
       "for n >> m, q = 0 near r = m/n^2 and near 1 - r = 1/n", tolerance=0)
def subcoherent_roots(ctx):
    n, m = 50, 2

    def q_of(r):
        return stats(distribution_of(ctx.build(make_spec("twofock", n=n, m=m, r=r)))).mandel_q

    brackets = [
        (m / n ** 2 / 4.0, 4.0 * m / n ** 2),
        (1.0 - 4.0 / n, 1.0 - 1.0 / (4.0 * n)),
    ]
    roots = []
    for low, high in brackets:
        if q_of(low) * q_of(high) < 0:
            roots.append(brentq(q_of, low, high, xtol=1e-12))
    ctx.details["roots"] = roots
    return len(roots), len(brackets)


@claim("families.squeezed_odd", "the squeezed vacuum has no odd photon numbers and q = 1 + 2 nbar",
       tolerance=1e-8)
def squeezed_odd(ctx):
    odd = []
    deviations = []
    for spec, state in ctx.random_states(kinds=["squeezed"]):
        dist = distribution_of(state)
        probs = dist.probs
        odd.append(np.max(probs[1::2]) if probs.shape[0] > 1 else 0.0)
        report = stats(dist)
        deviations.append(report.mandel_q - (1.0 + 2.0 * report.mean))
        deviations.append(report.mean - spec.params["nbar"])
    return [max_abs(odd), max_abs(deviations)], [0.0, 0.0]


@claim("families.roundtrip", "gamma, logq and log0 states reproduce their parameters",
       tolerance=1e-8)
def genfun_roundtrip(ctx):
    deviations = []
    for spec, state in ctx.random_states(kinds=["gamma", "logq", "log0"]):
        report = stats(distribution_of(state))
        nbar = spec.params["nbar"]
        deviations.append(report.mean - nbar)
        if spec.kind == "gamma":
            deviations.append(mean_photon_number(subtracted(state)) / nbar - spec.params["gamma"])
        elif spec.kind == "logq":
            deviations.append(report.mandel_q - spec.params["q"])
        else:
            deviations.append(report.mandel_q)
    return max_abs(deviations), 0.0



@claim("families.normalized", "every built state has unit norm within tail_tol", tolerance=0)
def families_normalized(ctx):
    violations = 0
    for spec in ctx.random_specs():
        state = build(spec, ctx.policy)
        violations += abs(1.0 - state.norm_sq()) > state.tail_tol + EPS_NORM
    return violations, 0
