"""Claims on generating functions and the families defined through them."""
import math

import numpy as np
from scipy.stats import nbinom, poisson

from fockledger import genfun
from fockledger.claims.base import LIMIT, claim, max_abs, padded_diff, probs_of
from fockledger.errors import InvalidParams
from fockledger.families import make_spec
from fockledger.fock import CutoffPolicy, distribution_of, mean_photon_number
from fockledger.genfun import GenFun, NegativityReport
from fockledger.operators import added, exp_phase, subtracted
from fockledger.statistics import factorial_moment, stats

LOG_Q_GRID = [(1.0, 0.5), (0.5, 2.0), (2.0, 5.0), (1.0, 50.0)]


@claim("gamma.ratio", "the gamma family has N_-/nbar = gamma", tolerance=1e-8)
def gamma_ratio(ctx):
    deviations = []
    for gamma in [1.0, 2.0, 5.0]:
        for nbar in [0.5, 1.0, 5.0]:
            state = ctx.build(make_spec("gamma", nbar=nbar, gamma=gamma))
            deviations.append(mean_photon_number(subtracted(state)) / nbar - gamma)
    return max_abs(deviations), 0.0


@claim("gamma.boundary", "p_0 = 0 where gamma nbar = |ln(1 - gamma)|", tolerance=1e-10)
def gamma_boundary(ctx):
    values = []
    for gamma in [0.2, 0.5, 0.9]:
        dist = genfun.gamma_family(genfun.gamma_boundary(gamma), gamma, ctx.policy)
        values.append(dist.probs[0])
    return max_abs(values), 0.0


@claim("gamma.poisson", "gamma = 1 is the Poisson distribution", tolerance=1e-14)
def gamma_poisson(ctx):
    deviations = []
    for nbar in [0.5, 1.0, 5.0]:
        probs = genfun.gamma_family(nbar, 1.0, ctx.policy).probs
        deviations.append(padded_diff(probs, poisson.pmf(np.arange(probs.shape[0]), nbar)))
    return max_abs(deviations), 0.0


@claim("gamma.infinite_limit", "p_0 tends to 1 as gamma grows", tolerance=1e-5)
def gamma_infinite_limit(ctx):
    # the 1e-6 mass left sits around n = 1e6, so only the complement is checked
    policy = CutoffPolicy(tail_tol=1e-5, max_cutoff=ctx.policy.max_cutoff, moment_order=0)
    dist = genfun.gamma_family(1.0, 1e6, policy)
    return 1.0 - dist.probs[0], 0.0


def _negative_index(nbar, gamma, policy):
    result = genfun.cosh_family(nbar, gamma, policy)
    return result.index if isinstance(result, NegativityReport) else -1


@claim("cosh.negativity_p1", "p_1 < 0 for nbar sqrt(gamma) >> 1 and gamma > 1", tolerance=0)
def negativity_p1(ctx):
    return _negative_index(10.0, 4.0, ctx.policy), 1


@claim("cosh.negativity_p0", "p_0 < 0 for nbar sqrt(gamma) >> 1 and gamma < 1", tolerance=0)
def negativity_p0(ctx):
    return _negative_index(100.0, 0.25, ctx.policy), 0


@claim("cosh.poisson_collapse", "gamma = 1 collapses to a nonnegative Poisson distribution",
       tolerance=1e-13)
def poisson_collapse(ctx):
    negative = 0
    deviations = []
    for nbar in [0.5, 2.0, 10.0]:
        result = genfun.cosh_family(nbar, 1.0, ctx.policy)
        if isinstance(result, NegativityReport):
            negative += 1
            continue
        deviations.append(
            padded_diff(result.probs, poisson.pmf(np.arange(result.probs.shape[0]), nbar))
        )
    return [negative, max_abs(deviations)], [0, 0.0]


@claim("logq.moments", "the logarithmic family has mean nbar and Mandel q = q", tolerance=1e-8)
def log_q_moments(ctx):
    deviations = []
    for nbar, q in LOG_Q_GRID:
        report = stats(genfun.log_q_family(nbar, q, ctx.policy))
        deviations.extend([report.mean - nbar, report.mandel_q - q])
    return max_abs(deviations), 0.0


@claim("logq.subtracted", "after a the mean is nbar + q and Mandel q is nbar", tolerance=1e-7)
def log_q_subtracted(ctx):
    deviations = []
    for nbar, q in LOG_Q_GRID:
        state = ctx.build(make_spec("logq", nbar=nbar, q=q))
        report = stats(distribution_of(subtracted(state)))
        deviations.extend([report.mean - (nbar + q), report.mandel_q - nbar])
    return max_abs(deviations), 0.0


@claim("logq.bound", "p_0 >= 0 exactly up to nbar = q(e-1)/(1-e^-q)", tolerance=1e-10)
def log_q_bound(ctx):
    rejected = 0
    values = []
    for q in [0.5, 2.0, 5.0]:
        bound = genfun.log_q_bound(q)
        values.append(genfun.log_q_family(bound, q, ctx.policy).probs[0])
        try:
            genfun.log_q_family(1.01 * bound, q, ctx.policy)
        except InvalidParams:
            rejected += 1
    return [max_abs(values), rejected], [0.0, 3]


@claim("logq.q_to_zero", "q -> 0 recovers the sub-coherent distribution", tolerance=1e-4)
def log_q_to_zero(ctx):
    near = genfun.log_q_family(1.0, 1e-6, ctx.policy).probs
    limit = genfun.log0_family(1.0, ctx.policy).probs
    return padded_diff(near, limit), 0.0


@claim("logq.large_q_limit", "q >> 1, nbar: p_0 ~ 1 - nbar/q, p_n ~ (nbar/q) Poisson(q)",
       tolerance=LIMIT)
def log_q_large_q(ctx):
    nbar, q = 1.0, 50.0
    probs = genfun.log_q_family(nbar, q, ctx.policy).probs
    approx = (nbar / q) * poisson.pmf(np.arange(probs.shape[0]), q)
    approx[0] = 1.0 - nbar / q
    return padded_diff(probs, approx), 0.0


@claim("logq.k_sum_agreement", "series coefficients agree with the explicit k-sum",
       tolerance=1e-12)
def log_q_k_sum(ctx):
    deviations = []
    for nbar, q in LOG_Q_GRID[:3]:
        probs = genfun.log_q_family(nbar, q, ctx.policy).probs
        for n in range(min(11, probs.shape[0])):
            deviations.append(probs[n] - genfun.log_q_probability(n, nbar, q))
    return max_abs(deviations), 0.0


@claim("log0.mandel_zero", "the sub-coherent distribution has q = 0")
def log0_mandel_zero(ctx):
    return max_abs(
        stats(genfun.log0_family(nbar, ctx.policy)).mandel_q for nbar in [0.1, 0.5, 1.0, 1.7]
    ), 0.0


@claim("log0.factorial_moments", "n^(r) = (r-1)! nbar^r", tolerance=1e-8)
def log0_factorial_moments(ctx):
    deviations = []
    for nbar in [0.1, 0.5, 1.0, 1.7]:
        dist = genfun.log0_family(nbar, ctx.policy)
        for r in range(1, 5):
            deviations.append(factorial_moment(dist, r) - math.factorial(r - 1) * nbar ** r)
    return max_abs(deviations), 0.0


@claim("log0.bound", "p_0 = 0 at nbar = e - 1 and larger nbar is rejected", tolerance=1e-15)
def log0_bound(ctx):
    p0 = genfun.log0_family(math.e - 1.0, ctx.policy).probs[0]
    try:
        genfun.log0_family(2.0, ctx.policy)
        rejected = False
    except InvalidParams:
        rejected = True
    return [abs(p0), rejected], [0.0, True]


@claim("balazs.limit", "A -> 0 reproduces n^(r) = (r-1)! nbar^r", tolerance=1e-6)
def balazs_limit(ctx):
    dist = genfun.log0_family(1.0, ctx.policy)
    deviations = []
    for r in range(1, 5):
        moment = genfun.balazs_moments(1.0, 1e-8, r)
        deviations.append(moment - math.factorial(r - 1))
        deviations.append(moment - factorial_moment(dist, r))
    return max_abs(deviations), 0.0


@claim("balazs.second_moment", "n^(2) = nbar^2 (1 - A) and n^(1) = nbar")
def balazs_second_moment(ctx):
    measured = [genfun.balazs_moments(1.0, 0.5, 2)]
    measured += [genfun.balazs_moments(2.5, A, 1) for A in [0.0, 0.3, 1.0, 2.0]]
    return measured, [0.5, 2.5, 2.5, 2.5, 2.5]


@claim("transforms.wiring", "G transforms equal the distributions after each operator",
       tolerance=1e-10)
def transform_wiring(ctx):
    deviations = []
    for spec, state in ctx.random_states():
        G = GenFun.from_distribution(distribution_of(state))
        routes = {
            genfun.PLUS: added(state, policy=ctx.policy),
            genfun.TILDE_PLUS: exp_phase(state, "up", policy=ctx.policy),
            genfun.TILDE_MINUS: exp_phase(state, "down"),
        }
        if probs_of(state)[1:].sum() > 0 and G.derivative(1) > 0:
            routes[genfun.MINUS] = subtracted(state)
        for kind, result in routes.items():
            deviations.append(padded_diff(genfun.transform(G, kind).coeffs, probs_of(result)))
    return max_abs(deviations), 0.0


@claim("genfun.negbin_minus", "G_- of negbin(xi, mu) is negbin(xi, mu + 1)", tolerance=1e-10)
def negbin_gminus(ctx):
    deviations = []
    for spec in ctx.random_specs(kinds=["negbin"]):
        xi, mu = spec.params["xi"], spec.params["mu"]
        G = GenFun.from_distribution(distribution_of(ctx.build(spec)))
        minus = genfun.transform(G, genfun.MINUS).coeffs
        expected = nbinom.pmf(np.arange(minus.shape[0]), mu + 1.0, 1.0 - xi)
        deviations.append(padded_diff(minus, expected))
    return max_abs(deviations), 0.0


@claim("genfun.coefficients", "generated coefficients equal the closed-form p_n",
       tolerance=1e-12)
def coefficients_are_probabilities(ctx):
    deviations = []
    for spec in ctx.random_specs(kinds=["gamma", "logq", "log0"]):
        nbar = spec.params["nbar"]
        if spec.kind == "gamma":
            gamma = spec.params["gamma"]
            probs = genfun.gamma_family(nbar, gamma, ctx.policy).probs
            n = np.arange(probs.shape[0])
            expected = poisson.pmf(n, gamma * nbar) / gamma
            expected[0] = 1.0 - 1.0 / gamma + math.exp(-gamma * nbar) / gamma
        elif spec.kind == "logq":
            q = spec.params["q"]
            probs = genfun.log_q_family(nbar, q, ctx.policy).probs[:20]
            expected = [genfun.log_q_probability(n, nbar, q) for n in range(probs.shape[0])]
        else:
            probs = genfun.log0_family(nbar, ctx.policy).probs
            n = np.arange(1, probs.shape[0])
            expected = np.concatenate(
                [[1.0 - math.log1p(nbar)], (nbar / (1.0 + nbar)) ** n / n]
            )
        deviations.append(padded_diff(probs, expected))
    return max_abs(deviations), 0.0


@claim("genfun.derivative_moments", "G^(r)(1) equals the factorial moment n^(r)",
       tolerance=1e-12)
def derivative_moments(ctx):
    deviations = []
    for spec, state in ctx.random_states():
        dist = distribution_of(state)
        G = GenFun.from_distribution(dist)
        for r in range(1, 5):
            moment = factorial_moment(dist, r)
            deviations.append((G.derivative(r) - moment) / max(1.0, abs(moment)))
    return max_abs(deviations), 0.0


@claim("genfun.eval_values", "G(1) = 1, Poisson G(0) = e^-nbar, negbin G(1/2) = 4/9",
       tolerance=1e-11)
def eval_values(ctx):
    poisson_G = GenFun.from_distribution(genfun.gamma_family(2.0, 1.0, ctx.policy))
    negbin_G = GenFun.from_distribution(
        distribution_of(ctx.build(make_spec("negbin", xi=0.5, mu=2.0)))
    )
    measured = [poisson_G(1.0), poisson_G(0.0), negbin_G(0.5)]
    return measured, [1.0, math.exp(-2.0), 4.0 / 9.0]
