"""Generating functions G(z) = sum_n p_n z^n and the families defined through them."""
import logging
import math

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.special import gammaln, logsumexp

from fockledger.errors import InvalidParams, ZeroState
from fockledger.fock import (
    DEFAULT_TAIL_TOL,
    EPS_NEG,
    EPS_NORM,
    EPS_ZERO,
    CutoffPolicy,
    PhotonDistribution,
    ProbabilitySource,
    ensure_cutoff,
    search_cutoff,
)
from fockledger.statistics import SINGULAR_VACUUM_GAP

logger = logging.getLogger(__name__)

EVAL_MARGIN = 1e-9
DOMAIN_RTOL = 1e-12
K_SUM_RTOL = 1e-18
K_SUM_CAP = 1_000_000
K_SUM_BLOCK = 4096

MINUS = "minus"
PLUS = "plus"
TILDE_MINUS = "tilde_minus"
TILDE_PLUS = "tilde_plus"
TRANSFORMS = [MINUS, PLUS, TILDE_MINUS, TILDE_PLUS]


class GenFun(object):
    """A truncated generating function, stored by its Taylor coefficients at z=0.

    Coefficients that fail validation (a negative p_n or G(1) != 1) are kept
    and flagged through :attr:`valid`, so candidate functions can be inspected.

    :param coeffs: The coefficients p_0..p_N.
    :type coeffs: sequence of float
    :param tail_tol: The admitted mass beyond the cutoff.
    :type tail_tol: float
    """

    def __init__(self, coeffs, tail_tol=DEFAULT_TAIL_TOL):
        coeffs = np.array(coeffs, dtype=float)
        if coeffs.ndim != 1 or coeffs.shape[0] == 0:
            raise InvalidParams("coefficients must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(coeffs)):
            raise InvalidParams("coefficients must be finite")
        coeffs.setflags(write=False)
        self.coeffs = coeffs
        self.tail_tol = float(tail_tol)

    @classmethod
    def from_distribution(cls, dist):
        return cls(dist.probs, dist.tail_tol)

    @property
    def cutoff(self):
        return self.coeffs.shape[0] - 1

    @property
    def valid(self):
        total = float(np.sum(self.coeffs))
        return bool(
            np.all(self.coeffs >= -EPS_NEG)
            and 1.0 - self.tail_tol - EPS_NORM <= total <= 1.0 + EPS_NORM
        )

    def to_distribution(self):
        """Return the coefficients as a PhotonDistribution.

        :raises InvalidDistribution: if the coefficients are not probabilities.
        """
        return PhotonDistribution(self.coeffs, self.tail_tol)

    def derivative(self, r):
        """Return the r-th derivative at z=1, the factorial moment n^(r)."""

        if int(r) != r or r < 0:
            raise InvalidParams(f"derivative order must be an integer >= 0, got {r}")
        if r == 0:
            return float(np.sum(self.coeffs))
        return float(np.sum(P.polyder(self.coeffs, int(r))))

    def __call__(self, z):
        return eval_genfun(self, z)

    def __repr__(self):
        cls_name = type(self).__name__
        return f"{cls_name}(cutoff={self.cutoff}, valid={self.valid})"


class NegativityReport(object):
    """A candidate generating function whose Taylor coefficients go negative.

    :param index: The first n with p_n < -EPS_NEG.
    :param value: That coefficient.
    """

    def __init__(self, index, value, nbar, gamma, coeffs):
        self.index = index
        self.value = value
        self.nbar = nbar
        self.gamma = gamma
        self.coeffs = coeffs

    def to_dict(self):
        return {
            "index": self.index,
            "value": self.value,
            "nbar": self.nbar,
            "gamma": self.gamma,
        }

    def __repr__(self):
        cls_name = type(self).__name__
        return f"{cls_name}(index={self.index}, value={self.value:.3e})"


def eval_genfun(G, z, margin=EVAL_MARGIN):
    """Evaluate the truncated series at z by Horner's rule.

    :raises InvalidParams: outside the disk |z| <= 1 + margin.
    """

    if abs(z) > 1.0 + margin:
        raise InvalidParams(f"|z| = {abs(z)} lies outside the unit disk")
    value = P.polyval(z, G.coeffs)
    return float(value) if np.isrealobj(value) else complex(value)


def transform(G, kind, nbar=None, p0=None):
    """Transform G under a, a^dagger, E_- or E_+.

    - minus: G_-(z) = G'(z) / nbar
    - plus: G_+(z) = z d/dz[z G(z)] / (1 + nbar)
    - tilde_minus: (G(z) - p_0) / (z (1 - p_0))
    - tilde_plus: z G(z)

    :param G: The generating function of the initial state.
    :type G: GenFun
    :param kind: One of TRANSFORMS.
    :type kind: str
    :param nbar: The mean, defaults to G'(1).
    :param p0: The vacuum probability, defaults to the constant coefficient.
    :raises ZeroState: on the singular branches (nbar = 0 for minus, p_0 = 1
        for tilde_minus).
    """

    coeffs = G.coeffs
    n = np.arange(coeffs.shape[0], dtype=float)
    if nbar is None:
        nbar = G.derivative(1)
    if p0 is None:
        p0 = float(coeffs[0])

    if kind == MINUS:
        if coeffs.shape[0] == 1 or not nbar > EPS_ZERO:
            raise ZeroState("the minus transform of the vacuum is singular")
        new = n[1:] * coeffs[1:] / nbar
    elif kind == PLUS:
        new = np.zeros(coeffs.shape[0] + 1)
        new[1:] = (n + 1) * coeffs / (1.0 + nbar)
    elif kind == TILDE_MINUS:
        if coeffs.shape[0] == 1 or 1.0 - p0 < SINGULAR_VACUUM_GAP:
            raise ZeroState(f"the tilde-minus transform is singular at p_0 = {p0}")
        new = coeffs[1:] / (1.0 - p0)
    elif kind == TILDE_PLUS:
        new = np.zeros(coeffs.shape[0] + 1)
        new[1:] = coeffs
    else:
        raise InvalidParams(f"Unrecognized transform: {kind}")

    return GenFun(new, G.tail_tol)


def _padded(a, size):
    out = np.zeros(size, dtype=float)
    a = np.asarray(a, dtype=float)[:size]
    out[: a.shape[0]] = a
    return out


def series_mul(a, b, size=None):
    """First ``size`` coefficients of the product of two power series."""

    if size is None:
        size = max(len(a), len(b))
    return _padded(P.polymul(a, b), size)


def series_exp(f, size=None):
    """Coefficients of exp(f(x)) from E' = f'E."""

    if size is None:
        size = len(f)
    f = _padded(f, size)
    k = np.arange(size, dtype=float)
    out = np.zeros(size)
    out[0] = math.exp(f[0])
    for m in range(1, size):
        out[m] = np.dot(k[1 : m + 1] * f[1 : m + 1], out[m - 1 :: -1][:m]) / m
    return out


def series_log(h, size=None):
    """Coefficients of log(h(x)) from L' = h'/h.

    :raises InvalidParams: unless h(0) > 0.
    """

    if size is None:
        size = len(h)
    h = _padded(h, size)
    if not h[0] > 0:
        raise InvalidParams(f"series_log needs h(0) > 0, got {h[0]}")

    k = np.arange(size, dtype=float)
    out = np.zeros(size)
    out[0] = math.log(h[0])
    for m in range(1, size):
        carry = np.dot(k[1:m] * out[1:m], h[m - 1 : 0 : -1]) / m
        out[m] = (h[m] - carry) / h[0]
    return out


def _policy(policy):
    return policy if policy is not None else CutoffPolicy.from_config()


def _positive(name, value):
    if not value > 0 or not math.isfinite(value):
        raise InvalidParams(f"{name} must be positive and finite, got {value}")


def gamma_boundary(gamma):
    """The largest admissible nbar of the gamma family, |ln(1 - gamma)| / gamma.

    Unbounded (inf) for gamma >= 1.
    """

    _positive("gamma", gamma)
    if gamma >= 1.0:
        return math.inf
    return -math.log1p(-gamma) / gamma


def gamma_family(nbar, gamma, policy=None):
    """The family G = 1 - 1/gamma + exp(gamma nbar (z - 1)) / gamma.

    Its subtracted state has N_- = gamma nbar; gamma = 1 is Poisson.

    :raises InvalidParams: if gamma nbar > |ln(1 - gamma)| for gamma < 1,
        where p_0 would be negative.
    :rtype: PhotonDistribution
    """

    _positive("nbar", nbar)
    _positive("gamma", gamma)
    bound = gamma_boundary(gamma)
    if nbar > bound * (1.0 + DOMAIN_RTOL):
        raise InvalidParams(
            f"gamma family needs gamma*nbar <= |ln(1-gamma)|: nbar={nbar} exceeds "
            f"{bound} at gamma={gamma}"
        )

    mean = gamma * nbar
    p0 = (gamma + math.expm1(-mean)) / gamma

    def probs(n):
        n = np.asarray(n, dtype=float)
        values = np.exp(-mean + n * math.log(mean) - gammaln(n + 1)) / gamma
        values[n == 0] = p0
        return values

    dist = ensure_cutoff(
        ProbabilitySource(probs, normalized=True, name=f"gamma({nbar},{gamma})"),
        _policy(policy),
    )
    logger.debug(f"gamma family nbar={nbar} gamma={gamma}: cutoff {dist.cutoff}")
    return dist


def cosh_family(nbar, gamma, policy=None):
    """The cosh/sinh candidate G = cosh(a(z - 1)) + sinh(a(z - 1)) / sqrt(gamma).

    With a = nbar sqrt(gamma), p_n = [(1 + s) e^{-a} a^n + (1 - s) e^a (-a)^n] / (2 n!)
    and s = gamma^(-1/2). Only for some (nbar, gamma) are all p_n nonnegative.

    :return: The distribution, or a NegativityReport at the first negative p_n.
    :rtype: PhotonDistribution or NegativityReport
    """

    _positive("nbar", nbar)
    _positive("gamma", gamma)
    a = nbar * math.sqrt(gamma)
    s = 1.0 / math.sqrt(gamma)

    def probs(n):
        n = np.asarray(n, dtype=float)
        log_poisson = n * math.log(a) - gammaln(n + 1)
        values = 0.5 * (1.0 + s) * np.exp(log_poisson - a)
        if s != 1.0:
            sign = np.where(n % 2 == 0, 1.0, -1.0)
            values += 0.5 * (1.0 - s) * sign * np.exp(log_poisson + a)
        return values

    policy = _policy(policy)
    coeffs = search_cutoff(
        probs, np.abs, normalized=False, policy=policy, name=f"cosh({nbar},{gamma})"
    )
    negative = np.flatnonzero(coeffs < -EPS_NEG)
    if negative.shape[0] > 0:
        index = int(negative[0])
        logger.debug(f"cosh family nbar={nbar} gamma={gamma}: p_{index} < 0")
        return NegativityReport(index, float(coeffs[index]), nbar, gamma, coeffs)
    return PhotonDistribution(np.clip(coeffs, 0.0, None), policy.tail_tol)


def log_q_bound(q):
    """The largest nbar with p_0 >= 0 in the logarithmic-q family."""

    _positive("q", q)
    return q * (math.e - 1.0) / -math.expm1(-q)


def _check_log_q(nbar, q):
    _positive("nbar", nbar)
    _positive("q", q)
    bound = log_q_bound(q)
    if nbar > bound * (1.0 + DOMAIN_RTOL):
        raise InvalidParams(
            f"logarithmic family needs nbar <= q(e-1)/(1-e^-q) = {bound} at q={q}, "
            f"got nbar={nbar}"
        )


def _log_q_h(nbar, q, size):
    k = np.arange(size, dtype=float)
    h = -(nbar / q) * np.exp(k * math.log(q) - gammaln(k + 1) - q)
    h[0] = 1.0 + (nbar / q) * -math.expm1(-q)
    return h


def log_q_family(nbar, q, policy=None):
    """The family G = 1 - ln[1 + (nbar/q)(1 - e^{q(z-1)})] with Mandel q = q.

    Coefficients come from the series logarithm of the bracket, whose
    coefficients beyond the constant all share one sign.

    :raises InvalidParams: if nbar > q(e-1)/(1-e^-q).
    :rtype: PhotonDistribution
    """

    _check_log_q(nbar, q)

    def probs(n):
        size = int(np.max(n)) + 1
        values = -series_log(_log_q_h(nbar, q, size))
        values[0] += 1.0
        return values[np.asarray(n, dtype=int)]

    dist = ensure_cutoff(
        ProbabilitySource(probs, normalized=True, name=f"logq({nbar},{q})"), _policy(policy)
    )
    logger.debug(f"logarithmic family nbar={nbar} q={q}: cutoff {dist.cutoff}")
    return dist


def log_q_probability(n, nbar, q):
    """p_n of the logarithmic-q family from the explicit sum over k.

    p_0 = ln[q e / (q + nbar(1 - e^-q))] and
    p_n = q^n/n! sum_{k>=1} k^{n-1} x^k with x = nbar e^-q / (q + nbar).
    The sum stops once terms past their peak fall below 1e-18 of the total.

    :raises InvalidParams: if the sum needs more than a million terms.
    """

    _check_log_q(nbar, q)
    if int(n) != n or n < 0:
        raise InvalidParams(f"n must be an integer >= 0, got {n}")
    if n == 0:
        return 1.0 + math.log(q) - math.log(q + nbar * -math.expm1(-q))

    log_x = math.log(nbar) - q - math.log(q + nbar)
    peak = (n - 1) / -log_x
    prefix = n * math.log(q) - gammaln(n + 1)
    threshold = math.log(K_SUM_RTOL)

    total = -math.inf
    start = 1
    while start <= K_SUM_CAP:
        k = np.arange(start, min(start + K_SUM_BLOCK, K_SUM_CAP + 1), dtype=float)
        terms = (n - 1) * np.log(k) + k * log_x
        total = np.logaddexp(total, logsumexp(terms))
        if k[-1] > peak and terms[-1] - total < threshold:
            return float(np.exp(prefix + total))
        start = int(k[-1]) + 1

    raise InvalidParams(
        f"k-sum for p_{n} at nbar={nbar}, q={q} did not converge in {K_SUM_CAP} terms"
    )


def log0_family(nbar, policy=None):
    """The q -> 0 limit G = 1 - ln[1 - nbar(z - 1)], a non-Poissonian state with q = 0.

    :raises InvalidParams: if nbar > e - 1.
    :rtype: PhotonDistribution
    """

    _positive("nbar", nbar)
    bound = math.e - 1.0
    if nbar > bound * (1.0 + DOMAIN_RTOL):
        raise InvalidParams(f"nbar={nbar} exceeds the bound e-1 = {bound}")

    p0 = 1.0 - math.log1p(nbar)
    log_x = math.log(nbar) - math.log1p(nbar)

    def probs(n):
        n = np.asarray(n, dtype=float)
        values = np.zeros(n.shape[0])
        positive = n > 0
        values[positive] = np.exp(n[positive] * log_x - np.log(n[positive]))
        values[~positive] = p0
        return values

    return ensure_cutoff(
        ProbabilitySource(probs, normalized=True, name=f"log0({nbar})"), _policy(policy)
    )


def balazs_moments(nbar, A, r):
    """Factorial moment n^(r) read off Q_1(x) = ln[(1-A) nbar x + 1]/(A-1) + 1.

    Q_1 is the generating function sum_r (-x)^r n^(r) / r!, so
    n^(r) = (-1)^r r! [x^r] Q_1 = (r-1)! (1-A)^(r-1) nbar^r.
    """

    _positive("nbar", nbar)
    if not A >= 0 or not math.isfinite(A):
        raise InvalidParams(f"A must be nonnegative, got {A}")
    if int(r) != r or r < 1:
        raise InvalidParams(f"moment order must be an integer >= 1, got {r}")
    r = int(r)

    if abs(1.0 - A) < EPS_NORM:
        # Q_1 = 1 - nbar x
        return nbar if r == 1 else 0.0

    q1 = series_log([1.0, (1.0 - A) * nbar], r + 1) / (A - 1.0)
    q1[0] += 1.0
    return float((-1) ** r * math.factorial(r) * q1[r])
