import logging
import math

import numpy as np

from fockledger.errors import InvalidDistribution, InvalidParams
from fockledger.fock import EPS_ZERO, FockState, PhotonDistribution, distribution_of
from fockledger.meta import Meta

logger = logging.getLogger(__name__)

# Below this 1 - p_0 the exp-phase lowering branch is singular
SINGULAR_VACUUM_GAP = 1e-14

SUB_POISSONIAN = "SubPoissonian"
POISSONIAN = "Poissonian"
SUPER_POISSONIAN = "SuperPoissonian"
SUPER_CHAOTIC = "SuperChaotic"
HYPER_POISSONIAN = "HyperPoissonian"

STATISTICS_CLASSES = [
    SUB_POISSONIAN,
    POISSONIAN,
    SUPER_POISSONIAN,
    SUPER_CHAOTIC,
    HYPER_POISSONIAN,
]


def _probs(dist):
    if isinstance(dist, PhotonDistribution):
        return dist.probs
    elif isinstance(dist, FockState):
        return dist.probabilities
    elif hasattr(dist, "coeffs"):
        return dist.coeffs
    elif isinstance(dist, np.ndarray):
        return dist
    raise InvalidDistribution(f"Unrecognized type {type(dist)} for statistics")


def _distribution(dist):
    if isinstance(dist, PhotonDistribution):
        return dist
    elif isinstance(dist, FockState):
        return distribution_of(dist)
    elif hasattr(dist, "to_distribution"):
        return dist.to_distribution()
    elif isinstance(dist, (np.ndarray, list, tuple)):
        return PhotonDistribution(dist)
    raise InvalidDistribution(f"Unrecognized type {type(dist)} for statistics")


def poissonian_band():
    return float(Meta.get_config()["statistics_config"]["poissonian_band"])


def factorial_moment(dist, r):
    """Return n^(r) = sum_n n(n-1)...(n-r+1) p_n by direct summation.

    :param dist: The distribution (or state, or coefficient array).
    :param r: The order, r >= 1.
    :type r: int
    """

    if int(r) != r or r < 1:
        raise InvalidParams(f"factorial moment order must be an integer >= 1, got {r}")

    probs = _probs(dist)
    n = np.arange(probs.shape[0], dtype=float)
    falling = np.ones_like(n)
    for j in range(int(r)):
        falling *= n - j
    return float(np.sum(falling * probs))


def classify(mean, mandel_q, band=None):
    """Return the strongest statistics tier, or None for the vacuum.

    Tiers are nested: HyperPoissonian (q > 1 + 2 nbar) implies SuperChaotic
    (q > nbar) implies SuperPoissonian (q > 0). Comparisons use the
    Poissonian band, so a state sitting on a tier boundary reports the
    weaker tier.
    """

    if mandel_q is None:
        return None
    if band is None:
        band = poissonian_band()

    if abs(mandel_q) <= band:
        return POISSONIAN
    elif mandel_q < 0:
        return SUB_POISSONIAN
    elif mandel_q > 1.0 + 2.0 * mean + band:
        return HYPER_POISSONIAN
    elif mandel_q > mean + band:
        return SUPER_CHAOTIC
    else:
        return SUPER_POISSONIAN


class StatsReport(object):
    """Photon-counting statistics of one distribution.

    ``mandel_q``, ``g2`` and ``klass`` are None for the vacuum, where q is 0/0.
    """

    def __init__(self, mean, variance, factorial_moments, mandel_q, g2, klass):
        self.mean = mean
        self.variance = variance
        self.factorial_moments = factorial_moments
        self.mandel_q = mandel_q
        self.g2 = g2
        self.klass = klass

    def to_dict(self):
        return {
            "mean": self.mean,
            "variance": self.variance,
            "factorial_moments": list(self.factorial_moments),
            "mandel_q": self.mandel_q,
            "g2": self.g2,
            "klass": self.klass,
        }

    def __repr__(self):
        cls_name = type(self).__name__
        return (
            f"{cls_name}(mean={self.mean}, mandel_q={self.mandel_q}, "
            f"klass={self.klass})"
        )


class PredictionReport(object):
    """Closed-form means after each operator, computed from the initial moments.

    Singular branches are None: the minus branch for the vacuum, q_minus when
    the subtracted state is the vacuum, the tilde-minus branch when p_0 = 1.
    """

    def __init__(self, n_minus, n_plus, q_minus, n_tilde_minus, n_tilde_plus, q_tilde):
        self.n_minus = n_minus
        self.n_plus = n_plus
        self.q_minus = q_minus
        self.n_tilde_minus = n_tilde_minus
        self.n_tilde_plus = n_tilde_plus
        self.q_tilde = q_tilde

    def to_dict(self):
        return {
            "n_minus": self.n_minus,
            "n_plus": self.n_plus,
            "q_minus": self.q_minus,
            "n_tilde_minus": self.n_tilde_minus,
            "n_tilde_plus": self.n_tilde_plus,
            "q_tilde": self.q_tilde,
        }


class HyperCheck(object):
    """Outcome of the hyper-Poissonian test q > 1 + 2 nbar.

    ``direct`` is N_- > N_+ evaluated from the sums, independently of q.
    """

    def __init__(self, holds, mandel_q, bound, n_minus, n_plus, direct):
        self.holds = holds
        self.mandel_q = mandel_q
        self.bound = bound
        self.n_minus = n_minus
        self.n_plus = n_plus
        self.direct = direct

    def __bool__(self):
        return self.holds

    def to_dict(self):
        return {
            "holds": self.holds,
            "mandel_q": self.mandel_q,
            "bound": self.bound,
            "n_minus": self.n_minus,
            "n_plus": self.n_plus,
            "direct": self.direct,
        }


class TwoFockAnalysis(object):
    """Closed forms for sqrt(r)|n> + sqrt(1-r)|m>."""

    def __init__(self, n, m, r):
        self.n = n
        self.m = m
        self.r = r

        self.nbar = r * n + (1 - r) * m
        self.n_minus = (r * n * (n - 1) + (1 - r) * m * (m - 1)) / self.nbar
        self.q = self.n_minus - self.nbar
        self.condition_holds = r * (1 - r) * (n - m) ** 2 > r * (n - m) + m
        self.q_minus_limit = (1 - r) * m / r - 1

        n2 = r * n * (n - 1) + (1 - r) * m * (m - 1)
        n3 = r * n * (n - 1) * (n - 2) + (1 - r) * m * (m - 1) * (m - 2)
        self.q_minus = (self.nbar * n3 - n2 ** 2) / (self.nbar * n2) if n2 > 0 else None

        # relative weight of the low component, before and after subtraction
        self.weight_ratio_before = (1 - r) / r
        self.weight_ratio_after = (1 - r) * m / (r * n)
        self.weight_reduction = n / m if m > 0 else None

    def to_dict(self):
        return {
            "nbar": self.nbar,
            "n_minus": self.n_minus,
            "q": self.q,
            "condition_holds": self.condition_holds,
            "q_minus_limit": self.q_minus_limit,
            "q_minus": self.q_minus,
            "weight_ratio_before": self.weight_ratio_before,
            "weight_ratio_after": self.weight_ratio_after,
            "weight_reduction": self.weight_reduction,
        }


def stats(dist, band=None):
    """Compute the statistics of a distribution.

    :param dist: A distribution (a state is accepted through |c_n|^2).
    :type dist: PhotonDistribution or FockState
    :param band: The Poissonian band, defaults to the configured one.
    :type band: float, optional
    :rtype: StatsReport
    """

    probs = _distribution(dist).probs
    moments = [factorial_moment(probs, r) for r in range(1, 5)]
    mean = moments[0]
    variance = moments[1] + mean - mean ** 2

    if mean > EPS_ZERO:
        mandel_q = variance / mean - 1.0
        g2 = 1.0 + mandel_q / mean
        klass = classify(mean, mandel_q, band)
    else:
        mandel_q = None
        g2 = None
        klass = None

    return StatsReport(mean, variance, moments, mandel_q, g2, klass)


def predictions(dist):
    """Predict the operator means from the moments of the initial distribution.

    :param dist: The initial distribution.
    :type dist: PhotonDistribution or FockState
    :rtype: PredictionReport
    """

    probs = _distribution(dist).probs
    n1, n2, n3 = [factorial_moment(probs, r) for r in range(1, 4)]
    p0 = float(probs[0])
    variance = n2 + n1 - n1 ** 2

    n_minus = n2 / n1 if n1 > EPS_ZERO else None
    q_minus = (n1 * n3 - n2 ** 2) / (n1 * n2) if n2 > EPS_ZERO else None
    n_plus = n1 + 1.0 + variance / (1.0 + n1)

    if 1.0 - p0 >= SINGULAR_VACUUM_GAP:
        n_tilde_minus = n1 / (1.0 - p0) - 1.0
        q_tilde = p0 * n1 / (1.0 - p0) - 1.0
    else:
        n_tilde_minus = None
        q_tilde = None

    return PredictionReport(n_minus, n_plus, q_minus, n_tilde_minus, n1 + 1.0, q_tilde)


def check_hyper(dist):
    """Test the hyper-Poissonian condition q > 1 + 2 nbar.

    :raises InvalidParams: for the vacuum.
    :rtype: HyperCheck
    """

    dist = _distribution(dist)
    probs = dist.probs
    n = np.arange(probs.shape[0], dtype=float)
    nbar = float(np.sum(n * probs))
    if not nbar > EPS_ZERO:
        raise InvalidParams("the hyper-Poissonian test needs nbar > 0")

    mandel_q = stats(dist).mandel_q
    bound = 1.0 + 2.0 * nbar
    n_minus = float(np.sum(n * (n - 1) * probs)) / nbar
    n_plus = float(np.sum((n + 1) ** 2 * probs)) / float(np.sum((n + 1) * probs))

    return HyperCheck(mandel_q > bound, mandel_q, bound, n_minus, n_plus, n_minus > n_plus)


def two_fock_analysis(n, m, r):
    """Closed forms for the two-Fock superposition sqrt(r)|n> + sqrt(1-r)|m>.

    :param n: The upper Fock number.
    :type n: int
    :param m: The lower Fock number, 0 <= m < n.
    :type m: int
    :param r: The weight of |n>, 0 < r < 1.
    :type r: float
    :rtype: TwoFockAnalysis
    """

    if int(n) != n or int(m) != m or not n > m >= 0:
        raise InvalidParams(f"two-Fock needs integers n > m >= 0, got n={n}, m={m}")
    if not 0 < r < 1:
        raise InvalidParams(f"two-Fock needs 0 < r < 1, got r={r}")

    return TwoFockAnalysis(int(n), int(m), float(r))


def negbin_plus_excess(xi, mu):
    """N_+ - nbar for the negative binomial state (xi, mu)."""

    return 1.0 + xi / (1.0 - xi) + xi * (mu - 1.0) / (1.0 + xi * (mu - 1.0))


def tilde_excess_gamma(nbar, gamma):
    """(1 - p_0) q~ for the gamma family: nbar - (nbar + 1)(1 - e^{-gamma nbar})/gamma."""

    return nbar - (nbar + 1.0) * (-math.expm1(-gamma * nbar)) / gamma
