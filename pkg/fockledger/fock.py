"""Pure states and photon-number distributions on a truncated Fock basis.

Every object carries its own ``tail_tol``: the probability mass that was
admitted to lie above the cutoff when the object was built. Values are
immutable after construction (the numpy buffers are flagged read-only).
"""
import csv
import logging

import numpy as np

from fockledger.errors import CutoffOverflow, InvalidDistribution, InvalidParams, ZeroState
from fockledger.meta import Meta

logger = logging.getLogger(__name__)

EPS_NORM = 1e-12
EPS_NEG = 1e-12
EPS_ZERO = 1e-300
DEFAULT_TAIL_TOL = 1e-12
DEFAULT_MAX_CUTOFF = 4096


def _frozen(values, dtype, what):
    array = np.array(values, dtype=dtype)
    if array.ndim != 1 or array.shape[0] == 0:
        raise InvalidParams(f"{what} must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(array)):
        raise InvalidParams(f"{what} must be finite")
    array.setflags(write=False)
    return array


class CutoffPolicy(object):
    """How far the Fock basis may grow and how much tail mass may be dropped.

    :param tail_tol: The admitted probability mass beyond the cutoff.
    :type tail_tol: float
    :param max_cutoff: The largest admissible cutoff.
    :type max_cutoff: int
    :param initial_cutoff: The first grid size of the adaptive search.
    :type initial_cutoff: int
    :param moment_order: When k > 0 the (1+n)^k weighted tail must also stay
        below tail_tol relative to the weighted total, which keeps factorial
        moments up to order k accurate.
    :type moment_order: int
    """

    def __init__(
        self,
        tail_tol=DEFAULT_TAIL_TOL,
        max_cutoff=DEFAULT_MAX_CUTOFF,
        initial_cutoff=32,
        moment_order=0,
    ):
        if not tail_tol > 0:
            raise InvalidParams(f"tail_tol must be positive, got {tail_tol}")
        if int(max_cutoff) < 0:
            raise InvalidParams(f"max_cutoff must be nonnegative, got {max_cutoff}")
        if int(initial_cutoff) < 1:
            raise InvalidParams(f"initial_cutoff must be >= 1, got {initial_cutoff}")
        if int(moment_order) < 0:
            raise InvalidParams(f"moment_order must be >= 0, got {moment_order}")

        self.tail_tol = float(tail_tol)
        self.max_cutoff = int(max_cutoff)
        self.initial_cutoff = int(initial_cutoff)
        self.moment_order = int(moment_order)

    @classmethod
    def from_config(cls, **overrides):
        """Build the policy from ``Meta.config["fock_config"]``.

        :param overrides: Fields to replace; ``None`` values are ignored.
        """

        config = Meta.get_config()["fock_config"]
        params = {
            "tail_tol": float(config["tail_tol"]),
            "max_cutoff": int(config["max_cutoff"]),
            "initial_cutoff": int(config["initial_cutoff"]),
            "moment_order": int(config["moment_order"]),
        }
        params.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**params)

    def replace(self, **kwargs):
        params = {
            "tail_tol": self.tail_tol,
            "max_cutoff": self.max_cutoff,
            "initial_cutoff": self.initial_cutoff,
            "moment_order": self.moment_order,
        }
        params.update(kwargs)
        return CutoffPolicy(**params)

    def __repr__(self):
        cls_name = type(self).__name__
        return (
            f"{cls_name}(tail_tol={self.tail_tol}, max_cutoff={self.max_cutoff}, "
            f"initial_cutoff={self.initial_cutoff}, moment_order={self.moment_order})"
        )


class FockState(object):
    """A pure state c_0|0> + ... + c_N|N> with N = cutoff.

    :param amplitudes: Complex amplitudes c_0..c_N.
    :type amplitudes: sequence of complex
    :param tail_tol: The admitted probability mass beyond the cutoff.
    :type tail_tol: float
    """

    def __init__(self, amplitudes, tail_tol=DEFAULT_TAIL_TOL):
        self.amplitudes = _frozen(amplitudes, complex, "amplitudes")
        self.tail_tol = float(tail_tol)

    @property
    def cutoff(self):
        return self.amplitudes.shape[0] - 1

    @property
    def probabilities(self):
        return np.abs(self.amplitudes) ** 2

    def norm_sq(self):
        return float(np.sum(self.probabilities))

    def __repr__(self):
        cls_name = type(self).__name__
        return f"{cls_name}(cutoff={self.cutoff}, tail_tol={self.tail_tol})"


class PhotonDistribution(object):
    """Photon-number probabilities p_0..p_N.

    Values in (-EPS_NEG, 0) are rounding noise and are clamped to 0.

    :param probs: The probabilities.
    :type probs: sequence of float
    :param tail_tol: The admitted probability mass beyond the cutoff.
    :type tail_tol: float
    """

    def __init__(self, probs, tail_tol=DEFAULT_TAIL_TOL):
        probs = np.array(probs, dtype=float)
        if probs.ndim != 1 or probs.shape[0] == 0:
            raise InvalidDistribution("probabilities must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(probs)):
            raise InvalidDistribution("probabilities must be finite")

        negative = np.flatnonzero(probs < -EPS_NEG)
        if negative.shape[0] > 0:
            n = int(negative[0])
            raise InvalidDistribution(f"p_{n} = {probs[n]:.3e} is negative")
        if np.any(probs < 0):
            logger.warning(f"Clamping {int(np.sum(probs < 0))} rounding negatives to 0.")
            probs[probs < 0] = 0.0

        total = float(np.sum(probs))
        if total < 1.0 - tail_tol - EPS_NORM or total > 1.0 + EPS_NORM:
            raise InvalidDistribution(
                f"probabilities sum to {total!r}, outside "
                f"[1 - {tail_tol}, 1 + {EPS_NORM}]"
            )

        probs.setflags(write=False)
        self.probs = probs
        self.tail_tol = float(tail_tol)

    @property
    def cutoff(self):
        return self.probs.shape[0] - 1

    def __repr__(self):
        cls_name = type(self).__name__
        return f"{cls_name}(cutoff={self.cutoff}, tail_tol={self.tail_tol})"


class AmplitudeSource(object):
    """An amplitude formula n -> c_n evaluated lazily by :func:`ensure_cutoff`.

    :param fn: Vectorized function of an integer index array.
    :type fn: callable
    :param normalized: Whether sum |c_n|^2 over all n is exactly 1.
    :type normalized: bool
    :param name: Name used in log and error messages.
    :type name: str
    """

    def __init__(self, fn, normalized=False, name="amplitudes"):
        self.fn = fn
        self.normalized = normalized
        self.name = name

    def __call__(self, n):
        return np.asarray(self.fn(n), dtype=complex)


class ProbabilitySource(object):
    """A probability formula n -> p_n evaluated lazily by :func:`ensure_cutoff`.

    :param fn: Vectorized function of an integer index array.
    :type fn: callable
    :param normalized: Whether sum p_n over all n is exactly 1.
    :type normalized: bool
    :param name: Name used in log and error messages.
    :type name: str
    """

    def __init__(self, fn, normalized=True, name="probabilities"):
        self.fn = fn
        self.normalized = normalized
        self.name = name

    def __call__(self, n):
        return np.asarray(self.fn(n), dtype=float)


def _accepted_cutoff(weights, normalized, policy, limit):
    """Smallest M <= limit whose tail above M is admissible, else None."""

    total = 1.0 if normalized else float(np.sum(weights))
    if not total > 0:
        return None

    ok = total - np.cumsum(weights) <= policy.tail_tol * total
    if policy.moment_order > 0:
        n = np.arange(weights.shape[0])
        moment = weights * (1.0 + n) ** policy.moment_order
        moment_total = float(np.sum(moment))
        ok &= moment_total - np.cumsum(moment) <= policy.tail_tol * moment_total

    accepted = np.flatnonzero(ok[: limit + 1])
    return int(accepted[0]) if accepted.shape[0] > 0 else None


def search_cutoff(evaluate, weights_of, normalized, policy, name="source"):
    """Evaluate a formula on doubling grids until the tail is admissible.

    The grid 0..2S is evaluated for S = initial_cutoff, 2 initial_cutoff, ...;
    the accepted cutoff must lie in the lower half so that the upper half
    measures the tail when the total mass is not known.

    :param evaluate: Function of an index array returning values.
    :type evaluate: callable
    :param weights_of: Maps values to nonnegative probability weights.
    :type weights_of: callable
    :param normalized: Whether the total weight over all n is exactly 1.
    :type normalized: bool
    :param policy: The cutoff policy.
    :type policy: CutoffPolicy
    :return: The values on 0..M.
    :rtype: np.ndarray
    """

    size = policy.initial_cutoff
    while True:
        values = evaluate(np.arange(2 * size + 1))
        cutoff = _accepted_cutoff(weights_of(values), normalized, policy, size)
        if cutoff is not None:
            if cutoff > policy.max_cutoff:
                raise CutoffOverflow(
                    f"{name} needs cutoff {cutoff} > max_cutoff {policy.max_cutoff} "
                    f"for tail_tol={policy.tail_tol}"
                )
            logger.debug(f"{name}: cutoff {cutoff} for tail_tol={policy.tail_tol}")
            return values[: cutoff + 1]
        if size >= policy.max_cutoff:
            raise CutoffOverflow(
                f"{name}: tail mass above max_cutoff {policy.max_cutoff} still "
                f"exceeds tail_tol={policy.tail_tol}"
            )
        size *= 2


def _cap(values, weights, policy, name):
    if values.shape[0] - 1 <= policy.max_cutoff:
        return values
    dropped = float(np.sum(weights[policy.max_cutoff + 1 :]))
    if dropped > policy.tail_tol:
        raise CutoffOverflow(
            f"{name} has mass {dropped:.3e} above max_cutoff {policy.max_cutoff}"
        )
    logger.debug(f"{name}: dropping mass {dropped:.3e} above {policy.max_cutoff}")
    return values[: policy.max_cutoff + 1]


def ensure_cutoff(obj, policy=None):
    """Fix the cutoff of a state, distribution or lazily evaluated source.

    Sources are evaluated on growing grids until the mass above the cutoff is
    below ``policy.tail_tol``. Materialized states/distributions are checked
    against ``policy.max_cutoff``; content above it may only be dropped when
    its mass is below ``policy.tail_tol``.

    :param obj: The object to fix.
    :type obj: FockState, PhotonDistribution, AmplitudeSource or ProbabilitySource
    :param policy: The cutoff policy, defaults to the configured one.
    :type policy: CutoffPolicy, optional
    :return: FockState for states and amplitude sources, PhotonDistribution for
        distributions and probability sources.
    """

    if policy is None:
        policy = CutoffPolicy.from_config()

    if isinstance(obj, AmplitudeSource):
        amplitudes = search_cutoff(
            obj, lambda values: np.abs(values) ** 2, obj.normalized, policy, obj.name
        )
        return FockState(amplitudes, policy.tail_tol)
    elif isinstance(obj, ProbabilitySource):
        probs = search_cutoff(
            obj, lambda values: np.clip(values, 0.0, None), obj.normalized, policy, obj.name
        )
        return PhotonDistribution(probs, policy.tail_tol)
    elif isinstance(obj, FockState):
        amplitudes = _cap(
            obj.amplitudes, obj.probabilities, policy, "state"
        )
        if amplitudes is obj.amplitudes:
            return obj
        return FockState(amplitudes, max(obj.tail_tol, policy.tail_tol))
    elif isinstance(obj, PhotonDistribution):
        probs = _cap(obj.probs, obj.probs, policy, "distribution")
        if probs is obj.probs:
            return obj
        return PhotonDistribution(probs, max(obj.tail_tol, policy.tail_tol))
    else:
        raise InvalidParams(f"Unrecognized type {type(obj)} for ensure_cutoff")


def normalize(state):
    """Rescale a state to unit norm, keeping the phases.

    :raises ZeroState: if every amplitude is below EPS_ZERO.
    """

    amplitudes = state.amplitudes
    scale = float(np.max(np.abs(amplitudes)))
    if not scale > EPS_ZERO:
        raise ZeroState("all amplitudes vanish; the zero vector is not a state")

    scaled = amplitudes / scale
    norm = scale * np.sqrt(np.sum(np.abs(scaled) ** 2))
    return FockState(amplitudes / norm, state.tail_tol)


def inner_product(a, b):
    """Return <a|b>, zero-padding the shorter amplitude vector."""

    size = max(a.amplitudes.shape[0], b.amplitudes.shape[0])
    left = np.zeros(size, dtype=complex)
    right = np.zeros(size, dtype=complex)
    left[: a.amplitudes.shape[0]] = a.amplitudes
    right[: b.amplitudes.shape[0]] = b.amplitudes
    return complex(np.vdot(left, right))


def fidelity(a, b):
    return abs(inner_product(a, b)) ** 2


def mean_photon_number(state):
    n = np.arange(state.amplitudes.shape[0])
    return float(np.sum(n * state.probabilities))


def distribution_of(state):
    """Return the photon-number distribution p_n = |c_n|^2 of a normalized state."""

    return PhotonDistribution(state.probabilities, state.tail_tol)


def state_from_distribution(dist, phases=None):
    """Build the pure state sum_n exp(i phi_n) sqrt(p_n) |n>.

    :param dist: The distribution; raw sequences are validated first.
    :type dist: PhotonDistribution or sequence of float
    :param phases: The phases phi_n; missing entries default to 0.
    :type phases: sequence of float, optional
    :raises InvalidDistribution: if the probabilities are not a distribution.
    """

    if not isinstance(dist, PhotonDistribution):
        dist = PhotonDistribution(dist)

    probs = dist.probs
    phi = np.zeros(probs.shape[0])
    if phases is not None:
        phases = np.asarray(phases, dtype=float).reshape(-1)
        count = min(phases.shape[0], phi.shape[0])
        phi[:count] = phases[:count]

    return FockState(np.sqrt(probs) * np.exp(1j * phi), dist.tail_tol)


def _probabilities_of(obj):
    if isinstance(obj, PhotonDistribution):
        return obj.probs
    elif hasattr(obj, "coeffs"):
        return obj.coeffs
    raise InvalidParams(f"Unrecognized type {type(obj)} to dump as a distribution")


def dump_distribution(obj, path):
    """Write ``n,p_n`` CSV with 17 significant digits.

    :param obj: A PhotonDistribution or a GenFun.
    :param path: The output path.
    :type path: str
    """

    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["n", "p_n"])
        for n, p in enumerate(_probabilities_of(obj)):
            writer.writerow([n, f"{p:.17g}"])
    logger.info(f"Writing distribution to {path}")


def dump_state(state, path):
    """Write ``n,re_c,im_c`` CSV with 17 significant digits."""

    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["n", "re_c", "im_c"])
        for n, c in enumerate(state.amplitudes):
            writer.writerow([n, f"{c.real:.17g}", f"{c.imag:.17g}"])
    logger.info(f"Writing state to {path}")


def load_distribution(path, tail_tol=DEFAULT_TAIL_TOL):
    """Read a distribution written by :func:`dump_distribution`."""

    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))

    try:
        indices = [int(row["n"]) for row in rows]
        values = [float(row["p_n"]) for row in rows]
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidDistribution(f"{path} is not an n,p_n table: {e}")
    if indices != list(range(len(rows))):
        raise InvalidDistribution(f"{path} must list n = 0, 1, 2, ... in order, got {indices}")
    return PhotonDistribution(values, tail_tol)
