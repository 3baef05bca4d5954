import logging
from functools import wraps

import numpy as np

from fockledger.families import FAMILIES, build, random_spec
from fockledger.fock import distribution_of, normalize
from fockledger.utils.utils import claim_rng

logger = logging.getLogger(__name__)

IDENTITY = "identity"
LIMIT = "limit"

CLAIMS = dict()


class Claim(object):
    """A registered numerical claim.

    :param claim_id: Dotted identifier, grouped by its first component.
    :type claim_id: str
    :param anchor: The relation being checked, in words.
    :type anchor: str
    :param tolerance: A number, or IDENTITY / LIMIT for the configured defaults.
    :type tolerance: float or str
    :param func: ``func(ctx) -> (measured, expected)``.
    :type func: callable
    """

    def __init__(self, claim_id, anchor, tolerance, func):
        self.claim_id = claim_id
        self.anchor = anchor
        self.tolerance = tolerance
        self.func = func

    def tolerance_for(self, ctx):
        if self.tolerance == IDENTITY:
            return ctx.identity_tol
        elif self.tolerance == LIMIT:
            return ctx.limit_tol
        return float(self.tolerance)

    def __repr__(self):
        cls_name = type(self).__name__
        return f"{cls_name}({self.claim_id})"


class claim:
    """
    When wrapped with this decorator, a claim only needs to return the pair
    (measured, expected); the runner times it, compares within the tolerance and
    turns cutoff overflows into skips.
    """

    def __init__(self, claim_id, anchor, tolerance=IDENTITY):
        self.claim_id = claim_id
        self.anchor = anchor
        self.tolerance = tolerance

    def __call__(self, f):
        if self.claim_id in CLAIMS:
            raise ValueError(f"Duplicate claim: {self.claim_id}")

        @wraps(f)
        def wrapped_f(ctx):
            measured, expected = f(ctx)
            logger.debug(f"{self.claim_id}: measured {measured}, expected {expected}")
            return measured, expected

        CLAIMS[self.claim_id] = Claim(self.claim_id, self.anchor, self.tolerance, wrapped_f)
        return wrapped_f


class ClaimContext(object):
    """Everything one claim may depend on.

    The generator is derived from (seed, claim_id) only.
    """

    def __init__(self, claim_id, seed, draws, policy, identity_tol, limit_tol):
        self.claim_id = claim_id
        self.seed = seed
        self.draws = draws
        self.policy = policy
        self.identity_tol = identity_tol
        self.limit_tol = limit_tol
        self.rng = claim_rng(seed, claim_id)
        self.details = dict()

    def build(self, spec, policy=None):
        """Build a family state, renormalized after truncation."""
        return normalize(build(spec, policy if policy is not None else self.policy))

    def random_specs(self, kinds=None, exclude=()):
        """Yield ``draws`` random specs of every family, one family after another
        in each round."""

        kinds = [kind for kind in (kinds or list(FAMILIES)) if kind not in exclude]
        for _ in range(self.draws):
            for kind in kinds:
                yield random_spec(self.rng, kind)

    def random_states(self, kinds=None, exclude=()):
        for spec in self.random_specs(kinds, exclude):
            yield spec, self.build(spec)


def probs_of(state):
    return distribution_of(state).probs


def max_abs(values):
    values = np.asarray(list(values), dtype=float)
    return float(np.max(np.abs(values))) if values.shape[0] > 0 else 0.0


def padded_diff(a, b):
    """Largest |a_n - b_n|, zero-padding the shorter sequence."""

    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    size = max(a.shape[0], b.shape[0])
    left = np.zeros(size)
    right = np.zeros(size)
    left[: a.shape[0]] = a
    right[: b.shape[0]] = b
    return float(np.max(np.abs(left - right)))
