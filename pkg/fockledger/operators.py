"""Ladder, exponential phase and weighted annihilation operators.

Every operator is split into a raw part, which returns the unnormalized
amplitude vector, and a normalization step. The squared norm of the raw vector
is the operator's denominator: nbar for a, 1 + nbar for a^dagger, 1 - p_0 for
E_- and 1 for E_+.
"""
import logging

import numpy as np

from fockledger.errors import InvalidParams, ZeroState
from fockledger.fock import (
    EPS_ZERO,
    CutoffPolicy,
    FockState,
    distribution_of,
    ensure_cutoff,
)
from fockledger.statistics import SINGULAR_VACUUM_GAP, stats

logger = logging.getLogger(__name__)

ANNIHILATE = "annihilate"
CREATE = "create"
EXP_PHASE_DOWN = "exp_phase_down"
EXP_PHASE_UP = "exp_phase_up"
WEIGHTED_ANNIHILATE = "weighted_annihilate"


class OperatorKind(object):
    """An operator tag, with the weight function f for f(n)a.

    :param tag: One of ANNIHILATE, CREATE, EXP_PHASE_DOWN, EXP_PHASE_UP,
        WEIGHTED_ANNIHILATE.
    :type tag: str
    :param f: Weight function of the integer quantum number (weighted only).
    :type f: callable, optional
    """

    def __init__(self, tag, f=None):
        if tag not in OPERATORS and tag != WEIGHTED_ANNIHILATE:
            raise InvalidParams(f"Unrecognized operator: {tag}")
        if (tag == WEIGHTED_ANNIHILATE) != (f is not None):
            raise InvalidParams("a weight function is required by, and only by, f(n)a")
        self.tag = tag
        self.f = f

    def __eq__(self, other):
        return (
            isinstance(other, OperatorKind)
            and self.tag == other.tag
            and self.f is other.f
        )

    def __hash__(self):
        return hash((self.tag, id(self.f)))

    def __repr__(self):
        cls_name = type(self).__name__
        return f"{cls_name}(tag={self.tag})"


def _weights(f, size):
    weights = np.array([f(n) for n in range(size)], dtype=complex)
    if not np.all(np.isfinite(weights)):
        bad = int(np.flatnonzero(~np.isfinite(weights))[0])
        raise InvalidParams(f"weight function is not finite at n={bad}")
    return weights


def _lower(state):
    return state.amplitudes[1:] * np.sqrt(np.arange(1, state.cutoff + 1))


def _raise(state):
    raw = np.zeros(state.cutoff + 2, dtype=complex)
    raw[1:] = state.amplitudes * np.sqrt(np.arange(1, state.cutoff + 2))
    return raw


def _shift_down(state):
    return state.amplitudes[1:]


def _shift_up(state):
    raw = np.zeros(state.cutoff + 2, dtype=complex)
    raw[1:] = state.amplitudes
    return raw


def raw_apply(state, kind):
    """Apply an operator without normalizing.

    :param state: The input state.
    :type state: FockState
    :param kind: The operator.
    :type kind: OperatorKind or str
    :return: The unnormalized amplitudes (empty for lowering the vacuum-only
        basis).
    :rtype: np.ndarray
    """

    kind = as_kind(kind)
    if kind.tag == WEIGHTED_ANNIHILATE:
        return _weights(kind.f, state.cutoff) * _lower(state)
    return OPERATORS[kind.tag](state)


def apply(state, kind, return_norm=False, policy=None):
    """Apply an operator and normalize the result.

    :param state: The input state.
    :type state: FockState
    :param kind: The operator.
    :type kind: OperatorKind or str
    :param return_norm: Whether to also return the pre-normalization squared norm.
    :type return_norm: bool
    :param policy: The cutoff policy checked after raising operators.
    :type policy: CutoffPolicy, optional
    :raises ZeroState: if the result is the zero vector.
    """

    kind = as_kind(kind)
    raw = raw_apply(state, kind)

    if kind.tag == EXP_PHASE_DOWN:
        # 1 - p_0 near zero is noise, not a state
        gap = float(np.sum(np.abs(raw) ** 2))
        if gap < SINGULAR_VACUUM_GAP:
            raise ZeroState(f"E_- of a state with 1 - p_0 = {gap:.3e}")

    if raw.shape[0] == 0:
        raise ZeroState(f"{kind.tag} annihilates the vacuum")
    scale = float(np.max(np.abs(raw)))
    if not scale > EPS_ZERO:
        raise ZeroState(f"{kind.tag} annihilates every component of the state")

    scaled = raw / scale
    norm_sq = float(np.sum(np.abs(scaled) ** 2)) * scale ** 2

    if kind.tag == EXP_PHASE_UP:
        # E_+ is an isometry
        result = FockState(raw, state.tail_tol)
    else:
        result = FockState(scaled / np.sqrt(np.sum(np.abs(scaled) ** 2)), state.tail_tol)

    if kind.tag in (CREATE, EXP_PHASE_UP):
        result = ensure_cutoff(
            result, policy if policy is not None else CutoffPolicy.from_config()
        )

    logger.debug(f"Applied {kind.tag}: cutoff {state.cutoff} -> {result.cutoff}")
    if return_norm:
        return result, norm_sq
    return result


def subtracted(state, return_norm=False):
    """The photon-subtracted state a|psi>/sqrt(nbar)."""
    return apply(state, ANNIHILATE, return_norm=return_norm)


def added(state, return_norm=False, policy=None):
    """The photon-added state a^dagger|psi>/sqrt(1 + nbar)."""
    return apply(state, CREATE, return_norm=return_norm, policy=policy)


def exp_phase(state, direction, return_norm=False, policy=None):
    """Apply E_- (direction "down") or E_+ (direction "up").

    E_- returns sum_n c_{n+1}|n> / sqrt(1 - |c_0|^2); E_+ returns
    sum_n c_n|n+1> unchanged in norm.
    """

    if direction == "down":
        return apply(state, EXP_PHASE_DOWN, return_norm=return_norm)
    elif direction == "up":
        return apply(state, EXP_PHASE_UP, return_norm=return_norm, policy=policy)
    raise InvalidParams(f"direction must be 'down' or 'up', got {direction!r}")


def weighted_annihilate(state, f, return_norm=False):
    """Apply f(n)a: c'_n proportional to f(n) c_{n+1} sqrt(n+1)."""
    return apply(state, OperatorKind(WEIGHTED_ANNIHILATE, f), return_norm=return_norm)


def apply_chain(state, kinds, policy=None):
    """Apply operators one after another.

    :param state: The input state.
    :type state: FockState
    :param kinds: The operators in application order.
    :type kinds: list of OperatorKind or str
    :return: The intermediate normalized states with their statistics.
    :rtype: list of (FockState, StatsReport)
    :raises ZeroState: tagged with the 1-based failing step.
    """

    steps = []
    for step, kind in enumerate(kinds, start=1):
        try:
            state = apply(state, kind, policy=policy)
        except ZeroState as e:
            raise e.at_step(step)
        steps.append((state, stats(distribution_of(state))))
        logger.debug(f"Step {step}: mean {steps[-1][1].mean}")
    return steps


def iterate(state, op, k, policy=None):
    """Apply the same operator k times, returning every intermediate state."""

    if int(k) != k or k < 1:
        raise InvalidParams(f"iterate needs an integer k >= 1, got {k}")
    return apply_chain(state, [op] * int(k), policy=policy)


def as_kind(kind):
    if isinstance(kind, OperatorKind):
        return kind
    if kind in SHORT_NAMES:
        kind = SHORT_NAMES[kind]
    return OperatorKind(kind)


OPERATORS = {
    ANNIHILATE: _lower,
    CREATE: _raise,
    EXP_PHASE_DOWN: _shift_down,
    EXP_PHASE_UP: _shift_up,
}

SHORT_NAMES = {
    "sub": ANNIHILATE,
    "add": CREATE,
    "eminus": EXP_PHASE_DOWN,
    "eplus": EXP_PHASE_UP,
}
