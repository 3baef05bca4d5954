import logging

from fockledger.errors import InvalidParams, UnsupportedSpec
from fockledger.families import coherent, counting, distribution, logarithmic, number, squeezed
from fockledger.families.base import FamilySpec
from fockledger.fock import CutoffPolicy, fidelity
from fockledger.operators import subtracted
from fockledger.utils.utils import str2dict

logger = logging.getLogger(__name__)

COHERENT_FIDELITY_TOL = 1e-10

FAMILIES = {
    "fock": number.FOCK,
    "twofock": number.TWOFOCK,
    "coherent": coherent.COHERENT,
    "cohvac": coherent.COHVAC,
    "negbin": counting.NEGBIN,
    "binomial": counting.BINOMIAL,
    "oddcoh": coherent.ODDCOH,
    "squeezed": squeezed.SQUEEZED,
    "simonlog": logarithmic.SIMONLOG,
    "phase": logarithmic.PHASE,
    "gamma": distribution.GAMMA,
    "logq": distribution.LOGQ,
    "log0": distribution.LOG0,
}


def family_of(kind):
    if kind not in FAMILIES:
        raise UnsupportedSpec(f"Unrecognized family: {kind}, expected one of {list(FAMILIES)}")
    return FAMILIES[kind]


def make_spec(kind, **params):
    """Validate parameters and return the canonical FamilySpec."""
    return family_of(kind).spec(**params)


def parse_spec(text):
    """Parse ``kind:key=value,...`` into a FamilySpec.

    :raises UnsupportedSpec: for an unknown family.
    :raises InvalidParams: for malformed, missing or unknown parameters.
    """

    kind, sep, rest = text.strip().partition(":")
    kind = kind.strip().lower()
    try:
        params = str2dict(rest)
    except ValueError as e:
        raise InvalidParams(f"Cannot parse {text!r}: {e}")
    return make_spec(kind, **params)


def build(spec, policy=None):
    """Build the normalized state of a family spec.

    :param spec: The spec, or its text form.
    :type spec: FamilySpec or str
    :param policy: The cutoff policy, defaults to the configured one.
    :type policy: CutoffPolicy, optional
    :rtype: FockState
    """

    if isinstance(spec, str):
        spec = parse_spec(spec)
    if policy is None:
        policy = CutoffPolicy.from_config()

    state = family_of(spec.kind).build(policy, **spec.params)
    logger.debug(f"Built {spec.to_text()} with cutoff {state.cutoff}")
    return state


def closed_form_relations(spec):
    """Closed-form nbar, q, N_- and N_+ (where known) of a family spec.

    :raises UnsupportedSpec: for families without closed forms.
    :rtype: dict
    """

    if isinstance(spec, str):
        spec = parse_spec(spec)
    family = family_of(spec.kind)
    if family.relations is None:
        raise UnsupportedSpec(f"No closed-form relations for family {spec.kind}")
    return family.relations(**spec.params)


def random_spec(rng, kind):
    """Draw a spec uniformly inside the domain of one family.

    :param rng: The generator.
    :type rng: np.random.Generator
    :param kind: The family key.
    :type kind: str
    :rtype: FamilySpec
    """

    return make_spec(kind, **family_of(kind).sample(rng))


def subtracted_coherent_fidelity(alpha, eta, policy=None):
    """|<alpha| a |psi>|^2 / nbar for the coherent+vacuum state (alpha, eta)."""

    if policy is None:
        policy = CutoffPolicy.from_config()
    state = coherent.build_cohvac(policy, alpha, eta)
    return fidelity(subtracted(state), coherent.build_coherent(policy, alpha))


def subtracted_is_coherent_check(alpha, eta, policy=None):
    """Whether subtracting one photon from the coherent+vacuum state yields |alpha>."""
    return subtracted_coherent_fidelity(alpha, eta, policy) > 1.0 - COHERENT_FIDELITY_TOL


def simonlog_subtract_is_phase_coherent(z, policy=None):
    """Whether subtracting one photon from the logarithmic state yields the phase state."""

    if policy is None:
        policy = CutoffPolicy.from_config()
    value = logarithmic.simonlog_phase_fidelity(z, policy)
    return value > 1.0 - logarithmic.PHASE_FIDELITY_TOL


__all__ = [
    "FAMILIES",
    "FamilySpec",
    "build",
    "make_spec",
    "closed_form_relations",
    "parse_spec",
    "random_spec",
    "simonlog_subtract_is_phase_coherent",
    "subtracted_coherent_fidelity",
    "subtracted_is_coherent_check",
]
