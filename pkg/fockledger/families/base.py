import logging
import math

from fockledger.errors import InvalidParams

logger = logging.getLogger(__name__)


def format_value(value):
    """Shortest text that parses back to the same number."""

    if isinstance(value, int):
        return str(value)
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


class FamilySpec(object):
    """A named state family with its parameters, e.g. ``negbin:xi=0.5,mu=2``.

    :param kind: The registry key of the family.
    :type kind: str
    :param params: The family parameters in canonical order.
    """

    def __init__(self, kind, **params):
        self.kind = kind
        self.params = params

    def to_text(self):
        params = ",".join(f"{key}={format_value(value)}" for key, value in self.params.items())
        return f"{self.kind}:{params}"

    def __eq__(self, other):
        return (
            isinstance(other, FamilySpec)
            and self.kind == other.kind
            and self.params == other.params
        )

    def __hash__(self):
        return hash(self.to_text())

    def __repr__(self):
        cls_name = type(self).__name__
        return f"{cls_name}({self.to_text()})"


class Family(object):
    """How to build, sample and describe one family.

    :param kind: The registry key.
    :type kind: str
    :param params: Parameter names in canonical order.
    :type params: tuple of str
    :param build: ``build(policy, **params) -> FockState``.
    :type build: callable
    :param sample: ``sample(rng) -> dict`` of parameters inside the domain.
    :type sample: callable
    :param relations: ``relations(**params) -> dict`` of closed forms, if any.
    :type relations: callable, optional
    :param integer_params: Names of parameters that must be integers.
    :type integer_params: tuple of str
    :param one_of: Whether exactly one of ``params`` is given instead of all.
    :type one_of: bool
    """

    def __init__(
        self,
        kind,
        params,
        build,
        sample,
        relations=None,
        integer_params=(),
        one_of=False,
    ):
        self.kind = kind
        self.params = params
        self.build = build
        self.sample = sample
        self.relations = relations
        self.integer_params = integer_params
        self.one_of = one_of

    def convert(self, key, value):
        try:
            number = float(value)
        except (TypeError, ValueError):
            raise InvalidParams(f"{self.kind}: {key}={value!r} is not a number")
        if not math.isfinite(number):
            raise InvalidParams(f"{self.kind}: {key}={value!r} is not finite")
        if key in self.integer_params:
            if not number.is_integer():
                raise InvalidParams(f"{self.kind}: {key}={value!r} must be an integer")
            return int(number)
        return number

    def spec(self, **params):
        """Validate parameter names and types and return the canonical spec."""

        unknown = [key for key in params if key not in self.params]
        if unknown:
            raise InvalidParams(
                f"{self.kind}: unknown parameter(s) {unknown}, expected {list(self.params)}"
            )

        if self.one_of:
            if len(params) != 1:
                raise InvalidParams(
                    f"{self.kind}: give exactly one of {list(self.params)}, got {list(params)}"
                )
        else:
            missing = [key for key in self.params if key not in params]
            if missing:
                raise InvalidParams(f"{self.kind}: missing parameter(s) {missing}")

        return FamilySpec(
            self.kind,
            **{key: self.convert(key, params[key]) for key in self.params if key in params},
        )


def require(condition, message):
    if not condition:
        raise InvalidParams(message)
