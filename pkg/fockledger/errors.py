class FockLedgerError(Exception):
    """Base class of all fockledger errors."""


class ZeroState(FockLedgerError):
    """An operator produced the zero vector, which is not a state.

    :param message: The error message.
    :type message: str
    :param step: 1-based index of the failing step in an operator chain.
    :type step: int, optional
    """

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step

    def at_step(self, step):
        """Return a copy of this error tagged with the failing step."""
        return ZeroState(f"step {step}: {self}", step=step)


class InvalidDistribution(FockLedgerError, ValueError):
    """Probabilities are negative beyond rounding or do not sum to one."""


class InvalidParams(FockLedgerError, ValueError):
    """Parameters lie outside the domain of a family or operation."""


class NoRealRoot(InvalidParams):
    """The coherent+vacuum normalization constraint has no real solution."""


class CutoffOverflow(FockLedgerError):
    """The adaptive cutoff reached max_cutoff with tail mass above tail_tol."""


class UnsupportedSpec(FockLedgerError):
    """The requested closed forms do not exist for this family."""
