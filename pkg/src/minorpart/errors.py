"""Exception types shared by every module."""


class InputError(ValueError):
    """Malformed or out-of-range input."""


class BudgetExceeded(RuntimeError):
    """An exact search ran past its configured budget."""


class PreconditionError(RuntimeError):
    """A caller-asserted precondition turned out false.

    ``evidence`` carries the witness found, usually a model.
    """

    def __init__(self, message, evidence=None):
        super().__init__(message)
        self.evidence = evidence


class VerificationError(AssertionError):
    """A certificate failed its checker."""
