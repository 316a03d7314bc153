"""Exception hierarchy shared by the library and the CLI."""


class PRankError(Exception):
    """Base class for every error raised by fermat_prank."""


class ParameterError(PRankError, ValueError):
    """Invalid user-supplied parameters (bad prime, exponent, range...)."""


class NotApplicableError(ParameterError):
    """A closed-form family was asked for parameters outside its hypotheses."""


class LimitExceededError(PRankError):
    """A brute-force or enumeration step would exceed its configured cap."""


class InvariantViolation(PRankError, AssertionError):
    """An internal consistency check failed. Always indicates a bug."""
