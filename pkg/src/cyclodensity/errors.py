"""Exception hierarchy shared by the library and the command line front end."""


class CycloError(Exception):
    """Base class; ``code`` is the stable name reported by the CLI."""

    code = "error"
    exit_code = 1


class DomainError(CycloError, ValueError):
    code = "domain_error"
    exit_code = 1


class InexactDivisionError(DomainError):
    code = "inexact_division"


class ResourceLimitError(CycloError, RuntimeError):
    """A configured cap (factorization bound, divisor count, search states) was hit."""

    code = "resource_limit"
    exit_code = 2


class InvariantViolation(CycloError, AssertionError):
    code = "invariant_violation"
    exit_code = 3
