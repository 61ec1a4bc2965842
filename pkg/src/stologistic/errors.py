"""Exception types shared across the library.

ValidationError covers violated parameter bounds and malformed inputs;
NumericalError covers tolerance targets a numerical routine could not
reach.  The CLI maps them to distinct exit codes (2 and 3).
"""


class ValidationError(ValueError):
    """An input violates a documented precondition or parameter bound."""


class NumericalError(RuntimeError):
    """A numerical routine failed to meet its accuracy contract."""
