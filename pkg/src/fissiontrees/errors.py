"""Exception types shared across the package.

The CLI maps these onto exit codes: input/usage problems exit 2,
verification or comparison mismatches exit 1.
"""


class TreeError(ValueError):
    """Malformed tree data: bad grammar, empty node, zero weight, mixed depths."""


class DomainError(ValueError):
    """A numeric argument is outside the domain of the requested statistic."""


class PreconditionError(ValueError):
    """A structural operation was called outside its stated precondition."""


class ResourceLimitError(RuntimeError):
    """A guarded computation would exceed its configured size bound."""
