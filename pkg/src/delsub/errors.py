"""Exception types shared across the package."""


class CapExceeded(ValueError):
    """An enumeration or ball materialization would exceed its size cap."""


class InvalidScript(ValueError):
    """An edit script references positions or symbols that do not fit its input."""


class UnsupportedAlphabet(ValueError):
    """The requested operation is only defined for a different alphabet size."""


class DecodeFailure(Exception):
    """A received word could not be decoded (corruption beyond the channel model)."""


class InvariantViolation(RuntimeError):
    """A condition the constructions guarantee was observed to fail.

    Raised loudly instead of being silently resolved: any occurrence is a
    falsifier for the underlying correctness claims and must surface in tests.
    """
