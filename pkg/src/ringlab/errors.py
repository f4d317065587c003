"""Shared exception types."""


class RingLabError(Exception):
    """Base class for all errors raised by ringlab."""


class CapacityError(RingLabError):
    """A construction or search would exceed a configured size cap."""


class ContractError(RingLabError):
    """A precondition of an operation was violated."""


class DegreeOverflowError(RingLabError):
    """A polynomial operation would exceed the degree cap."""


class ParseError(RingLabError):
    """A ring expression could not be parsed."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position
