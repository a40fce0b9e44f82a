"""Shared exception types."""


class WorkbenchError(Exception):
    """Base class for errors raised by this package."""


class PosetError(WorkbenchError):
    """An order table violates a poset axiom; the message names the axiom."""


class NotALatticeError(WorkbenchError):
    """A poset is missing a binary meet or join."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class GuardError(WorkbenchError):
    """An enumeration guard was exceeded; operations refuse rather than sample."""


class InputFormatError(WorkbenchError):
    """Malformed input data (JSON schema, node strings, edge tables)."""
