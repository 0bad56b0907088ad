"""Exception hierarchy shared by every module."""


class PCentralError(Exception):
    """Base class for all library errors."""


class ResourceLimitError(PCentralError):
    """A configured size cap would be exceeded.

    ``required`` carries the size that was asked for, so callers can report it.
    """

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class NotPGroupError(PCentralError):
    pass


class NotNormalError(PCentralError):
    pass


class GroupTableError(PCentralError):
    """A multiplication table violates the group axioms."""


class HypothesisError(PCentralError):
    """A theorem-level operation was called on a group outside its hypothesis."""


class StructureViolation(PCentralError):
    """Observed data contradicts a structure result that is supposed to hold."""


class FormatError(PCentralError):
    """Malformed ``pgt``/``fpc`` text input."""
