"""Exception types shared across the workbench."""


class RelogError(Exception):
    """Base class for all workbench errors."""


class ParseError(RelogError):
    """Malformed algebra file or formula text."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ArityError(RelogError):
    """An operation block has the wrong number of entries."""


class UnknownElement(RelogError):
    """An element name not declared in the `elements` line."""


class DataFileMissing(RelogError):
    """A shipped data file could not be located."""


class SizeCapExceeded(RelogError):
    """A constructed object would exceed the configured size cap."""


class CapExceeded(RelogError):
    """A search budget (free-algebra elements/coordinates) was exhausted."""


class NotACongruence(RelogError):
    """A partition is not compatible with the algebra's operations."""


class UnboundVariable(RelogError):
    """A formula variable has no value under the given valuation."""


class NoSharedVariables(RelogError):
    """Interpolation precondition failure: empty shared-variable set."""


class NotEntailed(RelogError):
    """Interpolation precondition failure: the stated consequence does not hold."""

    def __init__(self, message, countermodel=None):
        self.countermodel = countermodel
        super().__init__(message)


class InterpolantNotFound(RelogError):
    """The full candidate space was scanned without finding an interpolant."""

    def __init__(self, message, scanned=0):
        self.scanned = scanned
        super().__init__(message)


class UsageError(RelogError):
    """Bad command-line usage."""
