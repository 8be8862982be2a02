"""Exception and warning types raised across the package."""


class QuditDephasingError(Exception):
    """Base class for all package errors."""


class InvalidDimensionError(QuditDephasingError, ValueError):
    pass


class InvalidRootError(QuditDephasingError, ValueError):
    pass


class InvalidStateError(QuditDephasingError, ValueError):
    pass


class StepSizeError(QuditDephasingError, ValueError):
    pass


class NumericalContractError(QuditDephasingError, ArithmeticError):
    """A trace, Hermiticity or positivity contract was violated."""


class UndefinedPhaseError(QuditDephasingError, ArithmeticError):
    """The overlap whose argument defines the phase vanishes (visibility node)."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class InsufficientHorizonError(QuditDephasingError, ValueError):
    pass


class ConfigError(QuditDephasingError, ValueError):
    """Scenario/config validation failure; ``field`` names the offending key."""

    def __init__(self, message, field=None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


class DegeneracyWarning(UserWarning):
    """Branch matching was ambiguous at an exact degeneracy."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class IndeterminatePatternError(QuditDephasingError, ValueError):
    """Coupling lies on a region boundary; no dominant decay rate."""
