class HypchromaError(Exception):
    """Base class for every error raised by hypchroma."""


class InvalidInputError(HypchromaError, ValueError):
    pass


class NumericRangeError(InvalidInputError):
    """Distance outside the supported cosh range."""


class GeometryInfeasibleError(HypchromaError):
    """A closed form or construction has no hyperbolic realization."""

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details or {}


class ParameterRegimeError(HypchromaError):
    def __init__(self, message, inequality):
        super().__init__(f"{message} (failed: {inequality})")
        self.inequality = inequality


class CombinatorialError(HypchromaError):
    pass


class ConstructionRuleError(CombinatorialError):
    pass


class ConnectivityError(CombinatorialError):
    pass


class OrientabilityError(CombinatorialError):
    pass


class PairingError(CombinatorialError):
    pass


class BlueprintError(CombinatorialError):
    pass


class RotationSystemError(HypchromaError):
    pass


class InternalConsistencyError(RotationSystemError):
    pass


class SizeExceededError(HypchromaError):
    pass
