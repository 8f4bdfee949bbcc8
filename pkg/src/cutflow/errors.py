"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class NumericError(ArithmeticError):
    """A quadrature or root solve failed to reach its tolerance."""


class SingularityError(ArithmeticError):
    """The endpoint flow hit a vanishing denominator.

    ``factor`` names what vanished: ``"gap"`` (two consecutive endpoints met),
    ``"h"`` (h vanished at an endpoint) or ``"width"`` (a cut shrank to a point).
    """

    def __init__(self, message, factor=None, index=None):
        super().__init__(message)
        self.factor = factor
        self.index = index


class SingularDensityError(SingularityError):
    """The density became singular without a classifiable transition."""


class IntegrationError(RuntimeError):
    """The ODE integrator failed before an event could be classified."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state
