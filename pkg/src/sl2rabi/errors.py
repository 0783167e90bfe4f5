"""Exception types shared across the package.

Plain division by zero raises the builtin ZeroDivisionError; everything
else that a caller may want to catch selectively gets its own class here.
"""


class Sl2RabiError(Exception):
    """Base class for all package-specific errors."""


class IncompatibleField(Sl2RabiError):
    """Arithmetic attempted between scalars that do not live in one field."""


class SpaceNotPreserved(Sl2RabiError):
    """An operator mapped a monomial out of the polynomial space."""

    def __init__(self, monomial_power, image_degree, space_degree):
        self.monomial_power = monomial_power
        self.image_degree = image_degree
        self.space_degree = space_degree
        super().__init__(
            f"image of z^{monomial_power} has degree {image_degree}, "
            f"outside span(1..z^{space_degree})"
        )


class NotAlgebraizable(Sl2RabiError):
    """The operator fails the sl(2) expressibility conditions."""

    def __init__(self, message, residuals=None):
        self.residuals = residuals
        super().__init__(message)


class WrongLeadingShape(Sl2RabiError):
    """A 4th-order operator lacks the const*z^2*d^4 leading pattern."""


class DecoupledModel(Sl2RabiError):
    """Level splitting is zero, so the two-component system decouples."""


class ZeroCoupling(Sl2RabiError):
    """Coupling g = 0 makes the construction degenerate."""


class CouplingOutOfRange(Sl2RabiError):
    """Coupling violates the bound required for a normalizable gauge."""


class NotAnEigenvalue(Sl2RabiError):
    """Requested spectral value is not a root of the constraint polynomial."""


class NoRootInRange(Sl2RabiError):
    """The requested sweep range is invalid (an empty result is not an error)."""


class TruncationTooSmall(Sl2RabiError):
    """Fock-space truncation below the minimum the oracle supports."""


class NumericalFailure(Sl2RabiError):
    """A float-path computation did not meet its accuracy contract."""


class InputOutOfValidatedRange(Sl2RabiError):
    """Parameters outside the regime where the oracle is trusted."""
