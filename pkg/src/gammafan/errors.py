"""Exception hierarchy shared by all modules."""


class GammaFanError(Exception):
    """Base class for domain errors raised by this package."""


class ModeMismatchError(GammaFanError):
    """Two scalars (or a scalar and a value group) live in different fields."""


class GammaViolationError(GammaFanError):
    """A constant that must lie in the value group does not."""


class AdmissibilityError(GammaFanError):
    """A cone contains a line, or otherwise fails Gamma-admissibility."""


class OutsideError(GammaFanError):
    """A point was expected to lie in a cone or polyhedron but does not."""


class DomainError(GammaFanError):
    """An argument is outside the domain of an operation."""


class NotAFaceError(GammaFanError):
    """The given set is not a face (or cell) where one is required."""


class FanValidationError(GammaFanError):
    """A collection of cones violates the fan axiom."""


class FiniteTypeError(GammaFanError):
    """A vertex of the level-1 slice has coordinates outside the value group."""


class NonPointedCellError(GammaFanError):
    """A cell of the dual complex yields a cone with nontrivial lineality."""


class ExtensionFailure(GammaFanError):
    """Completion could not certify a valid complete fan containing the input.

    ``conflicts`` lists index pairs (into ``cones``) that violate the fan
    axiom or otherwise block the certificate.
    """

    def __init__(self, message, conflicts=(), cones=()):
        super().__init__(message)
        self.conflicts = list(conflicts)
        self.cones = list(cones)


class ParseError(Exception):
    """Malformed input file; carries the offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
