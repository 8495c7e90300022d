"""Exception hierarchy.

All package errors derive from TaylorSpecError so callers can catch the
whole family with one clause; the CLI maps subfamilies to exit codes.
"""


class TaylorSpecError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(TaylorSpecError):
    """Operands have incompatible shapes."""


class NotHermitianError(TaylorSpecError):
    """A matrix required to be Hermitian is not, beyond tolerance."""


class NotPSDError(TaylorSpecError):
    """A matrix required to be positive semidefinite has a genuinely
    negative eigenvalue."""


class SingularMatrixError(TaylorSpecError):
    """A linear system's matrix is numerically singular."""


class NotCommutingError(TaylorSpecError):
    """The two matrices of a pair fail to commute."""


class NotContractionError(TaylorSpecError):
    """The pair fails the row-contraction condition A1 A1* + A2 A2* <= I."""


class ComplexPropertyError(TaylorSpecError):
    """The composed boundary maps of the complex do not annihilate each
    other; indicates a non-commuting pair slipped through validation."""


class TriangularizationError(TaylorSpecError):
    """Simultaneous triangularization failed after retries and fallback."""


class ResolventSingularError(TaylorSpecError):
    """A resolvent factor is singular at the requested point."""


class HypothesisError(TaylorSpecError):
    """A criterion was invoked on a pair that violates its standing
    hypotheses (purity, defect injectivity)."""


class DefectSingularError(TaylorSpecError):
    """A defect operator that must be inverted is numerically singular."""


class BadLambdaError(TaylorSpecError):
    """Automorphism base point is zero or outside the open unit ball."""


class OutsideBallError(TaylorSpecError):
    """A point expected inside the open unit ball is not."""


class ValidationFailedError(TaylorSpecError):
    """A result that is guaranteed valid by theory failed re-validation;
    signals an implementation or conditioning problem."""


class TupleFormatError(TaylorSpecError):
    """A tuple file or JSON document does not match the expected format."""
