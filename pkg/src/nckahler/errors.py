"""Exception hierarchy shared by every module."""


class GeometryError(ValueError):
    """Base class for all library errors."""


class DimensionError(GeometryError):
    """Operands live on different Fock spaces or have the wrong shape."""


class UndefinedStateError(GeometryError):
    """The zero vector has no ray and no Kahlerian function values."""


class ChartError(GeometryError):
    """Affine coordinates requested at a point with vanishing z^[0]."""


class TruncationError(GeometryError):
    """An operator polynomial is too long to be faithful below the cutoff."""


class DomainError(GeometryError):
    """Input outside the domain of an operation (e.g. non-Hermitian generator)."""


class ParameterError(GeometryError):
    """Invalid numeric parameter (step size, sample count, index)."""


class SingularSeedError(GeometryError):
    """Recursive reconstruction needs a nonvanishing lowering expectation."""


class InconsistencyError(GeometryError):
    """Overlapping determinations of the same amplitude disagree."""
