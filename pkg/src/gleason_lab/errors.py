"""Exception taxonomy for the library.

Every error subclasses GleasonLabError plus the closest builtin, so callers
can catch either the library-wide base or the generic Python category.
"""

from __future__ import annotations


class GleasonLabError(Exception):
    """Base class for all library errors."""


class NotAnEffect(GleasonLabError, ValueError):
    """Operator eigenvalues fall outside the admissible [0, 1] band."""


class DimensionMismatch(GleasonLabError, ValueError):
    """Operands act on spaces of different (or unexpected) dimension."""


class UnsupportedDimension(GleasonLabError, ValueError):
    """Operation only implemented for a restricted dimension/outcome range."""


class IncompleteMeasurement(GleasonLabError, ValueError):
    """Effects of a measurement do not sum to the identity."""


class WeightError(GleasonLabError, ValueError):
    """Mixing weights are negative, above one, or do not sum to one."""


class ShapeMismatch(GleasonLabError, ValueError):
    """Array arguments have incompatible shapes or outcome counts."""


class IndexOutOfRange(GleasonLabError, IndexError):
    """Outcome or insertion index outside the valid range."""


class NotUnitVector(GleasonLabError, ValueError):
    """A direction argument is not normalised."""


class ConvergenceFailure(GleasonLabError, RuntimeError):
    """An iterative numerical routine failed to converge."""


class MissingValue(GleasonLabError, KeyError):
    """A frame table has no value for the requested effect."""


class NotOrthogonal(GleasonLabError, ValueError):
    """Projectors passed to an additivity check are not mutually orthogonal."""


class InconsistentSystem(GleasonLabError, ValueError):
    """A frame constraint system admits no solution within tolerance."""


class RankDeficient(GleasonLabError, ValueError):
    """Effects do not span enough of operator space for a density fit."""
