"""Exception types shared across the package."""


class CellkitError(Exception):
    """Base class for all package-specific errors."""


class ZeroPolynomial(CellkitError):
    """An operation that needs a nonzero polynomial received zero."""


class SingularMatrix(CellkitError):
    """Exact linear solve hit a singular (or rank-deficient) matrix."""


class SingularSpecialization(CellkitError):
    """A matrix that must be invertible after specialization is not.

    Raised e.g. when the integer specialization of the base-change matrix
    into the asymptotic ring fails to be unimodular over the rationals.
    """


class RouteMismatch(CellkitError):
    """Two independent computation routes for the same quantity disagree."""


class NonPositiveSchur(CellkitError):
    """A Schur element's leading coefficient failed to be positive."""


class IdentityFailure(CellkitError):
    """The candidate identity or a block idempotent of the leading-term
    ring failed one of its defining identities.

    This signals a violated positivity conjecture for the weight
    function at hand, so pipelines record it instead of crashing."""


class MixedAValues(CellkitError):
    """Truncated induction received a character whose constituents do
    not share one a-value."""


class FamilyBlockMismatch(CellkitError):
    """The family partition from constructible characters disagrees
    with the block partition from the leading-term traces."""


class InvalidWeights(CellkitError):
    """A weight list is malformed: wrong length, negative entries, or
    unequal weights on generators conjugate under odd bond order."""


class DiagramError(CellkitError):
    """A Coxeter diagram (or parabolic subdiagram) is not of a supported
    finite type."""


class KernelOverflow(CellkitError):
    """The compiled kernel detected an intermediate outside int64 range.

    Callers fall back to the arbitrary-precision pure-Python path.
    """


class FixtureError(CellkitError):
    """A named fixture is missing or its content fails validation."""


class CacheCorrupt(CellkitError):
    """A cache file exists but fails its integrity check."""
