"""Exception types shared across the package."""


class SemiHilbertError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(SemiHilbertError):
    """Operands have incompatible shapes."""


class NotHermitian(SemiHilbertError):
    """A matrix required to be Hermitian is not, beyond tolerance."""


class NotPSD(SemiHilbertError):
    """A matrix required to be positive semidefinite has a genuinely
    negative eigenvalue."""


class NoConvergence(SemiHilbertError):
    """The eigensolver failed to converge."""


class NoAdjoint(SemiHilbertError):
    """The operator does not admit an adjoint with respect to the
    semi-inner product (its adjoint equation has no solution)."""


class PreconditionNotMet(SemiHilbertError):
    """An operation's mathematical precondition fails for these inputs."""


class RankTooSmall(SemiHilbertError):
    """The construction needs more nonzero directions than the space has."""


class ParseError(SemiHilbertError):
    """An instance file is malformed."""
