"""Exception hierarchy shared by the whole package."""


class EllipticError(Exception):
    """Base class for all errors raised by this package."""


class NonzeroRequired(EllipticError):
    """An argument that must be nonzero was zero."""


class NomeOutOfRange(EllipticError):
    """The elliptic nome must satisfy |p| < 1."""


class DegenerateParameters(EllipticError):
    """A denominator factor came too close to a zero of the elliptic kernel.

    Identity checks must distinguish poles from bugs, so near-zero reciprocal
    factors raise instead of silently producing huge values.
    """


class BalanceViolation(EllipticError):
    """The very-well-poised balancing constraint is violated beyond tolerance."""


class SamplingExhausted(EllipticError):
    """Could not draw an admissible parameter point within the resample budget."""


class SingularToWorkingPrecision(EllipticError):
    """A matrix was numerically singular at working precision."""


class IndexOutOfTriangle(EllipticError):
    """A lower-triangular matrix entry above the diagonal was requested."""
