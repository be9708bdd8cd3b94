"""Exception hierarchy shared by all discstab modules."""


class DiscStabError(Exception):
    """Base class for every library-specific error."""


class EvalNearPole(DiscStabError):
    """Denominator magnitude fell below the evaluation floor."""


class NoConvergence(DiscStabError):
    """Root iteration exhausted its budget without meeting the residual tolerance."""


class BoundaryZero(DiscStabError):
    """A zero sits within tolerance of the unit circle, so winding counts are unreliable."""


class IndeterminateError(DiscStabError):
    """Certification could not decide either way (typically a near-circle root)."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonUnitDenominator(DiscStabError):
    """A denominator could not be certified zero-free on the closed unit disc."""


class NotInvertiblePair(DiscStabError):
    """Operation requires a certified invertible pair and the input is not one."""


class IdentityViolated(DiscStabError):
    """A claimed Bezout identity does not hold exactly."""


class NotASolution(DiscStabError):
    """Input tuple does not satisfy the required exact identity."""


class NotAntisymmetric(DiscStabError):
    """Matrix argument must equal the negative of its transpose."""


class InconsistentSolutions(DiscStabError):
    """The two candidate quotients recovering the transform disagree."""


class DimensionMismatch(DiscStabError):
    """Matrix and tuple dimensions are incompatible."""


class DegeneratePivot(DiscStabError):
    """Both pivot candidates vanish at a singular point; input data is inconsistent."""


class ReducibilityViolated(DiscStabError):
    """The constant-sign condition fails, so no reducing multiplier exists."""


class NotSignLinked(DiscStabError):
    """The two pairs are not sign-linked, so no joint stabilizer exists."""


class BudgetExhausted(DiscStabError):
    """The search budget ended before a certified witness was found."""


class NoAdmissibleValue(DiscStabError):
    """No candidate value is avoided by the function on the closed disc."""


class ParseError(DiscStabError):
    """Expression text could not be parsed.

    Carries the character position and the set of token kinds that would have
    been accepted there.
    """

    def __init__(self, message, position, expected=()):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.expected = frozenset(expected)


class SchemaError(DiscStabError):
    """Problem file failed schema validation."""
