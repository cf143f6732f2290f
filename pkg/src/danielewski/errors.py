"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` used by the CLI's
structured output.
"""


class DanielewskiError(Exception):
    code = "error"

    def __init__(self, message: str = ""):
        super().__init__(message or self.__doc__ or self.code)


class ZeroPolynomial(DanielewskiError):
    """The defining polynomial must be nonzero of degree >= 1."""

    code = "zero-polynomial"


class RepeatedRoot(DanielewskiError):
    """The defining polynomial has a repeated root (gcd(p, p') non-constant)."""

    code = "repeated-root"


class NotOnSurface(DanielewskiError):
    """A chart element does not descend to the surface."""

    code = "not-on-surface"


class DivisionByZeroPolynomial(DanielewskiError):
    """Polynomial division by zero."""

    code = "division-by-zero-polynomial"


class InternalInvariantViolation(DanielewskiError):
    """An internal invariant failed; this is a defect, not a user error."""

    code = "internal-invariant-violation"


class TangencyViolation(DanielewskiError):
    """The images do not define a derivation of the coordinate ring."""

    code = "tangency-violation"


class NotVolumePreserving(DanielewskiError):
    """The field's contraction with the volume form is not closed."""

    code = "not-volume-preserving"


class ResidueObstruction(InternalInvariantViolation):
    """Nonzero x^(-1) residue while integrating a closed one-form."""

    code = "residue-obstruction"


class PointNotOnSurface(DanielewskiError):
    """The given point does not satisfy x*y = p(z)."""

    code = "point-not-on-surface"


class NotNilpotent(DanielewskiError):
    """The field is not locally nilpotent within the iteration bound."""

    code = "not-nilpotent"


class DegreeGate(DanielewskiError):
    """Operation requires a higher degree of the defining polynomial or bound."""

    code = "degree-gate"


class InvalidGenerator(DanielewskiError):
    """Automorphism generator parameters are invalid for this surface."""

    code = "invalid-generator"


class MembershipRejected(DanielewskiError):
    """Certification refused: the potential fails the membership test."""

    code = "membership-rejected"


class SearchExhausted(DanielewskiError):
    """No certificate found within the degree bound; retry with a larger one."""

    code = "search-exhausted"


class MalformedNesting(DanielewskiError):
    """Expected a left-nested bracket of shear leaves."""

    code = "malformed-nesting"


class WrongSurface(DanielewskiError):
    """This operation is only defined on the surface x*y = z^2 - 1."""

    code = "wrong-surface"


class ParityViolation(DanielewskiError):
    """Target monomial must be anti-invariant (odd total parity)."""

    code = "parity-violation"


class ParseError(DanielewskiError):
    """Syntax error in an input expression."""

    code = "syntax-error"

    def __init__(self, message: str, position: int = -1):
        self.position = position
        if position >= 0:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NegativeExponent(ParseError):
    """Exponents must be non-negative integers."""

    code = "negative-exponent"
