"""Exception hierarchy shared by every layer of the package."""


class DiracLiouvilleError(Exception):
    """Base class for all errors raised by this package."""


class ZeroDivision(DiracLiouvilleError, ZeroDivisionError):
    pass


# -- poly ------------------------------------------------------------------

class SqrtError(DiracLiouvilleError, ValueError):
    """The asymptotic square root at infinity cannot be formed."""


class OddDegree(SqrtError):
    pass


class DegreeTooSmall(SqrtError):
    pass


class FieldExtensionNeeded(SqrtError):
    """Leading coefficient has no square root in Q(i).

    ``certificate`` is filled in by the solver when the error escapes
    ``kovacic.solve`` so callers can report an undecided verdict.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


# -- parser ----------------------------------------------------------------

class ParseError(DiracLiouvilleError, ValueError):
    """Input text rejected; ``position`` locates the offending token."""

    kind = "syntax"

    def __init__(self, message, position):
        self.message = message
        self.position = position
        super().__init__(f"{position}: {message}")


class ExprSyntaxError(ParseError):
    kind = "syntax"


class NonPolynomial(ParseError):
    kind = "non_polynomial"


class NonConstant(ParseError):
    kind = "non_constant"


class ExponentCap(ParseError):
    kind = "exponent_cap"


# -- dirac / kovacic / verify ----------------------------------------------

class WrongCoupling(DiracLiouvilleError, ValueError):
    pass


class UnsupportedForm(DiracLiouvilleError, ValueError):
    """A solution form is not accepted by the requested operation."""


class UnverifiableForm(UnsupportedForm):
    pass


class MixedExponentials(DiracLiouvilleError, ValueError):
    pass


class NotApplicable(DiracLiouvilleError, ValueError):
    pass


class InvariantViolation(DiracLiouvilleError, AssertionError):
    """An internal exactness guarantee failed; always a bug."""
