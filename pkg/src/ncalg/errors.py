"""Exception hierarchy.

Every error carries a short human message. Precondition failures also name
the hypothesis that was violated so the CLI can map them to exit code 3.
"""


class NcalgError(Exception):
    exit_code = 1


class InputError(NcalgError, ValueError):
    """Malformed input text or structurally invalid data (exit 2)."""

    exit_code = 2


class PreconditionError(NcalgError, ValueError):
    """A mathematical hypothesis of an operation does not hold (exit 3)."""

    exit_code = 3
    hypothesis = "precondition"

    def __init__(self, message: str = "", hypothesis: str | None = None):
        if hypothesis is not None:
            self.hypothesis = hypothesis
        super().__init__(message or self.hypothesis)


# scalar layer
class ZeroInverse(PreconditionError, ZeroDivisionError):
    hypothesis = "element is nonzero"


class DomainMismatch(NcalgError, TypeError):
    exit_code = 2


class NormTooLarge(PreconditionError):
    hypothesis = "‖q‖ ≤ 2"


class NotUnitNorm(PreconditionError):
    hypothesis = "N(u) = 1"


class NotPure(PreconditionError):
    hypothesis = "Re(v) = 0"


class ZeroInput(PreconditionError):
    hypothesis = "input is nonzero"


class InfeasibleCase(PreconditionError):
    hypothesis = "a solution exists in this domain"


class InfiniteDomain(PreconditionError):
    hypothesis = "domain is finite"


# polynomial layer
class PolySyntaxError(InputError):
    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")


class UnknownVariable(InputError):
    pass


class ArityMismatch(PreconditionError):
    hypothesis = "one argument per variable"


class NotMultilinear(PreconditionError):
    hypothesis = "polynomial is multilinear"


class BudgetExceeded(NcalgError):
    exit_code = 5


# matrix layer
class ShapeMismatch(PreconditionError):
    hypothesis = "shapes are compatible"


class Singular(PreconditionError):
    hypothesis = "matrix is invertible"


class CentralInput(PreconditionError):
    hypothesis = "matrix is noncentral"


class NotSL(PreconditionError):
    hypothesis = "determinant equals 1"


# canonical forms
class HypothesisViolated(PreconditionError):
    hypothesis = "p(A) = 0 and p(B) invertible"


class RetryExhausted(NcalgError):
    exit_code = 4


class ConjugateDiagonal(PreconditionError):
    hypothesis = "diagonal entries pairwise nonconjugate"


class NotNilpotent(PreconditionError):
    hypothesis = "matrix is nilpotent"


class Nilpotent(PreconditionError):
    hypothesis = "matrix is not nilpotent"


class Invertible(PreconditionError):
    hypothesis = "matrix is singular"


class NotSkewInvolution(PreconditionError):
    hypothesis = "A² = −I"


class NoScalarSkewInvolution(PreconditionError):
    hypothesis = "the domain contains α with α² = −1"


class NonzeroTrace(PreconditionError):
    hypothesis = "trace is zero"


class NotTriangular(PreconditionError):
    hypothesis = "matrix is triangular"


# factorization layer
class NoLambda(PreconditionError):
    hypothesis = "some shift A − λI is nonsingular"

    def __init__(self, message: str = "", witnesses=()):
        self.witnesses = list(witnesses)
        super().__init__(message)


class Degenerate2x2GF2(PreconditionError):
    hypothesis = "not the M₂(GF(2)) corner case"


class FieldTooSmall(PreconditionError):
    hypothesis = "|F| ≥ n"


class UnsupportedPolynomial(PreconditionError):
    hypothesis = "polynomial in the supported witness family"


class NormResidual(NcalgError):
    """A float construction missed its residual tolerance."""
