from __future__ import annotations


class CharpError(Exception):
    """Base class for every error raised by the engine."""


class InvalidCharacteristicError(CharpError):
    """Raised when a characteristic is not a prime below 2**31."""

    def __init__(self, p: object) -> None:
        super().__init__(f"invalid characteristic {p!r}: expected a prime below 2^31")
        self.p = p


class FieldDivisionError(CharpError, ZeroDivisionError):
    """Division by zero in F_p or F_p[t]."""


class ContextMismatchError(CharpError):
    """Operands live in different polynomial rings."""


class PolynomialSyntaxError(CharpError):
    """Raised when a polynomial expression does not match the grammar."""

    def __init__(self, message: str, *, text: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.text = text
        self.position = position

    def caret(self) -> str:
        """The offending text with a marker under the failing position."""
        return f"{self.text}\n{' ' * self.position}^"


class UnknownVariableError(PolynomialSyntaxError):
    def __init__(self, name: str, *, text: str, position: int) -> None:
        super().__init__(f"unknown variable {name!r}", text=text, position=position)
        self.name = name


class ZeroPolynomialError(CharpError):
    """An operation that needs a nonzero polynomial received zero."""


class LinearSubstitutionError(CharpError):
    """A substitution is not a linear change of the x, y variables."""


class FrobeniusExponentError(CharpError):
    def __init__(self, q: object, p: int) -> None:
        super().__init__(f"q={q!r} is not a positive power of the characteristic {p}")
        self.q = q
        self.p = p


class DegenerateCaseError(CharpError):
    def __init__(self, q: int, *, minimum: int = 3) -> None:
        super().__init__(f"q={q} is degenerate: this check needs q >= {minimum}")
        self.q = q


class SplitFormError(CharpError):
    """Missing or inconsistent factorisation of a hypersurface into linear forms."""


class ReducibleCandidateError(CharpError):
    def __init__(self, poly: object) -> None:
        super().__init__(f"{poly} is not irreducible over the prime field")
        self.poly = poly


class PreconditionError(CharpError):
    """A documented precondition of an operation is violated."""
