"""Exception hierarchy shared across the package."""

from __future__ import annotations


class SkewPbwError(Exception):
    """Base class for all domain errors raised by this package."""


class ArityMismatch(SkewPbwError):
    """Operands live over base rings with a different number of generators."""


class DivisionByZero(SkewPbwError, ZeroDivisionError):
    """Division by a scalar that is equal to zero."""


class InvalidDerivation(SkewPbwError):
    """A derivation whose generator images fail the twisted Leibniz symmetry."""


class ParseError(SkewPbwError):
    """Syntax or semantic error in presentation or expression text."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class UndeclaredSymbol(ParseError):
    """A name was used before being declared as parameter, base generator or variable."""


class DuplicateRelation(ParseError):
    """Two relations were given for the same ordered variable pair."""


class TailDegreeError(ParseError):
    """A relation tail contains a monomial outside the allowed degree-one span."""


class SpecializationError(SkewPbwError):
    """A parameter assignment produced an invalid presentation."""


class SpecializationDivisionByZero(SpecializationError):
    """A denominator vanished under the parameter assignment."""


class ZeroElement(SkewPbwError):
    """Operation undefined on the zero element."""


class ZeroPoint(SkewPbwError):
    """Projective points must have at least one nonzero coordinate."""


class NotQuasiCommutative(SkewPbwError):
    """Operation requires all derivations and relation tails to vanish."""


class NotFinitelyGraded(SkewPbwError):
    """Operation requires a trivial base ring and homogeneous quadratic relations."""


class UncertifiedPresentation(SkewPbwError):
    """Operation requires a passing confluence certificate."""


class BasisCertificationError(SkewPbwError):
    """The degree-wise rank cross-check contradicted the monomial count."""
