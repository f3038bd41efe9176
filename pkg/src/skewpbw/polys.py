"""Sparse multivariate polynomials over the parameter field.

These are the elements of the base ring K[t_1..t_m] (and, in the point-module
code, polynomials in the projective coordinates u_1..u_n).  Exponent vectors
are dense tuples of naturals whose length is the generator arity; coefficients
are ParamScalars and are never stored when zero.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import ArityMismatch, DivisionByZero
from .scalars import ParamScalar

Expo = tuple  # tuple[int, ...]


def _expo_key(e: Expo):
    return (sum(e), e)


class Poly:
    """Commutative polynomial with ParamScalar coefficients, fixed arity."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: dict | None = None, _clean: bool = True):
        self.arity = arity
        if terms is None:
            terms = {}
        if _clean:
            terms = {e: c for e, c in terms.items() if not c.is_zero()}
        self.terms = terms

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> "Poly":
        return cls(arity, {}, _clean=False)

    @classmethod
    def const(cls, arity: int, value: ParamScalar | int) -> "Poly":
        if isinstance(value, int):
            value = ParamScalar.from_int(value)
        if value.is_zero():
            return cls.zero(arity)
        return cls(arity, {(0,) * arity: value}, _clean=False)

    @classmethod
    def one(cls, arity: int) -> "Poly":
        return cls.const(arity, 1)

    @classmethod
    def gen(cls, arity: int, k: int) -> "Poly":
        if not 0 <= k < arity:
            raise ArityMismatch(f"generator index {k} out of range for arity {arity}")
        e = [0] * arity
        e[k] = 1
        return cls(arity, {tuple(e): ParamScalar.one()}, _clean=False)

    @classmethod
    def monomial(cls, arity: int, expo: Sequence[int], coeff: ParamScalar) -> "Poly":
        expo = tuple(expo)
        if len(expo) != arity:
            raise ArityMismatch(f"exponent {expo} has wrong length for arity {arity}")
        if coeff.is_zero():
            return cls.zero(arity)
        return cls(arity, {expo: coeff}, _clean=False)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_scalar(self) -> ParamScalar:
        """The coefficient of the constant monomial (the whole value if this
        polynomial is constant)."""
        return self.terms.get((0,) * self.arity, ParamScalar.zero())

    def is_one(self) -> bool:
        return self.is_constant() and self.constant_scalar().is_one()

    def is_unit(self) -> bool:
        """Invertible in the polynomial ring: a nonzero field constant."""
        return self.is_constant() and not self.is_zero()

    def total_degree(self) -> int | None:
        """Max total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.arity != other.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return Poly(self.arity, out, _clean=False)

    def __neg__(self) -> "Poly":
        return Poly(self.arity, {e: -c for e, c in self.terms.items()}, _clean=False)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if e in out:
                    s = out[e] + c
                    if s.is_zero():
                        del out[e]
                    else:
                        out[e] = s
                elif not c.is_zero():
                    out[e] = c
        return Poly(self.arity, out, _clean=False)

    def scale(self, scalar: ParamScalar | int) -> "Poly":
        if isinstance(scalar, int):
            scalar = ParamScalar.from_int(scalar)
        if scalar.is_zero():
            return Poly.zero(self.arity)
        return Poly(self.arity, {e: c * scalar for e, c in self.terms.items()})

    def divide_by_scalar(self, scalar: ParamScalar) -> "Poly":
        if scalar.is_zero():
            raise DivisionByZero("division of polynomial by zero scalar")
        return self.scale(scalar.inverse())

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.one(self.arity)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        if self.arity != other.arity:
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    __hash__ = None

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- structure ---------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Expo, ParamScalar]]:
        """Terms in descending graded order (deterministic)."""
        return [(e, self.terms[e]) for e in sorted(self.terms, key=_expo_key, reverse=True)]

    def compose(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute generator k by images[k]; coefficients pass through.

        This is exactly the unique algebra-map extension of the generator
        images, so composition is additive and multiplicative.
        """
        if len(images) != self.arity:
            raise ArityMismatch(f"{len(images)} images for arity {self.arity}")
        target = images[0].arity if images else self.arity
        out = Poly.zero(target)
        for e, c in self.terms.items():
            term = Poly.const(target, c)
            for k, exp in enumerate(e):
                if exp:
                    term = term * images[k] ** exp
            out = out + term
        return out

    def map_scalars(self, fn) -> "Poly":
        """Apply ``fn`` to every coefficient (e.g. parameter specialization)."""
        return Poly(self.arity, {e: fn(c) for e, c in self.terms.items()})

    # -- printing ----------------------------------------------------------

    def to_str(self, names: Sequence[str]) -> str:
        if len(names) != self.arity:
            raise ArityMismatch(f"{len(names)} names for arity {self.arity}")
        if not self.terms:
            return "0"
        parts: list[str] = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[k] if exp == 1 else f"{names[k]}^{exp}"
                for k, exp in enumerate(e)
                if exp
            )
            sign, mag = c.sign_normalized()
            if not mono:
                body = str(mag) if not mag.needs_parens_as_factor() else f"({mag})"
            elif mag.is_one():
                body = mono
            elif mag.needs_parens_as_factor():
                body = f"({mag})*{mono}"
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if sign > 0 else "-" + body)
            else:
                parts.append(f" {'+' if sign > 0 else '-'} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        generic = [f"g{k}" for k in range(self.arity)]
        return f"Poly({self.to_str(generic)})"


def poly_sum(arity: int, polys: Iterable[Poly]) -> Poly:
    out = Poly.zero(arity)
    for p in polys:
        out = out + p
    return out
