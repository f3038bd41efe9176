"""Exact arithmetic in the coefficient field: rational functions in named
parameters over the integers.

A parameter monomial is a sorted tuple of ``(name, exponent)`` pairs with
positive exponents; the empty tuple is the constant monomial.  A parameter
polynomial is a dict mapping monomials to nonzero ints.  A ``ParamScalar`` is
a quotient of two such polynomials with nonzero denominator.

Equality is decided by cross multiplication (a/b == c/d iff a*d - c*b == 0),
so reducing fractions is an optimization, never a correctness requirement.
Fractions are kept content-normalized with a deterministic sign convention
(the leading denominator coefficient is positive) and with common monomial
factors cancelled.  A full polynomial-gcd reduction runs only once the
combined term count exceeds ``full_reduction_threshold``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DivisionByZero

Mono = tuple  # tuple[tuple[str, int], ...]
PPoly = dict  # dict[Mono, int]

#: Term-count bound above which mul/div results are run through a full
#: polynomial gcd cancellation (via sympy).  Cross-multiplication equality is
#: exact either way; this only keeps intermediate fractions small.
full_reduction_threshold = 24

_ONE_POLY: PPoly = {(): 1}


def _mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    exps: dict[str, int] = dict(a)
    for name, e in b:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


def _mono_key(m: Mono):
    # Graded order: total degree first, then the sorted (name, exp) tuple.
    return (sum(e for _, e in m), m)


def _poly_add(a: PPoly, b: PPoly) -> PPoly:
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def _poly_neg(a: PPoly) -> PPoly:
    return {m: -c for m, c in a.items()}

def _poly_mul(a: PPoly, b: PPoly) -> PPoly:
    if a == _ONE_POLY:
        return dict(b)
    if b == _ONE_POLY:
        return dict(a)
    out: PPoly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = _mono_mul(ma, mb)
            s = out.get(m, 0) + ca * cb
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def _poly_lead(a: PPoly) -> tuple[Mono, int]:
    """Leading term: max total degree, alphabetically first within a degree
    (matches the display order of _poly_str)."""
    top = max(sum(e for _, e in m) for m in a)
    m = min(mm for mm in a if sum(e for _, e in mm) == top)
    return m, a[m]


def _poly_content(a: PPoly) -> int:
    g = 0
    for c in a.values():
        g = gcd(g, abs(c))
        if g == 1:
            return 1
    return g


def _poly_mono_gcd(a: PPoly) -> Mono:
    """Largest monomial dividing every monomial of ``a``."""
    common: dict[str, int] | None = None
    for m in a:
        exps = dict(m)
        if common is None:
            common = exps
        else:
            common = {n: min(e, exps[n]) for n, e in common.items() if n in exps}
        if not common:
            return ()
    return tuple(sorted((n, e) for n, e in (common or {}).items() if e > 0))


def _mono_div(m: Mono, d: Mono) -> Mono:
    if not d:
        return m
    dd = dict(d)
    out = []
    for name, e in m:
        r = e - dd.get(name, 0)
        if r:
            out.append((name, r))
    return tuple(out)


def _poly_eval(a: PPoly, assignment: dict[str, Fraction]) -> Fraction:
    total = Fraction(0)
    for m, c in a.items():
        v = Fraction(c)
        for name, e in m:
            v *= assignment[name] ** e
        total += v
    return total


def _poly_names(a: PPoly) -> set[str]:
    names: set[str] = set()
    for m in a:
        for name, _ in m:
            names.add(name)
    return names


def _mono_str(m: Mono) -> str:
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in m)


def _poly_str(a: PPoly) -> str:
    if not a:
        return "0"
    parts: list[str] = []
    for m in sorted(a, key=lambda mm: (-sum(e for _, e in mm), mm)):
        c = a[m]
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if not m:
            body = str(c)
        elif c == 1:
            body = _mono_str(m)
        else:
            body = f"{c}*{_mono_str(m)}"
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def _full_cancel(num: PPoly, den: PPoly) -> tuple[PPoly, PPoly]:
    """Cancel the full polynomial gcd of num and den.  Exactness is preserved;
    sympy does the multivariate gcd work."""
    import sympy

    names = sorted(_poly_names(num) | _poly_names(den))
    if not names:
        return num, den
    gens = [sympy.Symbol(n) for n in names]
    index = {n: i for i, n in enumerate(names)}

    def to_sympy(p: PPoly):
        d = {}
        for m, c in p.items():
            exps = [0] * len(names)
            for name, e in m:
                exps[index[name]] = e
            d[tuple(exps)] = c
        return sympy.Poly.from_dict(d, *gens, domain="ZZ")

    def from_sympy(p) -> PPoly:
        out: PPoly = {}
        for exps, c in p.as_dict().items():
            m = tuple(sorted((names[i], int(e)) for i, e in enumerate(exps) if e))
            out[m] = int(c)
        return out

    pn, pd = to_sympy(num), to_sympy(den)
    g = pn.gcd(pd)
    if g.is_one:
        return num, den
    return from_sympy(pn.exquo(g)), from_sympy(pd.exquo(g))


class ParamScalar:
    """An element of the fraction field of the integer polynomial ring in the
    declared parameter names.

    Immutable; all arithmetic is exact.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: PPoly, den: PPoly | None = None, _normalized: bool = False):
        if den is None:
            den = dict(_ONE_POLY)
        if not den:
            raise DivisionByZero("scalar with zero denominator")
        if _normalized:
            self.num = num
            self.den = den
            return
        if den == _ONE_POLY:
            # content, monomial-gcd and sign normalization are all no-ops
            self.num = {m: c for m, c in num.items() if c}
            self.den = dict(_ONE_POLY)
            return
        num = {m: c for m, c in num.items() if c}
        den = {m: c for m, c in den.items() if c}
        if not den:
            raise DivisionByZero("scalar with zero denominator")
        if not num:
            self.num = {}
            self.den = dict(_ONE_POLY)
            return
        g = gcd(_poly_content(num), _poly_content(den))
        if g > 1:
            num = {m: c // g for m, c in num.items()}
            den = {m: c // g for m, c in den.items()}
        mg = _poly_mono_gcd(num)
        if mg:
            dg = _poly_mono_gcd(den)
            common = _poly_mono_gcd({mg: 1, dg: 1}) if dg else ()
            if common:
                num = {_mono_div(m, common): c for m, c in num.items()}
                den = {_mono_div(m, common): c for m, c in den.items()}
        if _poly_lead(den)[1] < 0:
            num = _poly_neg(num)
            den = _poly_neg(den)
        if (
            len(num) > 1
            and len(den) > 1
            and len(num) + len(den) >= full_reduction_threshold
        ):
            num, den = _full_cancel(num, den)
        if den == _ONE_POLY:
            den = dict(_ONE_POLY)
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> "ParamScalar":
        return cls({(): n} if n else {})

    @classmethod
    def from_fraction(cls, q: Fraction | int) -> "ParamScalar":
        q = Fraction(q)
        return cls({(): q.numerator} if q.numerator else {}, {(): q.denominator})

    @classmethod
    def parameter(cls, name: str) -> "ParamScalar":
        return cls({((name, 1),): 1})

    @classmethod
    def zero(cls) -> "ParamScalar":
        return cls({})

    @classmethod
    def one(cls) -> "ParamScalar":
        return cls.from_int(1)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == self.den

    def is_constant(self) -> bool:
        """True when no parameter occurs (an exact rational number)."""
        return all(not m for m in self.num) and all(not m for m in self.den)

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"scalar {self} is not parameter-free")
        return Fraction(self.num.get((), 0), self.den[()])

    def parameter_names(self) -> set[str]:
        return _poly_names(self.num) | _poly_names(self.den)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "ParamScalar":
        if isinstance(other, ParamScalar):
            return other
        if isinstance(other, int):
            return ParamScalar.from_int(other)
        if isinstance(other, Fraction):
            return ParamScalar.from_fraction(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "ParamScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        num = _poly_add(_poly_mul(self.num, other.den), _poly_mul(other.num, self.den))
        return ParamScalar(num, _poly_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self) -> "ParamScalar":
        return ParamScalar(_poly_neg(self.num), dict(self.den), _normalized=True)

    def __sub__(self, other) -> "ParamScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ParamScalar":
        return self._coerce(other) - self

    def __mul__(self, other) -> "ParamScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ParamScalar(_poly_mul(self.num, other.num), _poly_mul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ParamScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero(f"division of {self} by zero scalar")
        return ParamScalar(_poly_mul(self.num, other.den), _poly_mul(self.den, other.num))

    def __rtruediv__(self, other) -> "ParamScalar":
        return self._coerce(other) / self

    def inverse(self) -> "ParamScalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero scalar")
        return ParamScalar(dict(self.den), dict(self.num))

    def __pow__(self, e: int) -> "ParamScalar":
        if e < 0:
            return self.inverse() ** (-e)
        out = ParamScalar.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        lhs = _poly_mul(self.num, other.den)
        rhs = _poly_mul(other.num, self.den)
        return lhs == rhs

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None  # non-canonical representation; do not use as dict key

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- evaluation --------------------------------------------------------

    def evaluate(self, assignment: dict[str, Fraction]) -> Fraction:
        """Evaluate at exact rational parameter values.

        Raises DivisionByZero when the denominator vanishes at the point.
        """
        den = _poly_eval(self.den, assignment)
        if den == 0:
            raise DivisionByZero(f"denominator of {self} vanishes under {assignment}")
        return _poly_eval(self.num, assignment) / den

    # -- printing ----------------------------------------------------------

    def sign_normalized(self) -> tuple[int, "ParamScalar"]:
        """Split into (sign, nonnegative part) using the leading numerator
        coefficient; the zero scalar returns (1, 0)."""
        if self.is_zero():
            return 1, self
        if _poly_lead(self.num)[1] < 0:
            return -1, -self
        return 1, self

    def needs_parens_as_factor(self) -> bool:
        """Whether the printed form must be parenthesized when juxtaposed with
        ``*`` inside a larger product.  Fraction forms like ``b/a`` or
        ``(a + b)/(a^2*b)`` reparse correctly as factor chains; only a bare
        multi-term numerator needs wrapping.  Callers are expected to extract
        the sign first via ``sign_normalized``."""
        return len(self.num) > 1 and self.den == _ONE_POLY

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        num_s = _poly_str(self.num)
        if self.den == _ONE_POLY:
            return num_s
        if len(self.num) > 1:
            sign, positive = self.sign_normalized()
            if sign < 0:
                return "-" + str(positive)
            num_s = f"({num_s})"
        den_s = _poly_str(self.den)
        if not _den_is_atomic(self.den):
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    def __repr__(self) -> str:
        return f"ParamScalar({self})"


def _den_is_atomic(den: PPoly) -> bool:
    """A denominator printable after '/' without parentheses: a bare positive
    integer or a single power of one parameter."""
    if len(den) != 1:
        return False
    (m, c), = den.items()
    if not m:
        return c > 0
    return c == 1 and len(m) == 1
