"""Presentations of skew PBW extensions: data model, text format, axiom
validation, shape classification, parameter specialization.

A presentation fixes a base ring K[t_1..t_m], ordered variables x_1 < .. <
x_n, per-variable endomorphism/derivation pairs acting on the base ring, and
one oriented relation per variable pair

    x_j * x_i  =  c_(i,j) * x_i * x_j  +  tail_(i,j)      (j > i)

where the tail is an element of R + R x_1 + .. + R x_n.  Unstated data
defaults to the habitual commutative polynomial ring: identity endomorphisms,
zero derivations, c = 1 and zero tails.

Text format (line oriented, '#' comments, ';' terminated statements):

    params q, h;
    base t1, t2;                  # optional; omitted means m = 0
    vars x, y;                    # declaration order is the variable order
    sigma x: t1 -> q*t1;
    sigmainv x: t1 -> (1/q)*t1;
    delta x: t1 -> 1;
    rel y*x = q*x*y + t1*x + 1;
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DivisionByZero,
    DuplicateRelation,
    ParseError,
    SpecializationDivisionByZero,
    SpecializationError,
    TailDegreeError,
)
from .maps import DerivMap, EndoMap, validate_maps
from .parsing import ExprParser, Token, tokenize
from .polys import Poly
from .reporting import CheckResult, ValidationReport
from .scalars import ParamScalar

_KEYWORDS = ("params", "base", "vars", "sigma", "sigmainv", "delta", "rel")


@dataclass(frozen=True)
class Tail:
    """Degree-at-most-one remainder of a pair relation: constant part plus one
    base-ring coefficient per variable."""

    constant: Poly
    linear: tuple[Poly, ...]

    @classmethod
    def zero(cls, m: int, n: int) -> "Tail":
        return cls(Poly.zero(m), tuple(Poly.zero(m) for _ in range(n)))

    def is_zero(self) -> bool:
        return self.constant.is_zero() and all(p.is_zero() for p in self.linear)

    def scale(self, scalar: ParamScalar) -> "Tail":
        return Tail(self.constant.scale(scalar), tuple(p.scale(scalar) for p in self.linear))

    def map_polys(self, fn) -> "Tail":
        return Tail(fn(self.constant), tuple(fn(p) for p in self.linear))


@dataclass(frozen=True)
class ShapeReport:
    quasi_commutative: bool
    bijective: bool
    finitely_graded: bool
    witnesses: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "quasi_commutative": self.quasi_commutative,
            "bijective": self.bijective,
            "finitely_graded": self.finitely_graded,
            "witnesses": list(self.witnesses),
        }


class Presentation:
    """Immutable skew PBW extension presentation.

    Only non-default pair relations are stored: ``c`` and ``tails`` hold an
    entry for (i, j) exactly when the relation differs from x_j x_i = x_i x_j.
    """

    __slots__ = (
        "name",
        "params",
        "base_names",
        "var_names",
        "sigma",
        "delta",
        "c",
        "tails",
        "_nf_cache",
    )

    def __init__(
        self,
        name: str,
        params: Sequence[str],
        base_names: Sequence[str],
        var_names: Sequence[str],
        sigma: Sequence[EndoMap],
        delta: Sequence[DerivMap],
        c: Mapping[tuple[int, int], Poly],
        tails: Mapping[tuple[int, int], Tail],
    ):
        self.name = name
        self.params = tuple(params)
        self.base_names = tuple(base_names)
        self.var_names = tuple(var_names)
        self.sigma = tuple(sigma)
        self.delta = tuple(delta)
        m, n = len(self.base_names), len(self.var_names)
        stored_c: dict[tuple[int, int], Poly] = {}
        stored_t: dict[tuple[int, int], Tail] = {}
        for pair in set(c) | set(tails):
            cc = c.get(pair, Poly.one(m))
            tt = tails.get(pair, Tail.zero(m, n))
            if cc.is_one() and tt.is_zero():
                continue
            stored_c[pair] = cc
            stored_t[pair] = tt
        self.c = stored_c
        self.tails = stored_t
        self._nf_cache: dict = {}

    @property
    def nf_cache(self) -> dict:
        """Memo for monomial-times-variable normal forms; invisible to
        callers (the presentation data is immutable)."""
        return self._nf_cache

    # -- structure ---------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.base_names)

    @property
    def n(self) -> int:
        return len(self.var_names)

    def pairs(self):
        """All variable pairs (i, j) with i < j, in sorted order."""
        n = self.n
        return [(i, j) for i in range(n) for j in range(i + 1, n)]

    def c_of(self, i: int, j: int) -> Poly:
        return self.c.get((i, j), Poly.one(self.m))

    def tail_of(self, i: int, j: int) -> Tail:
        return self.tails.get((i, j), Tail.zero(self.m, self.n))

    def pair_label(self, i: int, j: int) -> str:
        return f"({self.var_names[i]}, {self.var_names[j]})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Presentation):
            return NotImplemented
        if (
            self.params != other.params
            or self.base_names != other.base_names
            or self.var_names != other.var_names
        ):
            return False
        if any(a != b for a, b in zip(self.sigma, other.sigma)):
            return False
        if any(a != b for a, b in zip(self.delta, other.delta)):
            return False
        if set(self.c) != set(other.c):
            return False
        for pair in self.c:
            if self.c[pair] != other.c[pair] or self.tails[pair] != other.tails[pair]:
                return False
        return True

    __hash__ = None

    def __repr__(self) -> str:
        return f"Presentation({self.name!r}, m={self.m}, n={self.n})"


# ---------------------------------------------------------------------------
# parsing


class _PresentationParser:
    def __init__(self, source: str, name: str):
        self.tokens = tokenize(source)
        self.pos = 0
        self.name = name
        self.params: list[str] = []
        self.base_names: list[str] = []
        self.var_names: list[str] = []
        self.seen: dict[str, str] = {}
        self.sigma_images: dict[tuple[int, int], Poly] = {}
        self.sigmainv_images: dict[tuple[int, int], Poly] = {}
        self.delta_images: dict[tuple[int, int], Poly] = {}
        self.relations: dict[tuple[int, int], tuple[Poly, Tail]] = {}

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect_op(self, value: str) -> Token:
        t = self.next()
        if t.kind != "OP" or t.value != value:
            raise ParseError(f"expected {value!r}, found {t.value!r}", t.line, t.col)
        return t

    def expect_name(self) -> Token:
        t = self.next()
        if t.kind != "NAME":
            raise ParseError(f"expected a name, found {t.value!r}", t.line, t.col)
        return t

    def parse(self) -> Presentation:
        while self.peek().kind != "EOF":
            head = self.expect_name()
            if head.value == "params":
                self._declare_list(head, self.params, "parameter")
            elif head.value == "base":
                self._declare_list(head, self.base_names, "base generator")
            elif head.value == "vars":
                self._declare_list(head, self.var_names, "variable")
            elif head.value in ("sigma", "sigmainv", "delta"):
                self._map_statement(head)
            elif head.value == "rel":
                self._relation_statement(head)
            else:
                raise ParseError(
                    f"unknown statement {head.value!r} (expected one of {', '.join(_KEYWORDS)})",
                    head.line,
                    head.col,
                )
        if not self.var_names:
            raise ParseError("presentation declares no variables (missing 'vars')")
        return self._build()

    def _declare_list(self, head: Token, target: list[str], what: str) -> None:
        if target:
            raise ParseError(f"duplicate {head.value!r} statement", head.line, head.col)
        while True:
            t = self.expect_name()
            if t.value in _KEYWORDS:
                raise ParseError(f"{t.value!r} is a reserved word", t.line, t.col)
            if t.value in self.seen:
                raise ParseError(
                    f"name {t.value!r} already declared as {self.seen[t.value]}", t.line, t.col
                )
            self.seen[t.value] = what
            target.append(t.value)
            t = self.next()
            if t.kind == "OP" and t.value == ",":
                continue
            if t.kind == "OP" and t.value == ";":
                return
            raise ParseError(f"expected ',' or ';', found {t.value!r}", t.line, t.col)

    def _var_index(self, tok: Token) -> int:
        try:
            return self.var_names.index(tok.value)
        except ValueError:
            raise ParseError(f"{tok.value!r} is not a declared variable", tok.line, tok.col)

    def _base_index(self, tok: Token) -> int:
        try:
            return self.base_names.index(tok.value)
        except ValueError:
            raise ParseError(f"{tok.value!r} is not a declared base generator", tok.line, tok.col)

    def _r_expr(self) -> Poly:
        """Parse an expression that must lie in the base ring."""
        parser = ExprParser(self.tokens, self.pos, self.params, self.base_names, self.var_names)
        terms = parser.parse_expression()
        self.pos = parser.pos
        m = len(self.base_names)
        out = Poly.zero(m)
        for coeff, factors in terms:
            mono = Poly.const(m, coeff)
            for kind, idx, exp in factors:
                if kind != "base":
                    raise ParseError(
                        f"variable {self.var_names[idx]!r} not allowed in a base-ring expression"
                    )
                mono = mono * Poly.gen(m, idx) ** exp
            out = out + mono
        return out

    def _map_statement(self, head: Token) -> None:
        var_tok = self.expect_name()
        i = self._var_index(var_tok)
        self.expect_op(":")
        gen_tok = self.expect_name()
        k = self._base_index(gen_tok)
        self.expect_op("->")
        image = self._r_expr()
        self.expect_op(";")
        store = {
            "sigma": self.sigma_images,
            "sigmainv": self.sigmainv_images,
            "delta": self.delta_images,
        }[head.value]
        if (i, k) in store:
            raise ParseError(
                f"duplicate {head.value} image for ({var_tok.value}, {gen_tok.value})",
                head.line,
                head.col,
            )
        store[(i, k)] = image

    def _relation_statement(self, head: Token) -> None:
        left_tok = self.expect_name()
        a = self._var_index(left_tok)
        self.expect_op("*")
        right_tok = self.expect_name()
        b = self._var_index(right_tok)
        if a == b:
            raise ParseError(
                "relation left side must involve two distinct variables", head.line, head.col
            )
        self.expect_op("=")
        parser = ExprParser(self.tokens, self.pos, self.params, self.base_names, self.var_names)
        terms = parser.parse_expression()
        self.pos = parser.pos
        self.expect_op(";")

        m, n = len(self.base_names), len(self.var_names)
        quad: dict[tuple[int, int], Poly] = {}
        linear = [Poly.zero(m) for _ in range(n)]
        const = Poly.zero(m)
        for coeff, factors in terms:
            base_poly = Poly.const(m, coeff)
            var_word: list[int] = []
            for kind, idx, exp in factors:
                if kind == "base":
                    if var_word:
                        raise ParseError(
                            "base-ring coefficients must be written to the left of variables",
                            head.line,
                            head.col,
                        )
                    base_poly = base_poly * Poly.gen(m, idx) ** exp
                else:
                    var_word.extend([idx] * exp)
            if len(var_word) == 0:
                const = const + base_poly
            elif len(var_word) == 1:
                linear[var_word[0]] = linear[var_word[0]] + base_poly
            elif len(var_word) == 2:
                key = (var_word[0], var_word[1])
                quad[key] = quad.get(key, Poly.zero(m)) + base_poly
            else:
                mono = "*".join(self.var_names[i] for i in var_word)
                raise TailDegreeError(
                    f"monomial {mono!r} exceeds the degree-one tail bound", head.line, head.col
                )

        if a > b:
            i, j = b, a
            expected = (b, a)
        else:
            i, j = a, b
            expected = (b, a)
        for key in quad:
            if key != expected:
                mono = f"{self.var_names[key[0]]}*{self.var_names[key[1]]}"
                raise TailDegreeError(
                    f"unexpected quadratic monomial {mono!r} in relation for "
                    f"{left_tok.value}*{right_tok.value}",
                    head.line,
                    head.col,
                )
        c_poly = quad.get(expected, Poly.zero(m))
        tail = Tail(const, tuple(linear))
        if a < b:
            # Written as x_i x_j = c' x_j x_i + tail'; reorient by dividing by
            # c', which must be an invertible scalar.
            if not c_poly.is_unit():
                raise ParseError(
                    "cannot reorient relation: coefficient of "
                    f"{self.var_names[b]}*{self.var_names[a]} is not an invertible scalar",
                    head.line,
                    head.col,
                )
            inv = c_poly.constant_scalar().inverse()
            c_poly = Poly.const(m, inv)
            tail = tail.scale(-inv)
        if (i, j) in self.relations:
            raise DuplicateRelation(
                f"relation for pair {self.var_names[i]!r}, {self.var_names[j]!r} given twice",
                head.line,
                head.col,
            )
        self.relations[(i, j)] = (c_poly, tail)

    def _build(self) -> Presentation:
        m, n = len(self.base_names), len(self.var_names)
        sigma: list[EndoMap] = []
        delta: list[DerivMap] = []
        for i in range(n):
            forward = [
                self.sigma_images.get((i, k), Poly.gen(m, k)) for k in range(m)
            ]
            has_sigma = any((i, k) in self.sigma_images for k in range(m))
            has_inv = any((i, k) in self.sigmainv_images for k in range(m))
            if has_inv:
                inverse = [
                    self.sigmainv_images.get((i, k), Poly.gen(m, k)) for k in range(m)
                ]
            elif not has_sigma or all(
                img == Poly.gen(m, k) for k, img in enumerate(forward)
            ):
                inverse = list(forward)  # identity is trivially self-inverse
            else:
                inverse = None
            endo = EndoMap(forward, inverse)
            sigma.append(endo)
            images = [self.delta_images.get((i, k), Poly.zero(m)) for k in range(m)]
            delta.append(DerivMap(images, endo))
        c = {pair: rel[0] for pair, rel in self.relations.items()}
        tails = {pair: rel[1] for pair, rel in self.relations.items()}
        return Presentation(
            self.name, self.params, self.base_names, self.var_names, sigma, delta, c, tails
        )


def parse(source: str, name: str = "presentation") -> Presentation:
    """Parse presentation text into a Presentation."""
    return _PresentationParser(source, name).parse()


# ---------------------------------------------------------------------------
# emission


def _combination_str(entries: list[tuple[Poly, str]], base_names: Sequence[str]) -> str:
    """Render sum of coeff*monomial entries, distributing base-ring
    coefficients so the output stays inside the expression grammar."""
    parts: list[str] = []
    for coeff, mono in entries:
        for expo, scalar in coeff.sorted_terms():
            t_mono = "*".join(
                base_names[k] if e == 1 else f"{base_names[k]}^{e}"
                for k, e in enumerate(expo)
                if e
            )
            factors = [f for f in (t_mono, mono) if f]
            sign, mag = scalar.sign_normalized()
            if not factors:
                body = str(mag) if not mag.needs_parens_as_factor() else f"({mag})"
            elif mag.is_one():
                body = "*".join(factors)
            else:
                mag_s = f"({mag})" if mag.needs_parens_as_factor() else str(mag)
                body = "*".join([mag_s] + factors)
            if not parts:
                parts.append(body if sign > 0 else "-" + body)
            else:
                parts.append(f" {'+' if sign > 0 else '-'} {body}")
    return "".join(parts) if parts else "0"


def emit(p: Presentation) -> str:
    """Canonical text for a presentation; parse(emit(p)) reconstructs p."""
    lines: list[str] = []
    if p.params:
        lines.append(f"params {', '.join(p.params)};")
    if p.base_names:
        lines.append(f"base {', '.join(p.base_names)};")
    lines.append(f"vars {', '.join(p.var_names)};")
    m = p.m
    for i, var in enumerate(p.var_names):
        endo = p.sigma[i]
        identity = endo.is_identity()
        for k in range(m):
            img = endo.images[k]
            if img != Poly.gen(m, k):
                lines.append(
                    f"sigma {var}: {p.base_names[k]} -> {img.to_str(p.base_names)};"
                )
        if endo.inverse_images is not None and not identity:
            emitted = False
            for k in range(m):
                inv = endo.inverse_images[k]
                if inv != Poly.gen(m, k):
                    lines.append(
                        f"sigmainv {var}: {p.base_names[k]} -> {inv.to_str(p.base_names)};"
                    )
                    emitted = True
            if not emitted and m:
                # mark inverse presence even when it is the identity
                lines.append(
                    f"sigmainv {var}: {p.base_names[0]} -> {p.base_names[0]};"
                )
        for k in range(m):
            img = p.delta[i].images[k]
            if not img.is_zero():
                lines.append(
                    f"delta {var}: {p.base_names[k]} -> {img.to_str(p.base_names)};"
                )
    for (i, j) in sorted(p.c):
        c = p.c[(i, j)]
        tail = p.tails[(i, j)]
        entries: list[tuple[Poly, str]] = [(c, f"{p.var_names[i]}*{p.var_names[j]}")]
        for k in range(p.n):
            entries.append((tail.linear[k], p.var_names[k]))
        entries.append((tail.constant, ""))
        rhs = _combination_str(entries, p.base_names)
        lines.append(f"rel {p.var_names[j]}*{p.var_names[i]} = {rhs};")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# validation and classification


def validate_axioms(p: Presentation) -> ValidationReport:
    """Check the presentation axioms that are decidable from the data: pair
    constants nonzero, supplied inverses correct, derivation pair-symmetry,
    tails structurally bounded.  The free-basis property itself is certified
    separately by the confluence check."""
    checks: list[CheckResult] = []
    for (i, j) in p.pairs():
        cc = p.c_of(i, j)
        checks.append(
            CheckResult(
                f"c_nonzero{p.pair_label(i, j)}",
                not cc.is_zero(),
                None if not cc.is_zero() else p.pair_label(i, j),
            )
        )
    for i, var in enumerate(p.var_names):
        report = validate_maps(p.sigma[i], p.delta[i], p.base_names, var)
        if p.sigma[i].has_inverse():
            checks.append(report.find(f"sigma_inverse_verified[{var}]"))
        checks.append(report.find(f"delta_consistent[{var}]"))
    # Tails are bounded by construction of the Tail type; record it.
    checks.append(CheckResult("tails_degree_le_1", True, None))
    return ValidationReport(tuple(checks))


def classify_shape(p: Presentation) -> ShapeReport:
    """Quasi-commutative / bijective / finitely-graded flags with witnesses."""
    witnesses: list[str] = []
    quasi = True
    for i, var in enumerate(p.var_names):
        if not p.delta[i].is_zero():
            quasi = False
            witnesses.append(f"delta[{var}] is nonzero")
    for (i, j) in sorted(p.tails):
        if not p.tails[(i, j)].is_zero():
            quasi = False
            witnesses.append(f"tail{p.pair_label(i, j)} is nonzero")

    bijective = True
    for i, var in enumerate(p.var_names):
        endo = p.sigma[i]
        if not endo.has_inverse():
            bijective = False
            witnesses.append(f"sigma[{var}] has no verified inverse")
            continue
        report = validate_maps(endo, None, p.base_names, var)
        if not report.passed:
            bijective = False
            witnesses.append(f"sigma[{var}] inverse fails verification")
    for (i, j) in p.pairs():
        cc = p.c_of(i, j)
        if not cc.is_unit():
            bijective = False
            witnesses.append(f"c{p.pair_label(i, j)} is not an invertible scalar")

    graded = p.m == 0 and all(t.is_zero() for t in p.tails.values())
    if p.m != 0:
        witnesses.append("base ring has generators (m > 0)")
    return ShapeReport(quasi, bijective, graded, tuple(witnesses))


def specialize(p: Presentation, assignment: Mapping[str, Fraction | int | str]) -> Presentation:
    """Substitute exact rationals for every parameter.

    Raises SpecializationDivisionByZero when a denominator vanishes and
    SpecializationError when a pair constant becomes zero or a parameter is
    left unassigned.
    """
    values: dict[str, Fraction] = {}
    for name in p.params:
        if name not in assignment:
            raise SpecializationError(f"no value assigned to parameter {name!r}")
        values[name] = Fraction(assignment[name])

    def spec_scalar(s: ParamScalar) -> ParamScalar:
        try:
            return ParamScalar.from_fraction(s.evaluate(values))
        except DivisionByZero:
            raise SpecializationDivisionByZero(
                f"denominator of {s} vanishes under the assignment"
            )

    def spec_poly(q: Poly) -> Poly:
        return q.map_scalars(spec_scalar)

    sigma = []
    for endo in p.sigma:
        inverse = (
            [spec_poly(img) for img in endo.inverse_images]
            if endo.inverse_images is not None
            else None
        )
        sigma.append(EndoMap([spec_poly(img) for img in endo.images], inverse))
    delta = [
        DerivMap([spec_poly(img) for img in d.images], sigma[i])
        for i, d in enumerate(p.delta)
    ]
    c = {}
    for pair, cc in p.c.items():
        spec_c = spec_poly(cc)
        if spec_c.is_zero():
            raise SpecializationError(
                f"pair constant c{p.pair_label(*pair)} becomes zero under the assignment"
            )
        c[pair] = spec_c
    tails = {pair: t.map_polys(spec_poly) for pair, t in p.tails.items()}
    return Presentation(
        p.name, (), p.base_names, p.var_names, sigma, delta, c, tails
    )
