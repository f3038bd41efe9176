"""Normal forms on the standard-monomial basis, ring multiplication, and the
overlap (confluence) certificate for the basis property.

Elements are left R-linear combinations of standard monomials x^a with the
coefficient always kept on the left.  Reduction rewrites free words by three
moves, each strictly decreasing the measure (x-degree, inversion count,
scalar disorder, length):

  * two adjacent base-ring scalars multiply,
  * x_i * r  ->  sigma_i(r) x_i + delta_i(r),
  * x_j * x_i (j > i)  ->  c_(i,j) x_i x_j + tail_(i,j),

so every word terminates in a unique-shape normal form regardless of the
chosen strategy.  Confluence, and with it freeness of the standard monomials,
is certified by reducing every overlap word x_k x_j x_i (k > j > i) and
x_j x_i t_l (j > i) under the leftmost and rightmost strategies and comparing
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArityMismatch
from .polys import Poly
from .presentation import Presentation
from .scalars import ParamScalar

#: Degree of the zero element.
MINUS_INFINITY = float("-inf")

STRATEGIES = ("leftmost", "rightmost")


class Element:
    """Left R-linear combination of standard monomials.

    ``terms`` maps exponent vectors over the n variables to nonzero base-ring
    coefficients (polynomials in the m base generators).
    """

    __slots__ = ("nvars", "base_arity", "terms")

    def __init__(self, nvars: int, base_arity: int, terms: dict | None = None, _clean: bool = True):
        self.nvars = nvars
        self.base_arity = base_arity
        if terms is None:
            terms = {}
        if _clean:
            terms = {e: c for e, c in terms.items() if not c.is_zero()}
        self.terms = terms

    @classmethod
    def zero(cls, p: Presentation) -> "Element":
        return cls(p.n, p.m, {}, _clean=False)

    @classmethod
    def from_coeff(cls, p: Presentation, coeff: Poly) -> "Element":
        return cls(p.n, p.m, {(0,) * p.n: coeff})

    @classmethod
    def monomial(cls, p: Presentation, expo, coeff: Poly | None = None) -> "Element":
        expo = tuple(expo)
        if len(expo) != p.n:
            raise ArityMismatch(f"exponent {expo} has wrong length for {p.n} variables")
        if coeff is None:
            coeff = Poly.one(p.m)
        return cls(p.n, p.m, {expo: coeff})

    @classmethod
    def variable(cls, p: Presentation, i: int) -> "Element":
        e = [0] * p.n
        e[i] = 1
        return cls.monomial(p, e)

    def _check(self, other: "Element") -> None:
        if self.nvars != other.nvars or self.base_arity != other.base_arity:
            raise ArityMismatch("elements live over different presentations")

    def __add__(self, other: "Element") -> "Element":
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
        return Element(self.nvars, self.base_arity, out, _clean=False)

    def __neg__(self) -> "Element":
        return Element(
            self.nvars, self.base_arity, {e: -c for e, c in self.terms.items()}, _clean=False
        )

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, coeff: Poly) -> "Element":
        """Left-multiply every coefficient by a base-ring element."""
        if coeff.is_zero():
            return Element(self.nvars, self.base_arity, {}, _clean=False)
        return Element(
            self.nvars, self.base_arity, {e: coeff * c for e, c in self.terms.items()}
        )

    def scale_scalar(self, scalar: ParamScalar) -> "Element":
        return Element(
            self.nvars, self.base_arity, {e: c.scale(scalar) for e, c in self.terms.items()}
        )

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Max total variable degree; MINUS_INFINITY for the zero element."""
        if not self.terms:
            return MINUS_INFINITY
        return max(sum(e) for e in self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        if self.nvars != other.nvars or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    __hash__ = None

    def __bool__(self) -> bool:
        return not self.is_zero()

    def sorted_terms(self):
        keys = sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)
        return [(e, self.terms[e]) for e in keys]

    def to_str(self, var_names, base_names) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for e, coeff in self.sorted_terms():
            x_mono = "*".join(
                var_names[k] if exp == 1 else f"{var_names[k]}^{exp}"
                for k, exp in enumerate(e)
                if exp
            )
            for t_expo, scalar in coeff.sorted_terms():
                t_mono = "*".join(
                    base_names[k] if ee == 1 else f"{base_names[k]}^{ee}"
                    for k, ee in enumerate(t_expo)
                    if ee
                )
                factors = [f for f in (t_mono, x_mono) if f]
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
        return "".join(parts)

    def __repr__(self) -> str:
        vnames = [f"x{k + 1}" for k in range(self.nvars)]
        tnames = [f"t{k + 1}" for k in range(self.base_arity)]
        return f"Element({self.to_str(vnames, tnames)})"


# ---------------------------------------------------------------------------
# free words

#: Atoms of an unreduced word: ("s", Poly) for a base-ring scalar or
#: ("v", index) for a variable.
Atom = tuple


def word_of(*atoms) -> tuple:
    """Convenience constructor: ints become variables, Polys become scalars."""
    out = []
    for a in atoms:
        if isinstance(a, int):
            out.append(("v", a))
        elif isinstance(a, Poly):
            out.append(("s", a))
        else:
            out.append(a)
    return tuple(out)


def _monomial_atoms(expo) -> list:
    atoms = []
    for k, e in enumerate(expo):
        atoms.extend([("v", k)] * e)
    return atoms


# ---------------------------------------------------------------------------
# reduction engine


def push_coeff(p: Presentation, i: int, r: Poly) -> Element:
    """The element sigma_i(r) x_i + delta_i(r)."""
    if r.arity != p.m:
        raise ArityMismatch(f"coefficient arity {r.arity} vs base arity {p.m}")
    out = Element.variable(p, i).scale(p.sigma[i].apply(r))
    d = p.delta[i].apply(r)
    if not d.is_zero():
        out = out + Element.from_coeff(p, d)
    return out


def swap_reduce(p: Presentation, j: int, i: int) -> Element:
    """The element c_(i,j) x_i x_j + tail_(i,j) replacing x_j x_i (j > i)."""
    if not j > i:
        raise ValueError("swap_reduce requires j > i")
    e = [0] * p.n
    e[i] += 1
    e[j] += 1
    tail = p.tail_of(i, j)
    out = Element.monomial(p, e, p.c_of(i, j))
    for k in range(p.n):
        if not tail.linear[k].is_zero():
            out = out + Element.variable(p, k).scale(tail.linear[k])
    if not tail.constant.is_zero():
        out = out + Element.from_coeff(p, tail.constant)
    return out


def _find_redex(p: Presentation, word: list, strategy: str) -> int | None:
    rng = range(len(word) - 1)
    if strategy == "rightmost":
        rng = reversed(rng)
    for k in rng:
        a, b = word[k], word[k + 1]
        if a[0] == "s":
            if b[0] == "s":
                return k
            continue
        if b[0] == "s":
            return k
        if a[1] > b[1]:
            return k
    return None


def _reduce_word(p: Presentation, atoms, strategy: str) -> Element:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    result = Element.zero(p)
    stack: list[list] = [list(atoms)]
    while stack:
        word = stack.pop()
        k = _find_redex(p, word, strategy)
        if k is None:
            coeff = Poly.one(p.m)
            expo = [0] * p.n
            for kind, payload in word:
                if kind == "s":
                    coeff = coeff * payload
                else:
                    expo[payload] += 1
            if not coeff.is_zero():
                result = result + Element.monomial(p, expo, coeff)
            continue
        a, b = word[k], word[k + 1]
        prefix, suffix = word[:k], word[k + 2 :]
        if a[0] == "s" and b[0] == "s":
            merged = a[1] * b[1]
            if not merged.is_zero():
                stack.append(prefix + [("s", merged)] + suffix)
            continue
        if a[0] == "v" and b[0] == "s":
            i, r = a[1], b[1]
            forward = p.sigma[i].apply(r)
            if not forward.is_zero():
                stack.append(prefix + [("s", forward), ("v", i)] + suffix)
            d = p.delta[i].apply(r)
            if not d.is_zero():
                stack.append(prefix + [("s", d)] + suffix)
            continue
        j, i = a[1], b[1]
        cc = p.c_of(i, j)
        if not cc.is_zero():
            stack.append(prefix + [("s", cc), ("v", i), ("v", j)] + suffix)
        tail = p.tail_of(i, j)
        for t in range(p.n):
            if not tail.linear[t].is_zero():
                stack.append(prefix + [("s", tail.linear[t]), ("v", t)] + suffix)
        if not tail.constant.is_zero():
            stack.append(prefix + [("s", tail.constant)] + suffix)
    return result


def normal_form(p: Presentation, word, strategy: str = "leftmost") -> Element:
    """Fully reduce a free word to an Element over the standard monomials."""
    atoms = word_of(*word)
    for kind, payload in atoms:
        if kind == "v" and not 0 <= payload < p.n:
            raise ArityMismatch(f"variable index {payload} out of range")
        if kind == "s" and payload.arity != p.m:
            raise ArityMismatch("scalar atom has wrong base arity")
    return _reduce_word(p, atoms, strategy)


def normal_form_element(p: Presentation, f: Element, strategy: str = "leftmost") -> Element:
    """Re-reduce an element termwise (identity on reduced elements)."""
    out = Element.zero(p)
    for e, coeff in f.terms.items():
        out = out + _reduce_word(p, [("s", coeff)] + _monomial_atoms(e), strategy)
    return out


def multiply(p: Presentation, f: Element, g: Element) -> Element:
    """Product in the extension ring, reduced; bilinear over R on the left.

    Works term by term on elements (merging like monomials at every step)
    rather than through the word engine, which matters for presentations
    whose tails branch: the word engine only combines summands at the very
    end.  Results agree with word reduction on every certified presentation.
    """
    out = Element.zero(p)
    for beta, d in g.terms.items():
        acc = _times_coeff(p, f, d)
        for k in range(p.n):
            for _ in range(beta[k]):
                acc = _times_var(p, acc, k)
        out = out + acc
    return out


def _times_coeff(p: Presentation, f: Element, r: Poly) -> Element:
    """f * r for a base-ring element r."""
    if r.is_zero() or f.is_zero():
        return Element.zero(p)
    out = Element.zero(p)
    for alpha, c in f.terms.items():
        out = out + _mono_times_coeff(p, alpha, r).scale(c)
    return out


def _mono_times_coeff(p: Presentation, alpha: tuple, r: Poly) -> Element:
    """Reduced form of x^alpha * r, by x^alpha' (x_j r) with j the last
    variable of alpha."""
    if not any(alpha):
        return Element.from_coeff(p, r)
    j = max(k for k, e in enumerate(alpha) if e)
    rest = list(alpha)
    rest[j] -= 1
    rest = tuple(rest)
    out = Element.zero(p)
    forward = p.sigma[j].apply(r)
    if not forward.is_zero():
        out = out + _times_var(p, _mono_times_coeff(p, rest, forward), j)
    d = p.delta[j].apply(r)
    if not d.is_zero():
        out = out + _mono_times_coeff(p, rest, d)
    return out


def _times_var(p: Presentation, f: Element, i: int) -> Element:
    """f * x_i, reduced."""
    out = Element.zero(p)
    for alpha, c in f.terms.items():
        out = out + _mono_times_var(p, alpha, i).scale(c)
    return out


def _mono_times_var(p: Presentation, alpha: tuple, i: int) -> Element:
    """Reduced form of x^alpha * x_i, memoized per presentation."""
    cache = p.nf_cache
    key = (alpha, i)
    hit = cache.get(key)
    if hit is not None:
        return hit
    j = max((k for k, e in enumerate(alpha) if e), default=-1)
    if j <= i:
        bumped = list(alpha)
        bumped[i] += 1
        result = Element.monomial(p, bumped)
    else:
        # x^alpha x_i = x^rest (c_(i,j) x_i x_j + tail_(i,j))
        rest = list(alpha)
        rest[j] -= 1
        rest = tuple(rest)
        cc = p.c_of(i, j)
        result = Element.zero(p)
        if not cc.is_zero():
            lead = _mono_times_coeff(p, rest, cc)
            result = result + _times_var(p, _times_var(p, lead, i), j)
        tail = p.tail_of(i, j)
        for k in range(p.n):
            if not tail.linear[k].is_zero():
                result = result + _times_var(
                    p, _mono_times_coeff(p, rest, tail.linear[k]), k
                )
        if not tail.constant.is_zero():
            result = result + _mono_times_coeff(p, rest, tail.constant)
    cache[key] = result
    return result


# ---------------------------------------------------------------------------
# confluence certificate


@dataclass(frozen=True)
class OverlapResult:
    kind: str  # "variables" for x_k x_j x_i, "base" for x_j x_i t_l
    label: str
    indices: tuple
    passed: bool
    discrepancy: Element | None


@dataclass(frozen=True)
class ConsistencyCertificate:
    overlaps: tuple[OverlapResult, ...]

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.overlaps)

    def failures(self) -> tuple[OverlapResult, ...]:
        return tuple(o for o in self.overlaps if not o.passed)


def check_pbw_consistency(p: Presentation) -> ConsistencyCertificate:
    """Resolve every overlap ambiguity under both strategies.

    Overlap words are x_k x_j x_i for all k > j > i and x_j x_i t_l for all
    j > i and base generators t_l.  All-pass makes the rewriting system
    confluent, so the standard monomials are a left R-basis.
    """
    results: list[OverlapResult] = []
    names = p.var_names
    for k in range(2, p.n):
        for j in range(1, k):
            for i in range(j):
                word = [("v", k), ("v", j), ("v", i)]
                left = _reduce_word(p, word, "leftmost")
                right = _reduce_word(p, word, "rightmost")
                diff = left - right
                label = f"({names[k]}, {names[j]}, {names[i]})"
                results.append(
                    OverlapResult(
                        "variables",
                        label,
                        (k + 1, j + 1, i + 1),
                        diff.is_zero(),
                        None if diff.is_zero() else diff,
                    )
                )
    for j in range(1, p.n):
        for i in range(j):
            for l in range(p.m):
                word = [("v", j), ("v", i), ("s", Poly.gen(p.m, l))]
                left = _reduce_word(p, word, "leftmost")
                right = _reduce_word(p, word, "rightmost")
                diff = left - right
                label = f"({names[j]}, {names[i]}, {p.base_names[l]})"
                results.append(
                    OverlapResult(
                        "base",
                        label,
                        (j + 1, i + 1, l + 1),
                        diff.is_zero(),
                        None if diff.is_zero() else diff,
                    )
                )
    return ConsistencyCertificate(tuple(results))


# ---------------------------------------------------------------------------
# expression input


def element_from_terms(p: Presentation, terms, strategy: str = "leftmost") -> Element:
    """Assemble an Element from parsed (coefficient, factors) products."""
    out = Element.zero(p)
    for coeff, factors in terms:
        atoms: list = []
        if not coeff.is_one():
            atoms.append(("s", Poly.const(p.m, coeff)))
        for kind, idx, exp in factors:
            if kind == "base":
                atoms.append(("s", Poly.gen(p.m, idx) ** exp))
            else:
                atoms.extend([("v", idx)] * exp)
        out = out + _reduce_word(p, atoms, strategy)
    return out


def parse_element(p: Presentation, text: str, strategy: str = "leftmost") -> Element:
    """Parse an expression in the presentation's names and reduce it."""
    from .parsing import ExprParser, tokenize

    tokens = tokenize(text)
    parser = ExprParser(tokens, 0, p.params, p.base_names, p.var_names)
    terms = parser.parse_expression()
    tok = parser.peek()
    if tok.kind != "EOF":
        from .errors import ParseError

        raise ParseError(f"unexpected trailing input {tok.value!r}", tok.line, tok.col)
    return element_from_terms(p, terms, strategy)
