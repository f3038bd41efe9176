"""Associated graded structure: the quasi-commutative degeneration, principal
symbols, the iterated Ore tower, and graded dimension counts.

The total-degree filtration puts the base ring in degree zero, so passing to
the associated graded presentation just zeroes every derivation and every
relation tail.  For quasi-commutative presentations the ring is an iterated
skew polynomial ring of endomorphism type: stage j acts on the base ring by
sigma_j and rescales each earlier variable z_i by c_(i,j).  The tower
multiplication here is implemented independently of the rewrite engine (on a
nested coefficient representation) so the two routes can be replayed against
each other.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

from .errors import (
    BasisCertificationError,
    NotFinitelyGraded,
    NotQuasiCommutative,
    ZeroElement,
)
from .linalg import rank
from .maps import DerivMap, EndoMap
from .polys import Poly
from .presentation import Presentation, classify_shape
from .rewrite import Element, multiply, normal_form
from .scalars import ParamScalar

_REPLAY_SEED = 0x5B3A


def gr_presentation(p: Presentation) -> Presentation:
    """The associated graded presentation: same sigma and pair constants,
    derivations and tails dropped.  Always quasi-commutative; bijective
    whenever the input is."""
    sigma = list(p.sigma)
    delta = [DerivMap.zero(endo) for endo in sigma]
    name = p.name if p.name.startswith("gr(") else f"gr({p.name})"
    return Presentation(
        name, p.params, p.base_names, p.var_names, sigma, delta, dict(p.c), {}
    )


def principal_symbol(p: Presentation, f: Element) -> Element:
    """Sum of the top-degree terms of ``f``, viewed in the graded ring."""
    if f.is_zero():
        raise ZeroElement("the zero element has no principal symbol")
    top = f.degree()
    return Element(
        f.nvars,
        f.base_arity,
        {e: c for e, c in f.terms.items() if sum(e) == top},
        _clean=False,
    )


# ---------------------------------------------------------------------------
# iterated Ore tower


@dataclass(frozen=True)
class OreStage:
    """Stage j of the tower: the new variable, its action on the base ring,
    and the rescaling constants for the earlier variables."""

    var_name: str
    endo: EndoMap
    multipliers: tuple[Poly, ...]  # c_(i,j) for each i < j


@dataclass(frozen=True)
class OreTower:
    base_arity: int
    base_names: tuple[str, ...]
    stages: tuple[OreStage, ...]

    @property
    def nvars(self) -> int:
        return len(self.stages)

    # The nested representation of a stage-k element is a Poly for k == 0 and
    # a dict {exponent of z_k: stage-(k-1) element} for k >= 1.

    def _zero(self, k: int):
        return Poly.zero(self.base_arity) if k == 0 else {}

    def _add(self, k: int, a, b):
        if k == 0:
            return a + b
        out = dict(a)
        for e, c in b.items():
            if e in out:
                s = self._add(k - 1, out[e], c)
                if self._is_zero(k - 1, s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return out

    def _is_zero(self, k: int, a) -> bool:
        return a.is_zero() if k == 0 else not a

    def _lift_poly(self, k: int, r: Poly):
        return r if k == 0 else ({0: self._lift_poly(k - 1, r)} if not r.is_zero() else {})

    def _theta(self, j: int, k: int, a):
        """Apply stage-j's endomorphism to a stage-k element (k < j)."""
        if k == 0:
            return self.stages[j].endo.apply(a)
        c = self._lift_poly(k - 1, self.stages[j].multipliers[k - 1])
        out: dict = {}
        for e, coeff in a.items():
            mapped = self._theta(j, k - 1, coeff)
            # theta_j(z_k^e) = c * theta_k(c) * .. * theta_k^(e-1)(c) * z_k^e,
            # twisting by the stage that owns z_k (0-based index k - 1)
            twist = self._lift_poly(k - 1, Poly.one(self.base_arity))
            power = c
            for _ in range(e):
                twist = self._mul(k - 1, twist, power)
                power = self._theta(k - 1, k - 1, power)
            val = self._mul(k - 1, mapped, twist)
            if not self._is_zero(k - 1, val):
                out = self._add(k, out, {e: val})
        return out

    def _mul(self, k: int, a, b):
        if k == 0:
            return a * b
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                moved = c2
                for _ in range(e1):
                    moved = self._theta(k - 1, k - 1, moved)
                prod = self._mul(k - 1, c1, moved)
                if not self._is_zero(k - 1, prod):
                    key = e1 + e2
                    if key in out:
                        s = self._add(k - 1, out[key], prod)
                        if self._is_zero(k - 1, s):
                            del out[key]
                        else:
                            out[key] = s
                    else:
                        out[key] = prod
        return out

    def _from_element(self, f: Element):
        n = self.nvars
        out = self._zero(n)
        for expo, coeff in f.terms.items():
            node = coeff
            for k in range(n):
                node = {expo[k]: node} if not self._is_zero(k, node) else {}
            out = self._add(n, out, node)
        return out

    def _to_element(self, k: int, a, suffix: tuple, collect: dict) -> None:
        if k == 0:
            if not a.is_zero():
                collect[suffix] = a
            return
        for e, c in a.items():
            self._to_element(k - 1, c, (e,) + suffix, collect)

    def multiply(self, f: Element, g: Element) -> Element:
        """Product computed purely through the tower semantics."""
        n = self.nvars
        lhs = self._from_element(f)
        rhs = self._from_element(g)
        prod = self._mul(n, lhs, rhs)
        collect: dict = {}
        self._to_element(n, prod, (), collect)
        return Element(n, self.base_arity, collect)


def iterated_ore(p: Presentation, verify: bool = True) -> OreTower:
    """Extract the iterated skew polynomial tower of a quasi-commutative
    presentation and, by default, replay 20 random products through both the
    tower semantics and the rewrite engine, requiring exact agreement."""
    shape = classify_shape(p)
    if not shape.quasi_commutative:
        raise NotQuasiCommutative(
            f"presentation {p.name!r} has nonzero derivations or tails"
        )
    stages = []
    for j in range(p.n):
        stages.append(
            OreStage(
                p.var_names[j],
                p.sigma[j],
                tuple(p.c_of(i, j) for i in range(j)),
            )
        )
    tower = OreTower(p.m, p.base_names, tuple(stages))
    if verify:
        rng = random.Random(_REPLAY_SEED)
        for _ in range(20):
            f = random_element(rng, p, max_degree=2, max_terms=2)
            g = random_element(rng, p, max_degree=2, max_terms=2)
            if tower.multiply(f, g) != multiply(p, f, g):
                raise AssertionError(
                    f"tower replay disagrees with rewrite multiply on {p.name!r}"
                )
    return tower


# ---------------------------------------------------------------------------
# graded dimensions


def hilbert_dim(p: Presentation, d: int) -> int:
    """dim over K of the degree-d component of a finitely graded presentation.

    The count of standard monomials is C(d+n-1, n-1).  For d <= 4 this is
    cross-checked by reducing every degree-d word of the free algebra under
    both strategies and computing the exact rank of the coefficient matrix;
    disagreement raises BasisCertificationError.
    """
    shape = classify_shape(p)
    if not shape.finitely_graded:
        raise NotFinitelyGraded(
            f"presentation {p.name!r} is not finitely graded: "
            + "; ".join(shape.witnesses)
        )
    if d < 0:
        raise ValueError("degree must be a natural number")
    count = comb(d + p.n - 1, p.n - 1)
    if d <= 4:
        r = degree_rank(p, d)
        if r != count:
            raise BasisCertificationError(
                f"rank {r} of the degree-{d} reduction matrix differs from the "
                f"standard monomial count {count} for {p.name!r}"
            )
    return count


def degree_rank(p: Presentation, d: int) -> int:
    """Rank over K of the matrix of normal forms of all degree-d free words.

    Requires a finitely graded presentation (coefficients then lie in K).
    Words whose two strategy reductions disagree make the rank meaningless,
    so that raises BasisCertificationError immediately.
    """
    from itertools import product

    shape = classify_shape(p)
    if not shape.finitely_graded:
        raise NotFinitelyGraded(f"presentation {p.name!r} is not finitely graded")
    columns = sorted(_compositions(d, p.n))
    col_index = {e: k for k, e in enumerate(columns)}
    rows = []
    for word in product(range(p.n), repeat=d):
        left = normal_form(p, list(word), "leftmost")
        right = normal_form(p, list(word), "rightmost")
        if left != right:
            raise BasisCertificationError(
                f"strategies disagree on word {word} for {p.name!r}"
            )
        row = [ParamScalar.zero() for _ in columns]
        for e, coeff in left.terms.items():
            row[col_index[e]] = coeff.constant_scalar()
        rows.append(row)
    return rank(rows)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


# ---------------------------------------------------------------------------
# random elements (used by the tower replay and the test suites)


def random_scalar(rng: random.Random, params, allow_params: bool = True) -> ParamScalar:
    choice = rng.randrange(6)
    if choice < 4 or not params or not allow_params:
        return ParamScalar.from_int(rng.choice([-3, -2, -1, 1, 2, 3]))
    name = rng.choice(list(params))
    s = ParamScalar.parameter(name)
    if choice == 5:
        s = s + ParamScalar.from_int(rng.choice([-1, 1, 2]))
    return s


def random_base_elem(
    rng: random.Random, p: Presentation, max_degree: int = 1, max_terms: int = 2
) -> Poly:
    out = Poly.zero(p.m)
    for _ in range(rng.randint(1, max_terms)):
        expo = [0] * p.m
        for _ in range(rng.randint(0, max_degree)):
            if p.m:
                expo[rng.randrange(p.m)] += 1
        out = out + Poly.monomial(p.m, tuple(expo), random_scalar(rng, p.params))
    return out


def random_element(
    rng: random.Random,
    p: Presentation,
    max_degree: int = 3,
    max_terms: int = 3,
    nonzero: bool = False,
) -> Element:
    out = Element.zero(p)
    for _ in range(rng.randint(1, max_terms)):
        expo = [0] * p.n
        for _ in range(rng.randint(0, max_degree)):
            expo[rng.randrange(p.n)] += 1
        out = out + Element.monomial(p, tuple(expo), random_base_elem(rng, p))
    if nonzero and out.is_zero():
        return Element.from_coeff(p, Poly.one(p.m))
    return out


def random_word(rng: random.Random, p: Presentation, max_len: int = 6) -> list:
    word = []
    for _ in range(rng.randint(1, max_len)):
        if p.m and rng.random() < 0.3:
            word.append(("s", random_base_elem(rng, p)))
        else:
            word.append(("v", rng.randrange(p.n)))
    return word
