"""Point-module machinery for finitely graded presentations.

Each pair relation x_j x_i = c_(i,j) x_i x_j multilinearizes to the bilinear
form u_j v_i - c_(i,j) u_i v_j; a pair of projective points (u, v) kills every
form exactly when v extends a truncated point module one degree beyond u.
The forms assemble into the matrix M(u) with M(u) v = 0, whose kernel drives
the next-point map, and whose maximal minors cut out the locus of points that
admit a successor.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import NotFinitelyGraded, ZeroPoint
from .linalg import kernel_basis
from .polys import Poly
from .presentation import Presentation, classify_shape
from .scalars import ParamScalar


class ProjPoint:
    """Point of projective (n-1)-space with exact field coordinates.

    Equality is projective: two points are equal when their coordinate
    vectors are proportional.
    """

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(
            c if isinstance(c, ParamScalar) else ParamScalar.from_fraction(c) for c in coords
        )
        if all(c.is_zero() for c in coords):
            raise ZeroPoint("projective point needs a nonzero coordinate")
        self.coords = coords

    @property
    def arity(self) -> int:
        return len(self.coords)

    def canonical(self) -> "ProjPoint":
        """Rescale so the first nonzero coordinate is 1."""
        lead = next(c for c in self.coords if not c.is_zero())
        inv = lead.inverse()
        return ProjPoint(tuple(c * inv for c in self.coords))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if self.arity != other.arity:
            return False
        for i in range(self.arity):
            for j in range(i + 1, self.arity):
                if self.coords[i] * other.coords[j] != self.coords[j] * other.coords[i]:
                    return False
        return True

    __hash__ = None

    def __str__(self) -> str:
        return "[" + " : ".join(str(c) for c in self.coords) + "]"

    def __repr__(self) -> str:
        return f"ProjPoint({self})"


@dataclass(frozen=True)
class BilinearSystem:
    """Multilinearized quadratic relations: one bilinear form per variable
    pair, stored as coefficient maps (i, j) -> coefficient of u_i v_j."""

    n: int
    pair_order: tuple[tuple[int, int], ...]
    forms: tuple[dict, ...]
    var_names: tuple[str, ...]

    @property
    def r(self) -> int:
        return len(self.forms)

    def evaluate(self, form_index: int, u: ProjPoint, v: ProjPoint) -> ParamScalar:
        total = ParamScalar.zero()
        for (i, j), coeff in self.forms[form_index].items():
            total = total + coeff * u.coords[i] * v.coords[j]
        return total

    def annihilated_by(self, u: ProjPoint, v: ProjPoint) -> bool:
        return all(self.evaluate(k, u, v).is_zero() for k in range(self.r))


@dataclass(frozen=True)
class PointChain:
    """Consecutive points of a truncated point module; ``status`` describes
    why iteration stopped (or that it ran to the requested depth)."""

    points: tuple[ProjPoint, ...]
    status: str  # extends_uniquely | branches | terminates
    kernel: tuple[ProjPoint, ...] = ()


@dataclass(frozen=True)
class NextPointResult:
    kind: str  # unique | family | empty
    point: ProjPoint | None = None
    basis: tuple[ProjPoint, ...] = ()


@dataclass(frozen=True)
class LocusResult:
    """Either the list of maximal minors of M(u) (r >= n) or the statement
    that the kernel is nonzero at every point (r < n)."""

    kind: str  # minors | kernel_always_nonzero
    polynomials: tuple[Poly, ...] = ()


def multilinearize(p: Presentation) -> BilinearSystem:
    """Bilinear forms u_j v_i - c_(i,j) u_i v_j, ordered by pair (i, j)."""
    shape = classify_shape(p)
    if not shape.finitely_graded:
        raise NotFinitelyGraded(
            f"presentation {p.name!r} is not finitely graded: "
            + "; ".join(shape.witnesses)
        )
    pairs = tuple(p.pairs())
    forms = []
    for (i, j) in pairs:
        c = p.c_of(i, j).constant_scalar()
        forms.append({(j, i): ParamScalar.one(), (i, j): -c})
    return BilinearSystem(p.n, pairs, tuple(forms), p.var_names)


def point_matrix(s: BilinearSystem, u: ProjPoint | None = None):
    """The r x n matrix with row l giving the v-coefficients of form l.

    With ``u=None`` the entries are polynomials in the symbolic coordinates
    u_1..u_n; with a concrete point they are exact field scalars.
    """
    if u is None:
        rows = []
        for form in s.forms:
            row = [Poly.zero(s.n) for _ in range(s.n)]
            for (i, j), coeff in form.items():
                row[j] = row[j] + Poly.gen(s.n, i).scale(coeff)
            rows.append(row)
        return rows
    if u.arity != s.n:
        raise ZeroPoint(f"point arity {u.arity} does not match system arity {s.n}")
    rows = []
    for form in s.forms:
        row = [ParamScalar.zero() for _ in range(s.n)]
        for (i, j), coeff in form.items():
            row[j] = row[j] + coeff * u.coords[i]
        rows.append(row)
    return rows


def _poly_det(rows: list[list[Poly]]) -> Poly:
    """Cofactor expansion along the first row; exact and deterministic."""
    size = len(rows)
    if size == 1:
        return rows[0][0]
    arity = rows[0][0].arity
    total = Poly.zero(arity)
    for col in range(size):
        entry = rows[0][col]
        if entry.is_zero():
            continue
        minor = [[row[c] for c in range(size) if c != col] for row in rows[1:]]
        sub = _poly_det(minor)
        if col % 2:
            sub = -sub
        total = total + entry * sub
    return total


def point_scheme_locus(s: BilinearSystem) -> LocusResult:
    """All n x n minors of the symbolic M(u), in row-subset order, or the
    kernel-always-nonzero statement when there are fewer forms than
    variables."""
    if s.r < s.n:
        return LocusResult("kernel_always_nonzero")
    matrix = point_matrix(s)
    minors = []
    for rows in combinations(range(s.r), s.n):
        minors.append(_poly_det([matrix[r] for r in rows]))
    return LocusResult("minors", tuple(minors))


def next_point(s: BilinearSystem, p: ProjPoint) -> NextPointResult:
    """Exact kernel of M(p): empty, a unique successor point, or a basis of a
    higher-dimensional family."""
    rows = point_matrix(s, p)
    basis = kernel_basis(rows, s.n)
    if not basis:
        return NextPointResult("empty")
    if len(basis) == 1:
        return NextPointResult("unique", ProjPoint(basis[0]).canonical())
    return NextPointResult(
        "family", None, tuple(ProjPoint(v).canonical() for v in basis)
    )


def point_chain(s: BilinearSystem, p0: ProjPoint, depth: int) -> PointChain:
    """Iterate the next-point map from p0 for at most ``depth`` steps.

    Every consecutive pair emitted is checked to annihilate every bilinear
    form.  Stops early with status "branches" (kernel dimension above one,
    the kernel basis is reported) or "terminates" (zero kernel).
    """
    points = [p0.canonical()]
    for _ in range(depth):
        step = next_point(s, points[-1])
        if step.kind == "empty":
            return PointChain(tuple(points), "terminates")
        if step.kind == "family":
            return PointChain(tuple(points), "branches", step.basis)
        assert s.annihilated_by(points[-1], step.point), (
            "next-point output fails to annihilate the bilinear forms"
        )
        points.append(step.point)
    return PointChain(tuple(points), "extends_uniquely")
