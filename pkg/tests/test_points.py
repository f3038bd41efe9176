from __future__ import annotations

import random
from fractions import Fraction

import pytest

from skewpbw import corpus
from skewpbw.errors import NotFinitelyGraded, ZeroPoint
from skewpbw.points import (
    BilinearSystem,
    ProjPoint,
    multilinearize,
    next_point,
    point_chain,
    point_matrix,
    point_scheme_locus,
)
from skewpbw.polys import Poly
from skewpbw.presentation import specialize
from skewpbw.scalars import ParamScalar


def _scalar(x):
    return ParamScalar.from_fraction(Fraction(x))


def test_multilinearize_quantum_plane(load):
    s = multilinearize(load("quantum_plane"))
    assert s.r == 1
    q = ParamScalar.parameter("q")
    form = s.forms[0]
    assert form[(1, 0)] == ParamScalar.one()
    assert form[(0, 1)] == -q


def test_multilinearize_commutative(load):
    s = multilinearize(load("commutative_3"))
    assert s.r == 3
    for form in s.forms:
        coeffs = sorted(form.items())
        (i1, j1), c1 = coeffs[0]
        (i2, j2), c2 = coeffs[1]
        assert c1 == -ParamScalar.one() or c2 == -ParamScalar.one()


def test_multilinearize_sklyanin_signs(load):
    s = multilinearize(load("sklyanin_c0"))
    a, b = ParamScalar.parameter("a"), ParamScalar.parameter("b")
    # pair order (x,y), (x,z), (y,z)
    assert s.pair_order == ((0, 1), (0, 2), (1, 2))
    assert s.forms[0][(0, 1)] == b / a
    assert s.forms[1][(0, 2)] == a / b
    assert s.forms[2][(1, 2)] == b / a


def test_multilinearize_requires_finitely_graded(load):
    with pytest.raises(NotFinitelyGraded):
        multilinearize(load("weyl_a1"))


def test_point_matrix_symbolic_quantum_plane(load):
    s = multilinearize(load("quantum_plane"))
    rows = point_matrix(s)
    u = ["u_x", "u_y"]
    assert [[e.to_str(u) for e in row] for row in rows] == [["u_y", "-q*u_x"]]


def test_point_matrix_symbolic_sklyanin(load):
    s = multilinearize(load("sklyanin_c0"))
    rows = point_matrix(s)
    a, b = ParamScalar.parameter("a"), ParamScalar.parameter("b")
    ux, uy, uz = Poly.gen(3, 0), Poly.gen(3, 1), Poly.gen(3, 2)
    zero = Poly.zero(3)
    assert rows[0] == [uy, ux.scale(b / a), zero]
    assert rows[1] == [uz, zero, ux.scale(a / b)]
    assert rows[2] == [zero, uz, uy.scale(b / a)]


def test_point_matrix_at_commutative_point(load):
    s = multilinearize(load("commutative_3"))
    rows = point_matrix(s, ProjPoint([1, 0, 0]))
    result = next_point(s, ProjPoint([1, 0, 0]))
    assert result.kind == "unique"
    assert result.point == ProjPoint([1, 0, 0])
    nonzero_rows = [row for row in rows if any(not v.is_zero() for v in row)]
    assert len(nonzero_rows) == 2  # rank two at a smooth point of the diagonal


def test_locus_quantum_plane_kernel_always_nonzero(load):
    locus = point_scheme_locus(multilinearize(load("quantum_plane")))
    assert locus.kind == "kernel_always_nonzero"


def test_locus_sklyanin_determinant(load):
    locus = point_scheme_locus(multilinearize(load("sklyanin_c0")))
    assert locus.kind == "minors"
    assert len(locus.polynomials) == 1
    a, b = ParamScalar.parameter("a"), ParamScalar.parameter("b")
    gamma = -((a / b) + (b / a) ** 2)
    expected = (Poly.gen(3, 0) * Poly.gen(3, 1) * Poly.gen(3, 2)).scale(gamma)
    assert locus.polynomials[0] == expected


def test_locus_commutative_identically_zero(load):
    locus = point_scheme_locus(multilinearize(load("commutative_3")))
    assert locus.kind == "minors"
    assert all(poly.is_zero() for poly in locus.polynomials)


def test_next_point_quantum_plane_formula(load):
    s = multilinearize(load("quantum_plane"))
    q = ParamScalar.parameter("q")
    rng = random.Random(5)
    for _ in range(20):
        coords = [_scalar(rng.randint(-5, 5)), _scalar(rng.randint(-5, 5))]
        if all(c.is_zero() for c in coords):
            coords[0] = ParamScalar.one()
        p = ProjPoint(coords)
        result = next_point(s, p)
        assert result.kind == "unique"
        assert result.point == ProjPoint([q * p.coords[0], p.coords[1]])


def test_next_point_commutative_identity(load):
    s = multilinearize(load("commutative_3"))
    rng = random.Random(6)
    for _ in range(20):
        coords = [_scalar(rng.randint(-4, 4)) for _ in range(3)]
        if all(c.is_zero() for c in coords):
            coords[2] = ParamScalar.one()
        p = ProjPoint(coords)
        result = next_point(s, p)
        assert result.kind == "unique"
        assert result.point == p


def test_next_point_sklyanin_on_locus(load):
    s = multilinearize(load("sklyanin_c0"))
    result = next_point(s, ProjPoint([1, 0, 0]))
    assert result.kind == "unique"
    assert result.point == ProjPoint([1, 0, 0])


def test_next_point_sklyanin_off_locus_empty(load):
    s = multilinearize(load("sklyanin_c0"))
    assert next_point(s, ProjPoint([1, 1, 1])).kind == "empty"


def test_projective_equality_and_zero_point():
    p1 = ProjPoint([2, 4])
    p2 = ProjPoint([1, 2])
    p3 = ProjPoint([1, 3])
    assert p1 == p2
    assert p1 != p3
    with pytest.raises(ZeroPoint):
        ProjPoint([0, 0])


def test_next_point_is_projectively_well_defined(load):
    s = multilinearize(load("sklyanin_c0"))
    p = ProjPoint([0, 1, 0])
    scaled = ProjPoint([ParamScalar.zero(), _scalar(7), ParamScalar.zero()])
    r1, r2 = next_point(s, p), next_point(s, scaled)
    assert r1.kind == r2.kind == "unique"
    assert r1.point == r2.point


def test_chain_quantum_plane_q_powers(load):
    s = multilinearize(load("quantum_plane"))
    q = ParamScalar.parameter("q")
    chain = point_chain(s, ProjPoint([1, 1]), 4)
    assert chain.status == "extends_uniquely"
    assert len(chain.points) == 5
    for k, pt in enumerate(chain.points):
        assert pt == ProjPoint([q**k, ParamScalar.one()])


def test_chain_commutative_constant(load):
    s = multilinearize(load("commutative_3"))
    chain = point_chain(s, ProjPoint([2, 3, 5]), 6)
    assert chain.status == "extends_uniquely"
    assert all(pt == ProjPoint([2, 3, 5]) for pt in chain.points)


def test_chain_sklyanin_terminates_immediately(load):
    s = multilinearize(load("sklyanin_c0"))
    chain = point_chain(s, ProjPoint([1, 1, 1]), 5)
    assert chain.status == "terminates"
    assert len(chain.points) == 1


def test_chain_branches_when_kernel_is_large():
    # A single form in three variables leaves a two-dimensional kernel.
    s = BilinearSystem(
        3,
        ((0, 1),),
        ({(1, 0): ParamScalar.one(), (0, 1): -ParamScalar.one()},),
        ("x", "y", "z"),
    )
    chain = point_chain(s, ProjPoint([1, 1, 0]), 3)
    assert chain.status == "branches"
    assert len(chain.kernel) == 2


def test_locus_soundness_on_specialized_sklyanin(load):
    p = specialize(corpus.load("sklyanin_c0"), {"a": 2, "b": 3})
    s = multilinearize(p)
    locus = point_scheme_locus(s)
    rng = random.Random(31)
    for _ in range(50):
        coords = [_scalar(rng.randint(-3, 3)) for _ in range(3)]
        if all(c.is_zero() for c in coords):
            coords[0] = ParamScalar.one()
        pt = ProjPoint(coords)
        vanishes = all(
            _eval_poly_at(poly, pt).is_zero() for poly in locus.polynomials
        )
        has_next = next_point(s, pt).kind != "empty"
        assert vanishes == has_next


def _eval_poly_at(poly: Poly, pt: ProjPoint) -> ParamScalar:
    total = ParamScalar.zero()
    for expo, coeff in poly.terms.items():
        v = coeff
        for k, e in enumerate(expo):
            for _ in range(e):
                v = v * pt.coords[k]
        total = total + v
    return total


def test_chain_pairs_annihilate_every_form(load):
    for name in ("quantum_plane", "sklyanin_c0", "skew3d_homogeneous", "commutative_3"):
        p = corpus.load(name)
        s = multilinearize(p)
        chain = point_chain(s, ProjPoint([1] * p.n), 5)
        for u, v in zip(chain.points, chain.points[1:]):
            assert s.annihilated_by(u, v)
