"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Everything here is exact arithmetic; every tolerance is zero.  Random counts
(100 triples, 50 pairs, 20 products, 50 points, depth 10) are fixed by the
criteria and run under seeded generators.
"""

from __future__ import annotations

import contextlib
import random
import zlib
from math import comb

from skewpbw import corpus
from skewpbw.graded import (
    degree_rank,
    gr_presentation,
    iterated_ore,
    principal_symbol,
    random_element,
    random_word,
)
from skewpbw.points import ProjPoint, multilinearize, next_point, point_chain, point_scheme_locus
from skewpbw.polys import Poly
from skewpbw.presentation import classify_shape, emit, parse
from skewpbw.properties import gkdim_report, property_report
from skewpbw.rewrite import Element, check_pbw_consistency, multiply, normal_form
from skewpbw.scalars import ParamScalar


@contextlib.contextmanager
def criterion(number: int, description: str):
    try:
        yield
    except BaseException:
        print(f"[criterion {number}] FAIL  {description}")
        raise
    print(f"[criterion {number}] PASS  {description}")


def test_criterion_1_pbw_certification_corpus():
    with criterion(1, "all eight corpus presentations certify with zero failing overlaps"):
        for name in corpus.CERTIFIED:
            cert = check_pbw_consistency(corpus.load(name))
            assert cert.passed, f"{name} has failing overlaps"
            assert len(cert.failures()) == 0


def test_criterion_2_negative_control_fails_at_z_y_x():
    # As stated, the designated control (y*x = x*y + 1, z*x = x*z,
    # z*y = y*z + x) must fail consistency at the overlap (3, 2, 1) with a
    # precomputed nonzero discrepancy.  Hand reduction of z*y*x gives
    # x*y*z + x^2 + z along BOTH orders, and indeed these relations present
    # an iterated Ore extension of the Weyl algebra (the basis property
    # holds), so a sound checker certifies this presentation and this test
    # fails.  See the README's known-issues note; the genuinely inconsistent
    # control is exercised by the supplementary test below.
    with criterion(2, "designated negative control fails at overlap (3,2,1)"):
        cert = check_pbw_consistency(corpus.load("negative_control"))
        assert not cert.passed, (
            "negative_control was certified consistent: both reduction orders "
            "of z*y*x agree (x*y*z + x^2 + z); the control presents an "
            "iterated Ore extension of the Weyl algebra"
        )
        failures = cert.failures()
        assert failures and failures[0].indices == (3, 2, 1)
        assert failures[0].discrepancy is not None


def test_criterion_2_supplementary_genuine_negative_control():
    # The corrected control y*x = x*y + y (with the same other relations)
    # does break: the two reductions of z*y*x differ by exactly -x.
    with criterion(
        2, "supplementary: corrected control fails at (3,2,1) with discrepancy -x"
    ):
        p = corpus.load("inconsistent_control")
        cert = check_pbw_consistency(p)
        assert not cert.passed
        overlap = cert.failures()[0]
        assert overlap.indices == (3, 2, 1)
        assert overlap.discrepancy == -Element.variable(p, 0)


def test_criterion_3_associativity_and_strategy_independence():
    with criterion(3, "100 random word/element triples per presentation, exact equality"):
        for name in corpus.CERTIFIED:
            p = corpus.load(name)
            rng = random.Random(0xC3 ^ zlib.crc32(name.encode()))
            for _ in range(100):
                w = random_word(rng, p, max_len=6)
                assert normal_form(p, w, "leftmost") == normal_form(p, w, "rightmost")
                f = random_element(rng, p, max_degree=3, max_terms=3)
                g = random_element(rng, p, max_degree=3, max_terms=3)
                h = random_element(rng, p, max_degree=3, max_terms=3)
                assert multiply(p, multiply(p, f, g), h) == multiply(
                    p, f, multiply(p, g, h)
                )


def test_criterion_4_graded_structure():
    with criterion(4, "gr(Weyl) emits the commutative ring; symbols multiply, 50 pairs each"):
        graded_weyl = gr_presentation(corpus.load("weyl_a1"))
        commutative = parse("base t;\nvars x;\n")
        assert emit(graded_weyl) == emit(commutative)
        for name in corpus.CERTIFIED:
            p = corpus.load(name)
            g = gr_presentation(p)
            rng = random.Random(0xC4 ^ zlib.crc32(name.encode()))
            for _ in range(50):
                f1 = random_element(rng, p, max_degree=2, max_terms=2, nonzero=True)
                f2 = random_element(rng, p, max_degree=2, max_terms=2, nonzero=True)
                assert principal_symbol(p, multiply(p, f1, f2)) == multiply(
                    g, principal_symbol(p, f1), principal_symbol(p, f2)
                )


def test_criterion_5_ore_replay():
    with criterion(5, "20 random products agree between tower semantics and multiply"):
        for name in corpus.available():
            p = corpus.load(name)
            if not classify_shape(p).quasi_commutative:
                continue
            tower = iterated_ore(p, verify=False)
            rng = random.Random(0xC5 ^ zlib.crc32(name.encode()))
            for _ in range(20):
                f = random_element(rng, p, max_degree=2, max_terms=2)
                g = random_element(rng, p, max_degree=2, max_terms=2)
                assert tower.multiply(f, g) == multiply(p, f, g)


def test_criterion_6_gk_dimension():
    with criterion(6, "GK dim 2 for quantum plane and Weyl; quadratic image not certified"):
        assert gkdim_report(corpus.load("quantum_plane")).value == 2
        assert gkdim_report(corpus.load("weyl_a1")).value == 2
        planted = gkdim_report(corpus.load("unstable_frame"))
        assert planted.value is None
        witnesses = [h.witness for h in planted.hypotheses if h.status != "pass"]
        assert any(w and "t^2" in w for w in witnesses)


def test_criterion_7_hilbert_dims():
    with criterion(7, "free-word rank equals C(d+n-1, n-1) for d <= 4, all graded members"):
        graded_members = 0
        for name in corpus.available():
            p = corpus.load(name)
            if not classify_shape(p).finitely_graded:
                continue
            graded_members += 1
            for d in range(5):
                assert degree_rank(p, d) == comb(d + p.n - 1, p.n - 1)
        assert graded_members == 5


def test_criterion_8_point_modules():
    with criterion(8, "point machinery: quantum plane, commutative space, Sklyanin locus"):
        # (a) quantum plane: next_point total + unique + equal to [q ux : uy];
        # chains to depth 10 never branch or terminate.
        qp = corpus.load("quantum_plane")
        s = multilinearize(qp)
        q = ParamScalar.parameter("q")
        rng = random.Random(0xC8)
        for _ in range(50):
            coords = [rng.randint(-6, 6), rng.randint(-6, 6)]
            if coords == [0, 0]:
                coords[1] = 1
            pt = ProjPoint(coords)
            step = next_point(s, pt)
            assert step.kind == "unique"
            assert step.point == ProjPoint([q * pt.coords[0], pt.coords[1]])
            chain = point_chain(s, pt, 10)
            assert chain.status == "extends_uniquely"
            assert len(chain.points) == 11

        # (b) commutative K[x,y,z]: next_point is the identity.
        comm = corpus.load("commutative_3")
        sc = multilinearize(comm)
        for _ in range(50):
            coords = [rng.randint(-5, 5) for _ in range(3)]
            if coords == [0, 0, 0]:
                coords[0] = 1
            pt = ProjPoint(coords)
            step = next_point(sc, pt)
            assert step.kind == "unique"
            assert step.point == pt

        # (c) Sklyanin: symbolic determinant is gamma u_x u_y u_z with
        # gamma = -((a/b) + (b/a)^2); a generic off-locus point terminates
        # at step 0.
        skl = corpus.load("sklyanin_c0")
        ss = multilinearize(skl)
        locus = point_scheme_locus(ss)
        assert locus.kind == "minors" and len(locus.polynomials) == 1
        a, b = ParamScalar.parameter("a"), ParamScalar.parameter("b")
        gamma = -((a / b) + (b / a) ** 2)
        expected = (Poly.gen(3, 0) * Poly.gen(3, 1) * Poly.gen(3, 2)).scale(gamma)
        assert locus.polynomials[0] == expected
        off = point_chain(ss, ProjPoint([1, 1, 1]), 10)
        assert off.status == "terminates"
        assert len(off.points) == 1


def test_criterion_9_property_report():
    with criterion(9, "property transfer reports with exact hypothesis checks"):
        for name in ("quantum_plane", "quantum_space_3"):
            p = corpus.load(name)
            report = property_report(p, check_pbw_consistency(p))
            for record in report.records:
                assert record.applies == "yes", f"{name}: {record.name}"
                assert record.hypotheses
                assert all(h.status == "pass" for h in record.hypotheses)

        sh = corpus.load("shift_sh")
        report = property_report(sh, check_pbw_consistency(sh))
        cm = report.record("cohen_macaulay")
        assert cm.applies == "hypotheses_not_met"
        failing = [h for h in cm.hypotheses if h.status == "fail"]
        assert len(failing) == 1 and "t - h" in failing[0].witness

        # structural: across the whole corpus no record says yes while any
        # hypothesis failed
        for name in corpus.CERTIFIED:
            p = corpus.load(name)
            report = property_report(p, check_pbw_consistency(p))
            for record in report.records:
                if record.applies == "yes":
                    assert all(h.status == "pass" for h in record.hypotheses)
                if any(h.status == "fail" for h in record.hypotheses):
                    assert record.applies == "hypotheses_not_met"
