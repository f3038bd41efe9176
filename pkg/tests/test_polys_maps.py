from __future__ import annotations

import random
from fractions import Fraction

import pytest

from skewpbw.errors import ArityMismatch, InvalidDerivation
from skewpbw.maps import DerivMap, EndoMap, validate_maps
from skewpbw.polys import Poly
from skewpbw.scalars import ParamScalar

q = ParamScalar.parameter("q")
h = ParamScalar.parameter("h")


def t(k=0, m=1):
    return Poly.gen(m, k)


def const(x, m=1):
    return Poly.const(m, x)


def test_commutativity_and_cancellation():
    t1, t2 = Poly.gen(2, 0), Poly.gen(2, 1)
    assert t1 * t2 == t2 * t1
    assert (t1 + (-t1)).is_zero()
    assert not (t1 + (-t1)).terms


def test_hand_expansion():
    one = Poly.one(1)
    assert (t() + one) * (t() - one) == t() * t() - one


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        Poly.gen(1, 0) + Poly.gen(2, 0)


def test_endo_q_dilation_squares():
    sigma = EndoMap([t().scale(q)])
    assert sigma.apply(t() * t()) == (t() * t()).scale(q * q)


def test_endo_identity_fixes_everything():
    sigma = EndoMap.identity(3)
    rng = random.Random(7)
    r = Poly.zero(3)
    for _ in range(4):
        e = tuple(rng.randint(0, 2) for _ in range(3))
        r = r + Poly.monomial(3, e, ParamScalar.from_int(rng.randint(-3, 3)))
    assert sigma.apply(r) == r


def test_endo_shift_expands_square():
    sigma = EndoMap([t() - const(h)])
    expected = t() * t() - t().scale(h * 2) + const(h * h)
    assert sigma.apply(t() * t()) == expected


def test_endo_is_multiplicative_on_random_pairs():
    rng = random.Random(99)
    sigma = EndoMap([t(0, 2) + t(1, 2), t(1, 2).scale(q)])
    for _ in range(20):
        r = _random_poly(rng, 2)
        s = _random_poly(rng, 2)
        assert sigma.apply(r * s) == sigma.apply(r) * sigma.apply(s)
        assert sigma.apply(r + s) == sigma.apply(r) + sigma.apply(s)


def test_deriv_weyl_derivative():
    sigma = EndoMap.identity(1)
    delta = DerivMap([Poly.one(1)], sigma)
    delta.consistent = True
    assert delta.apply(t() * t()) == t().scale(ParamScalar.from_int(2))


def test_deriv_zero_images():
    sigma = EndoMap.identity(1)
    delta = DerivMap.zero(sigma)
    assert delta.apply(t() * t() + t()).is_zero()


def test_deriv_q_twisted_leibniz():
    sigma = EndoMap([t().scale(q)])
    delta = DerivMap([Poly.one(1)], sigma)
    delta.consistent = True
    assert delta.apply(t() * t()) == t().scale(q + 1)


def test_deriv_satisfies_twisted_leibniz_on_random_pairs():
    rng = random.Random(3)
    sigma = EndoMap([t(0, 2), t(1, 2)])
    delta = DerivMap([t(1, 2), t(0, 2)], sigma)
    report = validate_maps(sigma, delta, ("t1", "t2"))
    assert delta.consistent is True
    for _ in range(20):
        r = _random_poly(rng, 2)
        s = _random_poly(rng, 2)
        assert delta.apply(r * s) == sigma.apply(r) * delta.apply(s) + delta.apply(r) * s


def test_validate_verified_inverse():
    sigma = EndoMap([t().scale(q)], [t().scale(q.inverse())])
    report = validate_maps(sigma)
    assert report.passed


def test_validate_wrong_inverse_witness():
    sigma = EndoMap([t() * t()], [t()])
    report = validate_maps(sigma, gen_names=("t",))
    check = report.find("sigma_inverse_verified")
    assert not check.passed
    assert check.witness == "t"


def test_validate_swap_derivation_is_consistent():
    sigma = EndoMap.identity(2)
    delta = DerivMap([t(1, 2), t(0, 2)], sigma)
    report = validate_maps(sigma, delta)
    assert report.find("delta_consistent").passed


def test_validate_inconsistent_derivation_blocks_apply():
    # d(t1) = t1 with sigma scaling t1 by q violates pair symmetry against t2.
    sigma = EndoMap([t(0, 2).scale(q), t(1, 2)])
    delta = DerivMap([t(1, 2), t(1, 2)], sigma)
    report = validate_maps(sigma, delta, ("t1", "t2"))
    assert delta.consistent is False
    assert report.find("delta_consistent").witness == "(t1, t2)"
    with pytest.raises(InvalidDerivation):
        delta.apply(t(0, 2))


def test_specialization_commutes_with_maps():
    rng = random.Random(21)
    sigma = EndoMap([t().scale(q) + const(h)])
    delta = DerivMap([const(q)], sigma)
    delta.consistent = True
    assignment = {"q": Fraction(2), "h": Fraction(1, 3)}

    def spec(poly: Poly) -> Poly:
        return poly.map_scalars(lambda s: ParamScalar.from_fraction(s.evaluate(assignment)))

    spec_sigma = EndoMap([spec(img) for img in sigma.images])
    spec_delta = DerivMap([spec(img) for img in delta.images], spec_sigma)
    spec_delta.consistent = True
    for _ in range(10):
        r = _random_poly(rng, 1)
        assert spec(sigma.apply(r)) == spec_sigma.apply(spec(r))
        assert spec(delta.apply(r)) == spec_delta.apply(spec(r))


def _random_poly(rng: random.Random, m: int) -> Poly:
    out = Poly.zero(m)
    for _ in range(rng.randint(1, 3)):
        e = tuple(rng.randint(0, 2) for _ in range(m))
        coeff = ParamScalar.from_int(rng.choice([-2, -1, 1, 2, 3]))
        if rng.random() < 0.3:
            coeff = coeff * q
        out = out + Poly.monomial(m, e, coeff)
    return out
