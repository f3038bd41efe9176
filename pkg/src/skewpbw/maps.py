"""Endomorphisms and twisted derivations of the base ring, given by their
generator images.

An ``EndoMap`` extends its images to the unique coefficient-field-fixing
algebra endomorphism.  A ``DerivMap`` extends by the twisted Leibniz rule
d(ab) = s(a) d(b) + d(a) b, which is well defined on a commutative polynomial
ring exactly when the pair-symmetry condition

    s(t_j) d(t_k) + d(t_j) t_k  ==  s(t_k) d(t_j) + d(t_k) t_j   (j < k)

holds; ``validate_maps`` checks it and certifies supplied inverses.
"""

from __future__ import annotations

from collections.abc import Sequence

from .errors import ArityMismatch, InvalidDerivation
from .polys import Poly
from .reporting import CheckResult, ValidationReport
from .scalars import ParamScalar


class EndoMap:
    """Algebra endomorphism of K[t_1..t_m], fixing K, given on generators."""

    __slots__ = ("arity", "images", "inverse_images", "_mono_cache")

    def __init__(self, images: Sequence[Poly], inverse_images: Sequence[Poly] | None = None):
        self.images = tuple(images)
        self.arity = len(self.images)
        for img in self.images:
            if img.arity != self.arity:
                raise ArityMismatch("endomorphism image has wrong arity")
        self.inverse_images = tuple(inverse_images) if inverse_images is not None else None
        if self.inverse_images is not None:
            for img in self.inverse_images:
                if img.arity != self.arity:
                    raise ArityMismatch("inverse image has wrong arity")
            if len(self.inverse_images) != self.arity:
                raise ArityMismatch("wrong number of inverse images")
        self._mono_cache: dict = {}

    @classmethod
    def identity(cls, arity: int) -> "EndoMap":
        gens = [Poly.gen(arity, k) for k in range(arity)]
        return cls(gens, gens)

    def is_identity(self) -> bool:
        return all(img == Poly.gen(self.arity, k) for k, img in enumerate(self.images))

    def has_inverse(self) -> bool:
        return self.inverse_images is not None

    def apply(self, r: Poly) -> Poly:
        """Image of ``r`` under the extension; multiplicative and additive."""
        if r.arity != self.arity:
            raise ArityMismatch(f"element arity {r.arity} vs map arity {self.arity}")
        out = Poly.zero(self.arity)
        for e, c in r.terms.items():
            img = self._mono_cache.get(e)
            if img is None:
                img = Poly.one(self.arity)
                for k, exp in enumerate(e):
                    if exp:
                        img = img * self.images[k] ** exp
                self._mono_cache[e] = img
            out = out + img.scale(c)
        return out

    def inverse_map(self) -> "EndoMap":
        if self.inverse_images is None:
            raise ValueError("no inverse images supplied")
        return EndoMap(self.inverse_images, self.images)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EndoMap):
            return NotImplemented
        return (
            self.arity == other.arity
            and all(a == b for a, b in zip(self.images, other.images))
            and (self.inverse_images is None) == (other.inverse_images is None)
            and (
                self.inverse_images is None
                or all(a == b for a, b in zip(self.inverse_images, other.inverse_images))
            )
        )

    __hash__ = None


class DerivMap:
    """Twisted derivation paired with its companion endomorphism.

    ``consistent`` is a tristate: None until validated, then the outcome of
    the pair-symmetry check.  Applying a map known to be inconsistent raises
    InvalidDerivation, since its extension is not well defined.
    """

    __slots__ = ("arity", "images", "sigma", "consistent", "_mono_cache")

    def __init__(self, images: Sequence[Poly], sigma: EndoMap):
        self.images = tuple(images)
        self.sigma = sigma
        self.arity = len(self.images)
        if self.arity != sigma.arity:
            raise ArityMismatch("derivation and endomorphism arities differ")
        for img in self.images:
            if img.arity != self.arity:
                raise ArityMismatch("derivation image has wrong arity")
        self.consistent: bool | None = None
        self._mono_cache: dict = {}

    @classmethod
    def zero(cls, sigma: EndoMap) -> "DerivMap":
        d = cls([Poly.zero(sigma.arity) for _ in range(sigma.arity)], sigma)
        d.consistent = True
        return d

    def is_zero(self) -> bool:
        return all(img.is_zero() for img in self.images)

    def _mono_image(self, e: tuple) -> Poly:
        cached = self._mono_cache.get(e)
        if cached is not None:
            return cached
        arity = self.arity
        if not any(e):
            out = Poly.zero(arity)
        else:
            k = next(i for i, exp in enumerate(e) if exp)
            rest = list(e)
            rest[k] -= 1
            rest = tuple(rest)
            rest_poly = Poly(arity, {rest: ParamScalar.one()}, _clean=False)
            out = self.sigma.images[k] * self._mono_image(rest) + self.images[k] * rest_poly
        self._mono_cache[e] = out
        return out

    def apply(self, r: Poly) -> Poly:
        """Twisted-Leibniz extension applied to ``r``; K-linear."""
        if self.consistent is False:
            raise InvalidDerivation("derivation failed validation; extension not well defined")
        if r.arity != self.arity:
            raise ArityMismatch(f"element arity {r.arity} vs map arity {self.arity}")
        out = Poly.zero(self.arity)
        for e, c in r.terms.items():
            out = out + self._mono_image(e).scale(c)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, DerivMap):
            return NotImplemented
        return self.arity == other.arity and all(
            a == b for a, b in zip(self.images, other.images)
        )

    __hash__ = None


def validate_maps(
    sigma: EndoMap,
    delta: DerivMap | None = None,
    gen_names: Sequence[str] | None = None,
    label: str = "",
) -> ValidationReport:
    """Certify a sigma/delta pair: inverse correctness (both directions, on
    generators) and the derivation pair-symmetry condition.

    Failures are reported with witnesses, never raised.  Validating also
    stamps ``delta.consistent``.
    """
    m = sigma.arity
    names = list(gen_names) if gen_names is not None else [f"t{k + 1}" for k in range(m)]
    suffix = f"[{label}]" if label else ""
    checks: list[CheckResult] = []

    if sigma.has_inverse():
        ok = True
        witness = None
        inv = sigma.inverse_map()
        for k in range(m):
            gen = Poly.gen(m, k)
            forward_back = sigma.apply(sigma.inverse_images[k])
            back_forward = inv.apply(sigma.images[k])
            if forward_back != gen or back_forward != gen:
                ok = False
                witness = names[k]
                break
        checks.append(CheckResult(f"sigma_inverse_verified{suffix}", ok, witness))
    else:
        checks.append(
            CheckResult(
                f"sigma_inverse_verified{suffix}",
                False,
                "no inverse images supplied",
            )
        )

    if delta is not None:
        ok = True
        witness = None
        for j in range(m):
            for k in range(j + 1, m):
                tj = Poly.gen(m, j)
                tk = Poly.gen(m, k)
                lhs = sigma.images[j] * delta.images[k] + delta.images[j] * tk
                rhs = sigma.images[k] * delta.images[j] + delta.images[k] * tj
                if lhs != rhs:
                    ok = False
                    witness = f"({names[j]}, {names[k]})"
                    break
            if not ok:
                break
        delta.consistent = ok
        checks.append(CheckResult(f"delta_consistent{suffix}", ok, witness))

    return ValidationReport(tuple(checks))
