"""Hypothesis-checked transfer report for ring-theoretic properties, plus the
Gelfand-Kirillov dimension formula.

The engine never computes Ext groups or grades.  Each property record lists
the exact hypotheses that were checked on the presentation data, marks facts
about the base ring K[t_1..t_m] as assumed (they hold for commutative
polynomial rings over a field and are recorded with their literature source),
and attaches the transfer conclusion by citation.  A record is "yes" only
when every hypothesis check passed; a failed check gives "hypotheses_not_met"
with a witness, and a hypothesis outside the checkable fragment gives
"unknown", never a guess.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UncertifiedPresentation
from .polys import Poly
from .presentation import Presentation
from .rewrite import ConsistencyCertificate

PASS = "pass"
FAIL = "fail"
UNVERIFIABLE = "unverifiable"

_CITATIONS = {
    "noetherian": (
        "Hilbert basis theorem for bijective skew PBW extensions over a "
        "Noetherian coefficient ring"
    ),
    "auslander_gorenstein": (
        "Auslander-Gorenstein transfer along the total-degree filtration "
        "(Bjork's Zariski-ring theorem with Ekstrom's Ore-extension step)"
    ),
    "auslander_regular": (
        "Auslander-regular transfer along the total-degree filtration "
        "(Bjork's Zariski-ring theorem with Ekstrom's Ore-extension step)"
    ),
    "cohen_macaulay": (
        "Cohen-Macaulay transfer through the associated graded Ore tower "
        "(Levasseur's lemma for Ore extensions of connected graded algebras)"
    ),
    "strongly_noetherian": (
        "Artin-Small-Zhang: strong noetherianity passes to bijective skew "
        "extensions and filtered deformations"
    ),
    "gkdim": (
        "Gelfand-Kirillov dimension additivity for bijective skew PBW "
        "extensions with a stable generating frame"
    ),
}

_BASE_FACT = "base-ring fact (assumed, cited): K[t_1..t_m] with K a field"


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    status: str  # pass | fail | unverifiable
    witness: str | None = None
    note: str | None = None

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": self.status == PASS,
            "witness": self.witness,
            "note": self.note,
        }


@dataclass(frozen=True)
class PropertyRecord:
    name: str
    applies: str  # yes | no | hypotheses_not_met | unknown
    hypotheses: tuple[HypothesisCheck, ...]
    citation: str

    def as_dict(self) -> dict:
        return {
            "applies": self.applies,
            "hypotheses_checked": [h.as_dict() for h in self.hypotheses],
            "citation": self.citation,
        }


@dataclass(frozen=True)
class GkRecord:
    value: int | None
    hypotheses: tuple[HypothesisCheck, ...]
    citation: str = _CITATIONS["gkdim"]

    @property
    def certified(self) -> bool:
        return self.value is not None

    def as_dict(self) -> dict:
        return {
            "value": self.value if self.value is not None else "not_certified",
            "hypotheses": [h.as_dict() for h in self.hypotheses],
            "citation": self.citation,
        }


@dataclass(frozen=True)
class PropertyReport:
    records: tuple[PropertyRecord, ...]
    gk: GkRecord

    def record(self, name: str) -> PropertyRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {
            "properties": {r.name: r.as_dict() for r in self.records},
            "gkdim": self.gk.as_dict(),
        }


def _conclude(hypotheses: list[HypothesisCheck]) -> str:
    if any(h.status == FAIL for h in hypotheses):
        return "hypotheses_not_met"
    if any(h.status == UNVERIFIABLE for h in hypotheses):
        return "unknown"
    return "yes"


def _bijectivity_checks(p: Presentation) -> list[HypothesisCheck]:
    checks: list[HypothesisCheck] = []
    from .maps import validate_maps

    status = PASS
    witness = None
    for i, var in enumerate(p.var_names):
        endo = p.sigma[i]
        if not endo.has_inverse():
            status = UNVERIFIABLE
            witness = f"sigma[{var}]: no inverse supplied"
            break
        if not validate_maps(endo, None, p.base_names, var).passed:
            status = FAIL
            witness = f"sigma[{var}]: supplied inverse fails verification"
            break
    checks.append(HypothesisCheck("all sigma_i bijective (verified inverses)", status, witness))

    status = PASS
    witness = None
    for (i, j) in p.pairs():
        if not p.c_of(i, j).is_unit():
            status = FAIL
            witness = f"c{p.pair_label(i, j)} = {p.c_of(i, j).to_str(p.base_names)}"
            break
    checks.append(HypothesisCheck("all c_(i,j) invertible scalars", status, witness))
    return checks


def gkdim_report(p: Presentation) -> GkRecord:
    """Gelfand-Kirillov dimension by the additivity formula.

    The base ring contributes its generator count m.  Certification needs the
    presentation bijective and the frame V spanned by 1 and the base
    generators stable under every sigma_i, which holds exactly when every
    generator image has total degree at most one.  Otherwise the value is
    reported as not certified with the failing image as witness.
    """
    hypotheses = _bijectivity_checks(p)
    status = PASS
    witness = None
    for i, var in enumerate(p.var_names):
        for k in range(p.m):
            img = p.sigma[i].images[k]
            deg = img.total_degree()
            if deg is not None and deg > 1:
                status = FAIL
                witness = f"sigma[{var}]({p.base_names[k]}) = {img.to_str(p.base_names)}"
                break
        if status == FAIL:
            break
    hypotheses.append(
        HypothesisCheck(
            "frame stability: every sigma image of a base generator has degree <= 1",
            status,
            witness,
        )
    )
    value = p.m + p.n if _conclude(hypotheses) == "yes" else None
    return GkRecord(value, tuple(hypotheses))


def property_report(p: Presentation, certificate: ConsistencyCertificate) -> PropertyReport:
    """Per-property transfer report; requires a passing confluence
    certificate, since every cited theorem presumes the basis property."""
    if certificate is None:
        raise UncertifiedPresentation("no confluence certificate supplied")
    if not certificate.passed:
        raise UncertifiedPresentation(
            f"presentation {p.name!r} failed the confluence certificate"
        )

    records: list[PropertyRecord] = []
    bij = _bijectivity_checks(p)

    base_noetherian = HypothesisCheck(
        "base ring Noetherian", PASS, None, _BASE_FACT
    )
    records.append(
        PropertyRecord(
            "noetherian",
            _conclude(bij + [base_noetherian]),
            tuple(bij + [base_noetherian]),
            _CITATIONS["noetherian"],
        )
    )

    for prop, fact_name in (
        ("auslander_gorenstein", "base ring Auslander-Gorenstein"),
        ("auslander_regular", "base ring Auslander-regular"),
    ):
        fact = HypothesisCheck(fact_name, PASS, None, _BASE_FACT)
        records.append(
            PropertyRecord(prop, _conclude(bij + [fact]), tuple(bij + [fact]), _CITATIONS[prop])
        )

    cm_checks = list(bij)
    cm_checks.append(
        HypothesisCheck(
            "base ring connected graded and Cohen-Macaulay",
            PASS,
            None,
            _BASE_FACT + (", standard grading" if p.m else "; trivially graded for m = 0"),
        )
    )
    status = PASS
    witness = None
    for i, var in enumerate(p.var_names):
        for k in range(p.m):
            img = p.sigma[i].images[k]
            if not _is_homogeneous_linear(img):
                status = FAIL
                witness = f"sigma[{var}]({p.base_names[k]}) = {img.to_str(p.base_names)}"
                break
        if status == FAIL:
            break
    note = "vacuous for m = 0" if p.m == 0 else None
    cm_checks.append(
        HypothesisCheck(
            "every sigma image of a base generator is homogeneous of degree 1",
            status,
            witness,
            note,
        )
    )
    records.append(
        PropertyRecord(
            "cohen_macaulay", _conclude(cm_checks), tuple(cm_checks), _CITATIONS["cohen_macaulay"]
        )
    )

    sn_fact = HypothesisCheck("base ring strongly Noetherian", PASS, None, _BASE_FACT)
    records.append(
        PropertyRecord(
            "strongly_noetherian",
            _conclude(bij + [sn_fact]),
            tuple(bij + [sn_fact]),
            _CITATIONS["strongly_noetherian"],
        )
    )

    return PropertyReport(tuple(records), gkdim_report(p))


def _is_homogeneous_linear(img: Poly) -> bool:
    """Every monomial of the image has total degree exactly 1."""
    return all(sum(e) == 1 for e in img.terms)
