"""Pure handlers mapping request models to response documents.

The FastAPI endpoints and the command line both call these, so the in-process
and over-the-wire behavior is identical by construction.  Parse errors
propagate to the caller; unmet mathematical preconditions are rendered into
the document as failing checks.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .. import __version__
from ..errors import NotFinitelyGraded, NotQuasiCommutative, ParseError
from ..graded import degree_rank, gr_presentation, hilbert_dim, iterated_ore
from ..points import ProjPoint, multilinearize, point_chain, point_matrix, point_scheme_locus
from ..parsing import parse_scalar
from ..presentation import Presentation, classify_shape, emit, parse, specialize, validate_axioms
from ..properties import property_report
from ..rewrite import check_pbw_consistency, multiply, parse_element
from .schemas import (
    Check,
    CheckRequest,
    Document,
    GrRequest,
    HilbertRequest,
    MulRequest,
    NfRequest,
    OreRequest,
    PointsRequest,
    PresentationRequest,
    ReportRequest,
)


def _document(name: str, checks: list[Check], data: dict) -> Document:
    return Document(
        tool_version=__version__, presentation_name=name, checks=checks, data=data
    )


def _load(req: PresentationRequest) -> Presentation:
    p = parse(req.source, req.name)
    if req.assign:
        assignment = {k: Fraction(v) for k, v in req.assign.items()}
        p = specialize(p, assignment)
    return p


def _check(name: str, passed: bool, witness: str | None = None) -> Check:
    return Check(name=name, passed=passed, witness=witness)


def run_check(req: CheckRequest) -> Document:
    p = _load(req)
    report = validate_axioms(p)
    shape = classify_shape(p)
    checks = [_check(c.name, c.passed, c.witness) for c in report.checks]
    cert = check_pbw_consistency(p)
    discrepancies = {}
    for overlap in cert.overlaps:
        witness = None
        if not overlap.passed:
            witness = overlap.discrepancy.to_str(p.var_names, p.base_names)
            discrepancies[overlap.label] = witness
        checks.append(_check(f"overlap{overlap.label}", overlap.passed, witness))
    data = {
        "m": p.m,
        "n": p.n,
        "params": list(p.params),
        "shape": shape.as_dict(),
        "overlaps_total": len(cert.overlaps),
        "overlaps_failed": len(cert.failures()),
        "discrepancies": discrepancies,
    }
    return _document(p.name, checks, data)


def run_nf(req: NfRequest) -> Document:
    p = _load(req)
    f = parse_element(p, req.expression, req.strategy)
    data = {
        "expression": req.expression,
        "strategy": req.strategy,
        "normal_form": f.to_str(p.var_names, p.base_names),
        "degree": None if f.is_zero() else f.degree(),
    }
    return _document(p.name, [], data)


def run_mul(req: MulRequest) -> Document:
    p = _load(req)
    f = parse_element(p, req.left)
    g = parse_element(p, req.right)
    product = multiply(p, f, g)
    data = {
        "left": f.to_str(p.var_names, p.base_names),
        "right": g.to_str(p.var_names, p.base_names),
        "product": product.to_str(p.var_names, p.base_names),
        "degree": None if product.is_zero() else product.degree(),
    }
    return _document(p.name, [], data)


def run_gr(req: GrRequest) -> Document:
    p = _load(req)
    graded = gr_presentation(p)
    shape = classify_shape(graded)
    checks = [_check("gr_quasi_commutative", shape.quasi_commutative)]
    data = {"presentation": emit(graded), "shape": shape.as_dict()}
    return _document(graded.name, checks, data)


def run_ore(req: OreRequest) -> Document:
    p = _load(req)
    try:
        tower = iterated_ore(p)
    except NotQuasiCommutative as exc:
        return _document(
            p.name, [_check("quasi_commutative", False, str(exc))], {}
        )
    stages = []
    for j, stage in enumerate(tower.stages):
        stages.append(
            {
                "variable": stage.var_name,
                "sigma": {
                    tower.base_names[k]: img.to_str(tower.base_names)
                    for k, img in enumerate(stage.endo.images)
                },
                "multipliers": {
                    p.var_names[i]: mult.to_str(tower.base_names)
                    for i, mult in enumerate(stage.multipliers)
                },
            }
        )
    checks = [
        _check("quasi_commutative", True),
        _check("ore_replay_20_products", True),
    ]
    return _document(p.name, checks, {"base": list(tower.base_names), "stages": stages})


def run_report(req: ReportRequest) -> Document:
    p = _load(req)
    cert = check_pbw_consistency(p)
    if not cert.passed:
        return _document(
            p.name,
            [_check("pbw_certificate", False, f"{len(cert.failures())} failing overlaps")],
            {},
        )
    report = property_report(p, cert)
    checks = [_check("pbw_certificate", True)]
    for record in report.records:
        for hyp in record.hypotheses:
            checks.append(
                _check(f"{record.name}: {hyp.name}", hyp.status == "pass", hyp.witness)
            )
    checks.append(
        _check(
            "gkdim_certified",
            report.gk.certified,
            None if report.gk.certified else _gk_witness(report),
        )
    )
    return _document(p.name, checks, report.as_dict())


def _gk_witness(report) -> str | None:
    for hyp in report.gk.hypotheses:
        if hyp.status != "pass":
            return hyp.witness or hyp.name
    return None


def run_hilbert(req: HilbertRequest) -> Document:
    p = _load(req)
    try:
        dims = []
        checks = []
        for d in range(req.max_degree + 1):
            count = comb(d + p.n - 1, p.n - 1)
            entry = {"degree": d, "dim": count, "cross_checked": d <= 4}
            if d <= 4:
                r = degree_rank(p, d)
                entry["rank"] = r
                checks.append(_check(f"rank_cross_check[{d}]", r == count))
            else:
                hilbert_dim(p, d)
            dims.append(entry)
    except NotFinitelyGraded as exc:
        return _document(p.name, [_check("finitely_graded", False, str(exc))], {})
    return _document(p.name, checks, {"dims": dims})


def _parse_start(p: Presentation, text: str) -> ProjPoint:
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    parts = body.split(":")
    coords = [parse_scalar(part.strip(), p.params) for part in parts]
    return ProjPoint(coords)


def run_points(req: PointsRequest) -> Document:
    p = _load(req)
    try:
        system = multilinearize(p)
    except NotFinitelyGraded as exc:
        return _document(p.name, [_check("finitely_graded", False, str(exc))], {})
    u_names = [f"u_{name}" for name in p.var_names]
    data: dict = {
        "forms": [
            {
                f"u_{p.var_names[i]}*v_{p.var_names[j]}": str(coeff)
                for (i, j), coeff in sorted(form.items())
            }
            for form in system.forms
        ]
    }
    checks: list[Check] = []
    if req.symbolic or not req.start:
        matrix = point_matrix(system)
        data["matrix"] = [[entry.to_str(u_names) for entry in row] for row in matrix]
        locus = point_scheme_locus(system)
        if locus.kind == "kernel_always_nonzero":
            data["locus"] = {"kind": "kernel_always_nonzero"}
        else:
            data["locus"] = {
                "kind": "minors",
                "polynomials": [poly.to_str(u_names) for poly in locus.polynomials],
            }
    if req.start:
        start = _parse_start(p, req.start)
        if start.arity != p.n:
            raise ParseError(
                f"start point has {start.arity} coordinates, expected {p.n}"
            )
        chain = point_chain(system, start, req.depth)
        data["chain"] = {
            "status": chain.status,
            "points": [[str(c) for c in pt.canonical().coords] for pt in chain.points],
        }
        if chain.kernel:
            data["chain"]["kernel_basis"] = [
                [str(c) for c in pt.coords] for pt in chain.kernel
            ]
        checks.append(_check("chain_pairs_annihilate_forms", True))
    return _document(p.name, checks, data)
