"""The bundled dataset of verified surfaces and its verification battery.

The catalog is a single JSON document (schema version 1) holding

* ``cases``: the 36 one-relation surface models (30 types; six types come
  in two isomorphism classes, five of them via a parameter lambda in {0,1}),
* ``toric_types``: the 16 toric types with their cyclic generator diagrams,
* ``classify_inputs``: root bases for the degree-2 and degree-1 types used
  as classification inputs, with expected verdicts,
* ``overview``: verdict counts per degree for the low-degree summary rows.

``verify_case`` runs ten independent exact checks against one case; all of
them must pass for every bundled case.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from . import dynkin
from .classify import Classifier, Verdict, classify_roots
from .counting import CombinationCounter, euler_char
from .geometry import (
    AmbientSpace,
    PointStatus,
    linear_system_has_solution,
    proportional,
    singular_point_check,
)
from .lattice import DivisorClass, Lattice, intersect
from .poly import GradedRing, MultiPoly, exact_divide, graded_degree, groebner_reduce

SCHEMA_VERSION = 1


class CatalogFormatError(ValueError):
    """Malformed catalog document; the message carries the offending path."""


@dataclass(frozen=True)
class CurveImage:
    """Image of one generator curve under the anticanonical map."""

    point: tuple[int, ...] | None = None
    locus: tuple[MultiPoly, ...] | None = None


@dataclass(frozen=True)
class RhoImage:
    """Image of one generator curve under the contraction to P^2."""

    point: tuple[int, ...] | None = None
    curve: MultiPoly | None = None


@dataclass(frozen=True)
class Singularity:
    label: str
    point: tuple[int, ...]
    curves: tuple[int, ...]  # 1-based generator indices


@dataclass(frozen=True)
class TripleIntersection:
    curves: tuple[int, int, int]
    point: tuple[int, ...] | None  # None: the three curves have no common point


@dataclass(frozen=True)
class CatalogCase:
    id: str
    degree: int
    ade: str
    num_lines: int
    lam: int | None
    classes: tuple[DivisorClass, ...]
    dynkin_matrix: tuple[tuple[int, ...], ...]
    relation: MultiPoly
    relation_degree: DivisorClass
    ambient: AmbientSpace
    equations: tuple[MultiPoly, ...]
    pistar: tuple[MultiPoly, ...]
    extra_pistar: tuple[tuple[MultiPoly, MultiPoly], ...]
    curve_images: tuple[CurveImage, ...]
    rho_images: tuple[RhoImage, ...]
    singularities: tuple[Singularity, ...]
    phi_projection: tuple[int, ...] | None
    phi_monomials: tuple[MultiPoly, ...] | None
    psi: tuple[MultiPoly, ...] | None
    triples: tuple[TripleIntersection, ...]

    @property
    def arity(self) -> int:
        return len(self.classes)

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.degree)

    def graded_ring(self) -> GradedRing:
        return GradedRing(self.classes)


@dataclass(frozen=True)
class ToricEntry:
    degree: int
    ade: str
    num_lines: int
    cycle: tuple[int, ...]


@dataclass(frozen=True)
class ClassifyInput:
    degree: int
    ade: str
    num_lines: int
    roots: tuple[DivisorClass, ...]
    expected: str  # "one_relation" or "multi_relation"


@dataclass(frozen=True)
class OverviewRow:
    degree: int
    toric: int
    one_relation: int
    multi_relation: int


@dataclass(frozen=True)
class Catalog:
    cases: tuple[CatalogCase, ...]
    toric_types: tuple[ToricEntry, ...]
    classify_inputs: tuple[ClassifyInput, ...]
    overview: tuple[OverviewRow, ...]

    def case(self, case_id: str) -> CatalogCase:
        for c in self.cases:
            if c.id == case_id:
                return c
        raise KeyError(f"no catalog case {case_id!r}")

    def case_ids(self) -> list[str]:
        return [c.id for c in self.cases]


# --------------------------------------------------------------------------
# JSON decoding with schema validation
# --------------------------------------------------------------------------


def _fail(path: str, msg: str) -> None:
    raise CatalogFormatError(f"{path}: {msg}")


def _expect_keys(obj: dict, required: set[str], optional: set[str], path: str) -> None:
    if not isinstance(obj, dict):
        _fail(path, f"expected object, got {type(obj).__name__}")
    keys = set(obj)
    missing = required - keys
    unknown = keys - required - optional
    if missing:
        _fail(path, f"missing fields {sorted(missing)}")
    if unknown:
        _fail(path, f"unknown fields {sorted(unknown)}")


def _decode_poly(obj, arity: int, path: str) -> MultiPoly:
    if not isinstance(obj, list):
        _fail(path, "polynomial must be a list of [coeff, exponents] terms")
    terms = {}
    for k, term in enumerate(obj):
        tpath = f"{path}[{k}]"
        if not (isinstance(term, list) and len(term) == 2):
            _fail(tpath, "term must be [coeff, exponents]")
        coeff, expo = term
        if not isinstance(coeff, str):
            _fail(tpath, "coefficient must be a decimal integer string")
        if not (isinstance(expo, list) and len(expo) == arity):
            _fail(tpath, f"exponent vector must have length {arity}")
        if not all(isinstance(e, int) and e >= 0 for e in expo):
            _fail(tpath, "exponents must be non-negative integers")
        terms[tuple(expo)] = Fraction(int(coeff))
    return MultiPoly(arity, terms)


def _decode_vector(obj, length: int, path: str) -> tuple[int, ...]:
    if not (isinstance(obj, list) and len(obj) == length):
        _fail(path, f"expected integer vector of length {length}")
    if not all(isinstance(v, int) for v in obj):
        _fail(path, "vector entries must be integers")
    return tuple(obj)


def _decode_case(obj, path: str) -> CatalogCase:
    _expect_keys(
        obj,
        {
            "id", "degree", "ade", "num_lines", "lam", "classes", "dynkin",
            "relation", "ambient", "equations", "pistar", "extra_pistar",
            "curve_images", "rho_images", "singularities", "phi", "psi",
            "triples",
        },
        set(),
        path,
    )
    degree = obj["degree"]
    if not isinstance(degree, int) or not 1 <= degree <= 6:
        _fail(f"{path}.degree", "case degree must be in 1..6")
    rank = 10 - degree
    arity = 13 - degree
    classes = tuple(
        DivisorClass(_decode_vector(v, rank, f"{path}.classes[{i}]"), degree)
        for i, v in enumerate(obj["classes"])
    )
    if len(classes) != arity:
        _fail(f"{path}.classes", f"expected {arity} generator classes")
    matrix = tuple(
        _decode_vector(row, arity, f"{path}.dynkin[{i}]")
        for i, row in enumerate(obj["dynkin"])
    )
    if len(matrix) != arity:
        _fail(f"{path}.dynkin", f"expected {arity} rows")
    rel_obj = obj["relation"]
    _expect_keys(rel_obj, {"monomials", "degree"}, set(), f"{path}.relation")
    relation = _decode_poly(rel_obj["monomials"], arity, f"{path}.relation.monomials")
    rel_degree = DivisorClass(
        _decode_vector(rel_obj["degree"], rank, f"{path}.relation.degree"), degree
    )
    weights = _decode_vector(obj["ambient"], degree + 1 if degree >= 3 else 4, f"{path}.ambient")
    ambient = AmbientSpace(weights)
    ncoords = ambient.ncoords
    equations = tuple(
        _decode_poly(e, ncoords, f"{path}.equations[{i}]")
        for i, e in enumerate(obj["equations"])
    )
    pistar = tuple(
        _decode_poly(p, arity, f"{path}.pistar[{i}]")
        for i, p in enumerate(obj["pistar"])
    )
    if len(pistar) != ncoords:
        _fail(f"{path}.pistar", f"expected {ncoords} components")
    extra = []
    for i, pair in enumerate(obj["extra_pistar"]):
        ppath = f"{path}.extra_pistar[{i}]"
        if not (isinstance(pair, list) and len(pair) == 2):
            _fail(ppath, "expected [combination, monomial]")
        extra.append(
            (
                _decode_poly(pair[0], ncoords, f"{ppath}[0]"),
                _decode_poly(pair[1], arity, f"{ppath}[1]"),
            )
        )
    images = []
    for i, im in enumerate(obj["curve_images"]):
        ipath = f"{path}.curve_images[{i}]"
        _expect_keys(im, set(), {"point", "locus"}, ipath)
        if ("point" in im) == ("locus" in im):
            _fail(ipath, "exactly one of point/locus required")
        if "point" in im:
            images.append(CurveImage(point=_decode_vector(im["point"], ncoords, ipath)))
        else:
            images.append(
                CurveImage(
                    locus=tuple(
                        _decode_poly(p, ncoords, f"{ipath}.locus[{j}]")
                        for j, p in enumerate(im["locus"])
                    )
                )
            )
    if len(images) != arity:
        _fail(f"{path}.curve_images", f"expected {arity} entries")
    rhos = []
    for i, im in enumerate(obj["rho_images"]):
        ipath = f"{path}.rho_images[{i}]"
        _expect_keys(im, set(), {"point", "curve"}, ipath)
        if ("point" in im) == ("curve" in im):
            _fail(ipath, "exactly one of point/curve required")
        if "point" in im:
            rhos.append(RhoImage(point=_decode_vector(im["point"], 3, ipath)))
        else:
            rhos.append(RhoImage(curve=_decode_poly(im["curve"], 3, f"{ipath}.curve")))
    if len(rhos) != arity:
        _fail(f"{path}.rho_images", f"expected {arity} entries")
    sings = []
    for i, s in enumerate(obj["singularities"]):
        spath = f"{path}.singularities[{i}]"
        _expect_keys(s, {"label", "point", "curves"}, set(), spath)
        sings.append(
            Singularity(
                s["label"],
                _decode_vector(s["point"], ncoords, f"{spath}.point"),
                tuple(s["curves"]),
            )
        )
    phi = obj["phi"]
    _expect_keys(phi, set(), {"projection", "monomials"}, f"{path}.phi")
    phi_proj = None
    phi_mono = None
    if "projection" in phi:
        phi_proj = tuple(phi["projection"])
        if len(phi_proj) != 3 or not all(0 <= i < ncoords for i in phi_proj):
            _fail(f"{path}.phi.projection", "expected three coordinate indices")
    elif "monomials" in phi:
        phi_mono = tuple(
            _decode_poly(p, ncoords, f"{path}.phi.monomials[{i}]")
            for i, p in enumerate(phi["monomials"])
        )
        if len(phi_mono) != 3:
            _fail(f"{path}.phi.monomials", "expected three components")
    else:
        _fail(f"{path}.phi", "projection or monomials required")
    psi = None
    if obj["psi"] is not None:
        psi = tuple(
            _decode_poly(p, 3, f"{path}.psi[{i}]") for i, p in enumerate(obj["psi"])
        )
        if len(psi) != ncoords:
            _fail(f"{path}.psi", f"expected {ncoords} components")
    triples = []
    for i, t in enumerate(obj["triples"]):
        tpath = f"{path}.triples[{i}]"
        _expect_keys(t, {"curves", "point"}, set(), tpath)
        curves = tuple(t["curves"])
        if len(curves) != 3:
            _fail(f"{tpath}.curves", "expected three curve indices")
        pt = None if t["point"] is None else _decode_vector(t["point"], ncoords, tpath)
        triples.append(TripleIntersection(curves, pt))
    lam = obj["lam"]
    if lam is not None and lam not in (0, 1):
        _fail(f"{path}.lam", "lambda must be null, 0 or 1")
    return CatalogCase(
        id=obj["id"],
        degree=degree,
        ade=obj["ade"],
        num_lines=obj["num_lines"],
        lam=lam,
        classes=classes,
        dynkin_matrix=matrix,
        relation=relation,
        relation_degree=rel_degree,
        ambient=ambient,
        equations=equations,
        pistar=pistar,
        extra_pistar=tuple(extra),
        curve_images=tuple(images),
        rho_images=tuple(rhos),
        singularities=tuple(sings),
        phi_projection=phi_proj,
        phi_monomials=phi_mono,
        psi=psi,
        triples=tuple(triples),
    )


def load_catalog(source) -> Catalog:
    """Parse and validate a catalog document (path, bytes, str, or stream)."""
    if isinstance(source, (str, Path)) and "\n" not in str(source):
        data = Path(source).read_bytes()
    elif isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    elif isinstance(source, str):
        data = source.encode()
    elif isinstance(source, io.IOBase) or hasattr(source, "read"):
        data = source.read()
        if isinstance(data, str):
            data = data.encode()
    else:
        raise TypeError(f"cannot load catalog from {type(source).__name__}")
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise CatalogFormatError(f"$: not valid UTF-8 JSON ({e})") from None
    _expect_keys(
        doc, {"schema", "cases", "toric_types", "classify_inputs", "overview"}, set(), "$"
    )
    if doc["schema"] != SCHEMA_VERSION:
        _fail("$.schema", f"unsupported schema version {doc['schema']!r}")
    cases = tuple(
        sorted(
            (_decode_case(c, f"$.cases[{i}]") for i, c in enumerate(doc["cases"])),
            key=lambda c: c.id,
        )
    )
    ids = [c.id for c in cases]
    if len(set(ids)) != len(ids):
        _fail("$.cases", "duplicate case ids")
    toric = []
    for i, t in enumerate(doc["toric_types"]):
        tpath = f"$.toric_types[{i}]"
        _expect_keys(t, {"degree", "ade", "num_lines", "cycle"}, set(), tpath)
        toric.append(
            ToricEntry(t["degree"], t["ade"], t["num_lines"], tuple(t["cycle"]))
        )
    inputs = []
    for i, t in enumerate(doc["classify_inputs"]):
        tpath = f"$.classify_inputs[{i}]"
        _expect_keys(t, {"degree", "ade", "num_lines", "roots", "expected"}, set(), tpath)
        degree = t["degree"]
        rank = 10 - degree
        roots = tuple(
            DivisorClass(_decode_vector(v, rank, f"{tpath}.roots[{j}]"), degree)
            for j, v in enumerate(t["roots"])
        )
        if t["expected"] not in ("one_relation", "multi_relation"):
            _fail(f"{tpath}.expected", "expected verdict must be one/multi relation")
        inputs.append(ClassifyInput(degree, t["ade"], t["num_lines"], roots, t["expected"]))
    overview = []
    for i, r in enumerate(doc["overview"]):
        rpath = f"$.overview[{i}]"
        _expect_keys(r, {"degree", "toric", "one_relation", "multi_relation"}, set(), rpath)
        overview.append(
            OverviewRow(r["degree"], r["toric"], r["one_relation"], r["multi_relation"])
        )
    return Catalog(cases, tuple(toric), tuple(inputs), tuple(overview))


def bundled_catalog_path() -> Path:
    return Path(__file__).parent / "data" / "catalog.json"


_bundled: Catalog | None = None


def bundled_catalog() -> Catalog:
    global _bundled
    if _bundled is None:
        _bundled = load_catalog(bundled_catalog_path())
    return _bundled


# --------------------------------------------------------------------------
# The verification battery
# --------------------------------------------------------------------------

CHECK_NAMES = {
    1: "relation_homogeneous",
    2: "relation_monomial_count",
    3: "dynkin_matrix",
    4: "pistar_degrees",
    5: "equations_multiple_of_relation",
    6: "extra_pistar_identities",
    7: "singular_points",
    8: "curve_loci_on_surface",
    9: "birational_roundtrip",
    10: "lattice_classification",
}


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class CaseReport:
    case_id: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]


def reconstructed_psi(case: CatalogCase) -> list[MultiPoly]:
    """Inverse map components, rebuilt from pistar and the plane images.

    Substitutes 1 for every generator contracted to a point of P^2 and the
    defining polynomial of the image curve for the rest; applied to the
    pistar expressions this yields the components of psi.
    """
    subs = []
    for im in case.rho_images:
        if im.point is not None:
            subs.append(MultiPoly.constant(3, 1))
        else:
            subs.append(im.curve)
    return [p.substitute(subs) for p in case.pistar]


def phi_components(case: CatalogCase) -> list[MultiPoly]:
    if case.phi_projection is not None:
        return [MultiPoly.variable(case.ambient.ncoords, i) for i in case.phi_projection]
    return list(case.phi_monomials)


def _check(num: int, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(num, CHECK_NAMES[num], ok, detail)


def verify_case(case: CatalogCase, classifier: Classifier | None = None) -> CaseReport:
    """Run the ten verification checks on one catalog case."""
    checks: list[CheckResult] = []
    ring = case.graded_ring()
    minus_k = case.lattice.anticanonical()

    # (1) relation homogeneity at the stated degree
    rdeg = graded_degree(case.relation, ring)
    checks.append(
        _check(
            1,
            rdeg == case.relation_degree,
            f"degree {rdeg} vs stated {case.relation_degree}",
        )
    )

    # (2) the relation degree admits chi+1 monomials; the stated ones are among them
    counter = CombinationCounter(list(case.classes))
    combos = {c for c in counter.iter_combinations(case.relation_degree)}
    want = euler_char(case.relation_degree) + 1
    stored = set(case.relation.terms)
    checks.append(
        _check(
            2,
            len(combos) == want and stored <= combos,
            f"{len(combos)} monomials of the relation degree, expected {want}; "
            f"stored terms contained: {stored <= combos}",
        )
    )

    # (3) intersection numbers reproduce the stored diagram; line count
    derived = tuple(
        tuple(
            case.classes[i].self_int() if i == j else intersect(case.classes[i], case.classes[j])
            for j in range(case.arity)
        )
        for i in range(case.arity)
    )
    lines = sum(1 for c in case.classes if c.self_int() == -1)
    checks.append(
        _check(
            3,
            derived == case.dynkin_matrix and lines == case.num_lines,
            f"matrix match: {derived == case.dynkin_matrix}, "
            f"(-1)-classes {lines} vs {case.num_lines}",
        )
    )

    # (4) pistar components are homogeneous of degree -w_i * K
    ok4 = True
    detail4 = []
    for i, p in enumerate(case.pistar):
        d = graded_degree(p, ring)
        expected = case.ambient.weights[i] * minus_k
        if d != expected:
            ok4 = False
            detail4.append(f"x{i}: {d} != {expected}")
    checks.append(_check(4, ok4, "; ".join(detail4)))

    # (5) surface equations pull back to multiples of the relation
    ok5 = True
    detail5 = []
    for i, f in enumerate(case.equations):
        pulled = f.substitute(list(case.pistar))
        if exact_divide(pulled, case.relation) is None:
            ok5 = False
            detail5.append(f"equation {i} not divisible")
    checks.append(_check(5, ok5, "; ".join(detail5)))

    # (6) extra pistar identities hold modulo the relation
    ok6 = True
    detail6 = []
    for i, (combo, mono) in enumerate(case.extra_pistar):
        diff = combo.substitute(list(case.pistar)) - mono
        if exact_divide(diff, case.relation) is None:
            ok6 = False
            detail6.append(f"identity {i} fails")
    checks.append(_check(6, ok6, "; ".join(detail6)))

    # (7) singular points, their labels, and triple-intersection images
    ok7 = True
    detail7 = []
    root_indices = sorted({i for s in case.singularities for i in s.curves})
    roots = [case.classes[i - 1] for i in root_indices]
    comp = dynkin.ade_components(roots)
    comp_sets = {
        frozenset(root_indices[k] for k in members): dynkin.format_ade((label,))
        for label, members in comp
    }
    for s in case.singularities:
        status = singular_point_check(case.equations, s.point, case.ambient)
        if status is not PointStatus.SINGULAR:
            ok7 = False
            detail7.append(f"{s.point}: {status.value}")
        if comp_sets.get(frozenset(s.curves)) != s.label:
            ok7 = False
            detail7.append(f"{s.point}: label {s.label} vs Dynkin component")
    label_multiset = dynkin.parse_ade(case.ade)
    derived_labels = tuple(sorted((lab for lab, _ in comp), key=dynkin._ade_sort_key))
    if derived_labels != label_multiset:
        ok7 = False
        detail7.append(f"ADE multiset {derived_labels} vs {label_multiset}")
    for t in case.triples:
        if t.point is not None:
            point = [Fraction(v) for v in t.point]
            # membership in the surface: every equation vanishes at the point
            if any(f.evaluate(point) != 0 for f in case.equations):
                ok7 = False
                detail7.append(f"triple point {t.point} not on the surface")
        else:
            loci = []
            linear = True
            for idx in t.curves:
                im = case.curve_images[idx - 1]
                if im.locus is None:
                    linear = False
                    break
                loci.extend(im.locus)
                if any(p.total_degree() != 1 for p in im.locus):
                    linear = False
                    break
            if linear and not case.ambient.is_weighted:
                if linear_system_has_solution(loci, case.ambient.ncoords):
                    ok7 = False
                    detail7.append(f"curves {t.curves} unexpectedly meet")
    checks.append(_check(7, ok7, "; ".join(detail7)))

    # (8) every listed curve locus lies on the surface (ideal containment)
    ok8 = True
    detail8 = []
    for i, im in enumerate(case.curve_images):
        if im.locus is None:
            continue
        for j, f in enumerate(case.equations):
            if not groebner_reduce(f, list(im.locus)).is_zero():
                ok8 = False
                detail8.append(f"E{i + 1}: equation {j} not in locus ideal")
    checks.append(_check(8, ok8, "; ".join(detail8)))

    # (9) birational roundtrip through P^2
    ok9 = True
    detail9 = []
    psi = reconstructed_psi(case)
    if case.psi is not None and tuple(psi) != tuple(case.psi):
        ok9 = False
        detail9.append("stored psi differs from reconstruction")
    for i, f in enumerate(case.equations):
        if not f.substitute(psi).is_zero():
            ok9 = False
            detail9.append(f"equation {i} does not vanish on psi")
    phi_psi = [p.substitute(psi) for p in phi_components(case)]
    ys = MultiPoly.variables(3)
    if not proportional(phi_psi, ys):
        ok9 = False
        detail9.append("phi(psi(y)) not proportional to y")
    checks.append(_check(9, ok9, "; ".join(detail9)))

    # (10) the lattice-side classification reproduces the presentation
    ok10 = True
    detail10 = []
    roots = [case.classes[i - 1] for i in root_indices]
    try:
        cl = classify_roots(case.degree, roots, classifier)
    except Exception as e:  # classification must not fail on catalog data
        ok10 = False
        detail10.append(f"classification error: {e}")
        cl = None
    if cl is not None:
        if cl.verdict is not Verdict.ONE_RELATION:
            ok10 = False
            detail10.append(f"verdict {cl.verdict.value}")
        else:
            got = sorted(d.coeffs for d in cl.presentation.generator_degrees)
            want_degs = sorted(d.coeffs for d in case.classes)
            if got != want_degs:
                ok10 = False
                detail10.append("generator degree multiset mismatch")
            if cl.presentation.relation_degree != case.relation_degree:
                ok10 = False
                detail10.append(
                    f"relation degree {cl.presentation.relation_degree} "
                    f"vs {case.relation_degree}"
                )
    checks.append(_check(10, ok10, "; ".join(detail10)))

    return CaseReport(case.id, tuple(checks))


def verify_all(
    catalog: Catalog | None = None, classifier: Classifier | None = None
) -> list[CaseReport]:
    catalog = catalog or bundled_catalog()
    classifier = classifier or Classifier()
    return [verify_case(c, classifier) for c in catalog.cases]


def mutated_relation(case: CatalogCase, term_index: int, coeff: int) -> CatalogCase:
    """Copy of the case with one relation coefficient replaced (for fault tests)."""
    monos = sorted(case.relation.terms)
    m = monos[term_index % len(monos)]
    terms = dict(case.relation.terms)
    terms[m] = Fraction(coeff)
    return replace(case, relation=MultiPoly(case.arity, terms))
