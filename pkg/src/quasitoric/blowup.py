"""Blowups of faces, crepant candidates and invariance checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .exact import is_primitive, rat, solve
from .invariants import e_orb, e_st, orbifold_hodge
from .model import (
    CharacteristicModel,
    ModelError,
    interior_box,
    is_positively_omnioriented,
    is_quasi_sl,
    validate,
)
from .polytope import (
    Face,
    SimplePolytope,
    TruncationError,
    combinatorially_equivalent,
    truncate_face,
)
from .qpoly import HodgeTable, QExpPolynomial


class SpecError(ValueError):
    pass


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class BlowupSpec:
    """New characteristic vector ``lambda0 = sum b_j lambda_j`` for face F.

    ``b`` is indexed by the facets of F in ascending order.  ``eps`` None
    means the default truncation depth.
    """

    face: Face
    b: tuple[Fraction, ...]
    lambda0: tuple[int, ...]
    eps: Fraction | None = None

    @property
    def crepant(self) -> bool:
        return sum(self.b, Fraction(0)) == 1

    def with_eps(self, eps) -> "BlowupSpec":
        return BlowupSpec(self.face, self.b, self.lambda0, None if eps is None else rat(eps))


def _check_face(m: CharacteristicModel, face: Face) -> None:
    if not m.polytope.has_face(face.facet_set) or m.polytope.face(face.facet_set) != face:
        raise SpecError(f"face {face.label()} is not a face of this model")
    if len(face.facet_set) < 2:
        raise SpecError(f"face {face.label()} has codimension {len(face.facet_set)}; need at least 2")


def spec_from_coefficients(m: CharacteristicModel, face: Face, b: Sequence, eps=None) -> BlowupSpec:
    _check_face(m, face)
    facets = sorted(face.facet_set)
    b = tuple(rat(x) for x in b)
    if len(b) != len(facets):
        raise SpecError(f"need {len(facets)} coefficients for face {face.label()}, got {len(b)}")
    if any(x <= 0 for x in b):
        raise SpecError("all coefficients b_j must be positive")
    lam = []
    for i in range(m.dim):
        s = sum((bj * m.lambdas[j][i] for bj, j in zip(b, facets)), Fraction(0))
        if s.denominator != 1:
            raise SpecError(f"sum b_j lambda_j is not integral for b = {b}")
        lam.append(s.numerator)
    if not is_primitive(lam):
        raise SpecError(f"lambda0 = {tuple(lam)} is not primitive")
    return BlowupSpec(face, b, tuple(lam), None if eps is None else rat(eps))


def spec_from_vector(m: CharacteristicModel, face: Face, lambda0: Sequence[int], eps=None) -> BlowupSpec:
    """Recover b from a proposed lambda0; it must lie in the open cone of F."""
    _check_face(m, face)
    facets = sorted(face.facet_set)
    lambda0 = tuple(int(x) for x in lambda0)
    if not is_primitive(lambda0):
        raise SpecError(f"lambda0 = {lambda0} is not primitive")
    cols = [m.lambdas[j] for j in facets]
    # normal equations are exact and square since the columns are independent
    gram = [[sum(x * y for x, y in zip(ci, cj)) for cj in cols] for ci in cols]
    rhs = [sum(x * y for x, y in zip(ci, lambda0)) for ci in cols]
    b = solve(gram, rhs)
    if b is None:
        raise SpecError("characteristic vectors of the face are dependent")
    recon = tuple(sum((bj * c[i] for bj, c in zip(b, cols)), Fraction(0)) for i in range(m.dim))
    if recon != lambda0:
        raise SpecError(f"lambda0 = {lambda0} is not in the span of the face's characteristic vectors")
    if any(x <= 0 for x in b):
        raise SpecError(f"lambda0 = {lambda0} has non-positive coefficients {tuple(map(str, b))}")
    return BlowupSpec(face, tuple(b), lambda0, None if eps is None else rat(eps))


def crepant_candidates(m: CharacteristicModel, face: Face, method: str = "snf") -> list[BlowupSpec]:
    """Interior box elements of age 1, as blowup specs."""
    if len(face.facet_set) < 2:
        return []
    out = []
    for s in interior_box(m, face, method):
        if s.age == 1:
            if not is_primitive(s.g):
                raise ArithmeticError(f"age-1 box element {s.g} is not primitive")
            out.append(BlowupSpec(face, s.a, s.g))
    return out


def all_crepant_candidates(m: CharacteristicModel, method: str = "snf") -> list[BlowupSpec]:
    out = []
    for f in m.polytope.faces:
        out.extend(crepant_candidates(m, f, method))
    return out


def blow_up(m: CharacteristicModel, spec: BlowupSpec) -> CharacteristicModel:
    """Truncate F and give the new last facet the vector lambda0."""
    if not is_primitive(spec.lambda0):
        raise SpecError(f"lambda0 = {spec.lambda0} is not primitive")
    if any(x <= 0 for x in spec.b):
        raise SpecError("all coefficients b_j must be positive")
    facets = sorted(spec.face.facet_set)
    recon = tuple(
        sum((bj * m.lambdas[j][i] for bj, j in zip(spec.b, facets)), Fraction(0)) for i in range(m.dim)
    )
    if recon != spec.lambda0:
        raise SpecError("lambda0 does not equal sum b_j lambda_j")
    q = truncate_face(m.polytope, spec.face, spec.eps)
    out = CharacteristicModel(q, m.lambdas + (spec.lambda0,), m.name and f"{m.name}+blowup")
    report = validate(out)
    if not report.ok:
        raise ConstructionError("blown-up model is invalid: " + "; ".join(report.violations))
    return out


def blow_down(m: CharacteristicModel) -> CharacteristicModel:
    """Forget the last facet, i.e. undo :func:`blow_up` up to the truncation."""
    try:
        p = SimplePolytope(m.polytope.halfspaces[:-1], m.dim)
    except ValueError as exc:
        raise ConstructionError(f"removing the last facet does not give a simple polytope: {exc}") from exc
    return CharacteristicModel(p, m.lambdas[:-1], m.name).check()


def is_blowdown_of(blown: CharacteristicModel, original: CharacteristicModel) -> bool:
    down = blow_down(blown)
    return bool(combinatorially_equivalent(down.polytope, original.polytope)) and down.lambdas == original.lambdas


class LemmaCheck(NamedTuple):
    applicable: bool
    holds: bool
    note: str = ""

    def __bool__(self):
        return self.holds


def preserves_quasi_sl(m: CharacteristicModel, spec: BlowupSpec) -> LemmaCheck:
    if not is_quasi_sl(m):
        return LemmaCheck(False, True, "precondition fails: model is not quasi-SL")
    if not spec.crepant:
        return LemmaCheck(False, True, "precondition fails: blowup is not crepant")
    return LemmaCheck(True, is_quasi_sl(blow_up(m, spec)))


def preserves_positive_omniorientation(m: CharacteristicModel, spec: BlowupSpec) -> LemmaCheck:
    if not is_positively_omnioriented(m):
        return LemmaCheck(False, True, "precondition fails: model is not positively omnioriented")
    holds = is_positively_omnioriented(blow_up(m, spec))
    return LemmaCheck(True, holds, "" if holds else "sign convention mismatch: investigate")


@dataclass
class InvarianceReport:
    spec: BlowupSpec
    quasi_sl: bool
    crepant: bool
    matches_candidate: bool
    hodge_before: HodgeTable
    hodge_after: HodgeTable
    e_orb_before: QExpPolynomial
    e_orb_after: QExpPolynomial
    e_st_before: QExpPolynomial
    e_st_after: QExpPolynomial
    notes: list[str] = field(default_factory=list)

    @property
    def hodge_equal(self) -> bool:
        return self.hodge_before == self.hodge_after

    @property
    def e_orb_equal(self) -> bool:
        return self.e_orb_before == self.e_orb_after

    @property
    def e_st_equal(self) -> bool:
        return self.e_st_before == self.e_st_after

    @property
    def all_equal(self) -> bool:
        return self.hodge_equal and self.e_orb_equal and self.e_st_equal

    @property
    def precondition(self) -> bool:
        return self.quasi_sl and self.crepant

    def summary(self) -> str:
        return (
            f"face {self.spec.face.label()} lambda0={self.spec.lambda0} crepant={self.crepant}: "
            f"hodge {'equal' if self.hodge_equal else 'DIFFER'}, "
            f"E_orb {'equal' if self.e_orb_equal else 'DIFFER'}, "
            f"E_st {'equal' if self.e_st_equal else 'DIFFER'}"
        )


def verify_crepant_invariance(m: CharacteristicModel, spec: BlowupSpec) -> InvarianceReport:
    """Compare orbifold Hodge numbers, E_orb and E_st before and after the blowup.

    Precondition failures are recorded in the report rather than raised, so
    non-crepant blowups can be explored too.
    """
    notes = []
    qsl = is_quasi_sl(m)
    if not qsl:
        notes.append("model is not quasi-SL")
    if not spec.crepant:
        notes.append("blowup is not crepant")
    matches = any(c.lambda0 == spec.lambda0 for c in crepant_candidates(m, spec.face))
    if not matches:
        notes.append("spec does not match any crepant candidate")
    try:
        after = blow_up(m, spec)
    except (TruncationError, ModelError) as exc:
        raise ConstructionError(str(exc)) from exc
    return InvarianceReport(
        spec=spec,
        quasi_sl=qsl,
        crepant=spec.crepant,
        matches_candidate=matches,
        hodge_before=orbifold_hodge(m),
        hodge_after=orbifold_hodge(after),
        e_orb_before=e_orb(m),
        e_orb_after=e_orb(after),
        e_st_before=e_st(m),
        e_st_after=e_st(after),
        notes=notes,
    )
