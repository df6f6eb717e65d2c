"""Characteristic models ``(P, lambda)``: local groups, box elements, sectors."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import lcm, prod
from typing import Iterable, Sequence

from .exact import columns, det, is_primitive, rank, snf, solve
from .polytope import Face, SimplePolytope


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class CharacteristicModel:
    """A simple polytope with one integer characteristic vector per facet.

    The stored signs of the vectors are the omniorientation.
    """

    polytope: SimplePolytope
    lambdas: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(tuple(int(x) for x in v) for v in self.lambdas))

    @property
    def dim(self) -> int:
        return self.polytope.dim

    def lambda_matrix(self, face: Face) -> list[list[int]]:
        """``n x k`` matrix with columns lambda_j, j in I(F) ascending."""
        return columns([self.lambdas[j] for j in sorted(face.facet_set)])

    def check(self) -> "CharacteristicModel":
        report = validate(self)
        if not report.ok:
            raise ModelError("; ".join(report.violations))
        return self

    def flip(self, facet: int) -> "CharacteristicModel":
        """Reverse the sign of one characteristic vector (a re-omniorientation)."""
        lams = list(self.lambdas)
        lams[facet] = tuple(-x for x in lams[facet])
        return CharacteristicModel(self.polytope, tuple(lams), self.name)


@dataclass
class ValidationReport:
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate(m: CharacteristicModel) -> ValidationReport:
    """Primitivity of every vector and independence on every face."""
    p = m.polytope
    out = []
    if len(m.lambdas) != p.num_facets:
        return ValidationReport([f"expected {p.num_facets} characteristic vectors, got {len(m.lambdas)}"])
    for i, v in enumerate(m.lambdas):
        if len(v) != p.dim:
            out.append(f"facet {i + 1}: vector {v} has length {len(v)}, expected {p.dim}")
        elif not any(v):
            out.append(f"facet {i + 1}: characteristic vector is zero")
        elif not is_primitive(v):
            out.append(f"facet {i + 1}: characteristic vector {v} is not primitive")
    if any(len(v) != p.dim for v in m.lambdas):
        return ValidationReport(out)
    for f in p.faces:
        if len(f.facet_set) < 2:
            continue
        if rank(m.lambda_matrix(f)) != len(f.facet_set):
            out.append(f"face {{{f.label()}}}: characteristic vectors are linearly dependent")
    return ValidationReport(out)


@dataclass(frozen=True)
class TwistedSector:
    """A face together with one element of its box.

    ``a`` is indexed by ``facets`` (the face's facet set, ascending).
    """

    face: Face
    facets: tuple[int, ...]
    a: tuple[Fraction, ...]
    g: tuple[int, ...]

    @property
    def age(self) -> Fraction:
        return sum(self.a, Fraction(0))

    @property
    def height(self) -> int:
        return sum(1 for x in self.a if x)

    @property
    def interior(self) -> bool:
        return all(self.a)

    def support(self) -> frozenset[int]:
        """Facets with nonzero coefficient: the facet set of the face where it is interior."""
        return frozenset(j for j, x in zip(self.facets, self.a) if x)

    def sort_key(self):
        return (self.face.sort_key(), self.a)


@dataclass(frozen=True)
class LocalGroup:
    face: Face
    order: int
    elements: tuple[TwistedSector, ...]

    def interior(self) -> list[TwistedSector]:
        return [e for e in self.elements if e.interior]


def _frac_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def _make_sector(m: CharacteristicModel, face: Face, facets, a) -> TwistedSector:
    g = []
    for i in range(m.dim):
        s = sum((aj * m.lambdas[j][i] for j, aj in zip(facets, a)), Fraction(0))
        if s.denominator != 1:
            raise ArithmeticError(f"box element {a} at face {face.label()} is not integral")
        g.append(s.numerator)
    return TwistedSector(face, tuple(facets), tuple(a), tuple(g))


def box_order(cols: Sequence[Sequence[int]]) -> int:
    """``|G_F|`` as the product of the Smith invariant factors."""
    d = snf(columns(cols)).d
    if any(x == 0 for x in d):
        raise ModelError("characteristic vectors are dependent")
    return prod(d)


def box_snf(cols: Sequence[Sequence[int]]) -> list[tuple[Fraction, ...]]:
    """Box coefficients from the dual lattice ``V diag(1/d) Z^k`` of the Smith form."""
    d, _, v = snf(columns(cols))
    if any(x == 0 for x in d):
        raise ModelError("characteristic vectors are dependent")
    k = len(cols)
    out = []
    for c in product(*(range(x) for x in d)):
        out.append(tuple(
            _frac_part(sum((Fraction(v[r][i] * c[i], d[i]) for i in range(k)), Fraction(0)))
            for r in range(k)
        ))
    return out


def box_scan(cols: Sequence[Sequence[int]]) -> list[tuple[Fraction, ...]]:
    """Brute-force box: scan the grid ``(1/D) Z^k`` in the unit cube.

    D is the smallest nonzero ``k x k`` minor of the matrix, so every
    admissible coefficient vector lies on the grid by Cramer's rule.
    """
    lam = columns(cols)
    n, k = len(lam), len(cols)
    minors = [abs(det([lam[r] for r in rows])) for rows in combinations(range(n), k)]
    if not any(minors):
        raise ModelError("characteristic vectors are dependent")
    dd = min(x for x in minors if x)
    out = []
    for c in product(range(dd), repeat=k):
        if all(sum(lam[r][j] * c[j] for j in range(k)) % dd == 0 for r in range(n)):
            out.append(tuple(Fraction(x, dd) for x in c))
    return out


def local_group(m: CharacteristicModel, face: Face, method: str = "snf") -> LocalGroup:
    """``Box_F``: all ``a in [0,1)^k`` with ``sum a_j lambda_j`` integral.

    ``method`` is ``"snf"`` (dual lattice from the Smith form) or ``"scan"``
    (grid oracle).
    """
    key = ("local_group", face.facet_set, method)
    if key in m._cache:
        return m._cache[key]
    facets = tuple(sorted(face.facet_set))
    if not facets:
        elems = [TwistedSector(face, (), (), (0,) * m.dim)]
        order = 1
    elif method in ("snf", "scan"):
        cols = [m.lambdas[j] for j in facets]
        try:
            coords = box_snf(cols) if method == "snf" else box_scan(cols)
        except ModelError:
            raise ModelError(f"face {{{face.label()}}}: characteristic vectors are dependent") from None
        elems = [_make_sector(m, face, facets, a) for a in coords]
        order = len(set(coords))
        if method == "snf" and order != len(coords):
            raise ArithmeticError(f"box enumeration at {face.label()} produced duplicate cosets")
    else:
        raise ValueError(f"unknown box method {method!r}")
    group = LocalGroup(face, order, tuple(sorted(elems, key=lambda s: s.a)))
    m._cache[key] = group
    return group


def interior_box(m: CharacteristicModel, face: Face, method: str = "snf") -> list[TwistedSector]:
    """``Box_F^o``; for F = P this is the single zero element."""
    return local_group(m, face, method).interior()


def sectors(m: CharacteristicModel, method: str = "snf") -> list[TwistedSector]:
    """Untwisted sector plus every interior box element of every proper face."""
    out = []
    for f in m.polytope.faces:
        out.extend(interior_box(m, f, method))
    return sorted(out, key=TwistedSector.sort_key)


def twisted_sectors(m: CharacteristicModel, method: str = "snf") -> list[TwistedSector]:
    return [s for s in sectors(m, method) if s.face.facet_set]


def is_quasi_sl(m: CharacteristicModel, method: str = "snf") -> bool:
    return all(s.age.denominator == 1 for s in sectors(m, method))


def is_smooth(m: CharacteristicModel) -> bool:
    return all(abs(det(m.lambda_matrix(w))) == 1 for w in m.polytope.vertex_faces())


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def vertex_sign(m: CharacteristicModel, vertex: Face) -> int:
    """Sign of det(lambda_w) relative to the polytope's orientation at w.

    Both lambda_w and the matrix of inward facet normals at w are taken with
    columns in ascending facet order, so the product of their determinant
    signs does not depend on how facets are numbered.
    """
    facets = sorted(vertex.facet_set)
    scaled = []
    for j in facets:
        nv = m.polytope.halfspaces[j].normal
        den = lcm(*(x.denominator for x in nv))
        scaled.append([int(x * den) for x in nv])
    return _sign(det(m.lambda_matrix(vertex))) * _sign(det(columns(scaled)))


def is_positively_omnioriented(m: CharacteristicModel, polytope_orientation: int = 1) -> bool:
    """Every vertex has det(lambda_w) of the sign fixed by the chosen orientation."""
    if polytope_orientation not in (1, -1):
        raise ValueError("polytope_orientation must be +1 or -1")
    return all(vertex_sign(m, w) == polytope_orientation for w in m.polytope.vertex_faces())


def gorenstein_functional(m: CharacteristicModel, vertex: Face) -> tuple[Fraction, ...]:
    """The rational functional taking the value 1 on every lambda_i at a vertex."""
    facets = sorted(vertex.facet_set)
    rows = [list(m.lambdas[j]) for j in facets]
    sol = solve(rows, [Fraction(1)] * len(facets))
    if sol is None:
        raise ModelError(f"vertex {vertex.label()}: singular characteristic matrix")
    return tuple(sol)


def model_from_vectors(p: SimplePolytope, lambdas: Iterable[Sequence[int]], name: str = "") -> CharacteristicModel:
    return CharacteristicModel(p, tuple(tuple(v) for v in lambdas), name).check()
