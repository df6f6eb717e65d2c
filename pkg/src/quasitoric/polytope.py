"""Simple rational polytopes given by half-spaces ``<normal, x> + offset >= 0``.

Facets are indexed from 0 internally, in half-space order.  Vertices and
the face lattice are derived once, at construction.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Sequence

from .exact import rat, solve


class PolytopeError(ValueError):
    """The half-spaces do not describe a valid simple polytope."""


class NotSimpleError(PolytopeError):
    pass


class GenericityError(ValueError):
    pass


class TruncationError(ValueError):
    pass


class PerturbationError(RuntimeError):
    pass


@dataclass(frozen=True)
class HalfSpace:
    normal: tuple[Fraction, ...]
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(rat(x) for x in self.normal))
        object.__setattr__(self, "offset", rat(self.offset))
        if not any(self.normal):
            raise PolytopeError("half-space normal must be nonzero")

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * b for a, b in zip(self.normal, x)), Fraction(0)) + self.offset


class Vertex(NamedTuple):
    coords: tuple[Fraction, ...]
    active: frozenset[int]


@dataclass(frozen=True)
class Face:
    facet_set: frozenset[int]
    dim: int
    vertex_ids: frozenset[int]

    def label(self) -> str:
        """1-based facet list as shown to users, e.g. ``"1,3"``; P is ``"P"``."""
        if not self.facet_set:
            return "P"
        return ",".join(str(i + 1) for i in sorted(self.facet_set))

    def sort_key(self):
        return (-self.dim, tuple(sorted(self.facet_set)))


def enumerate_vertices(halfspaces: Sequence[HalfSpace], n: int) -> list[Vertex]:
    """All vertices, by solving every n-subset of facet equations exactly.

    Raises NotSimpleError if some vertex lies on more than n facets and
    PolytopeError when the region is empty or unbounded.
    """
    m = len(halfspaces)
    if any(len(h.normal) != n for h in halfspaces):
        raise PolytopeError(f"all normals must have length {n}")
    if m < n + 1:
        raise PolytopeError(f"a bounded {n}-polytope needs at least {n + 1} half-spaces, got {m}")
    seen: dict[tuple[Fraction, ...], frozenset[int]] = {}
    for subset in combinations(range(m), n):
        a = [halfspaces[i].normal for i in subset]
        b = [-halfspaces[i].offset for i in subset]
        x = solve(a, b)
        if x is None:
            continue
        x = tuple(x)
        if x in seen:
            continue
        values = [h(x) for h in halfspaces]
        if any(v < 0 for v in values):
            continue
        seen[x] = frozenset(i for i, v in enumerate(values) if v == 0)
    if not seen:
        raise PolytopeError("feasible region has no vertices (empty or unbounded)")
    verts = [Vertex(x, act) for x, act in sorted(seen.items())]
    for v in verts:
        if len(v.active) != n:
            labels = ",".join(str(i + 1) for i in sorted(v.active))
            raise NotSimpleError(f"vertex {v.coords} lies on {len(v.active)} facets ({labels}); not simple")
    # Each (n-1)-subset of a simple vertex's active set spans an edge; a
    # missing second endpoint means that edge is a ray.
    for v in verts:
        for ridge in combinations(sorted(v.active), n - 1):
            r = frozenset(ridge)
            if not any(w is not v and r <= w.active for w in verts):
                raise PolytopeError("feasible region is unbounded")
    for i in range(m):
        if not any(i in v.active for v in verts):
            raise PolytopeError(f"half-space {i + 1} is redundant (supports no facet)")
    return verts


class SimplePolytope:
    """Bounded, full-dimensional simple polytope with irredundant facets."""

    def __init__(self, halfspaces: Iterable[HalfSpace], dim: int | None = None):
        hs = tuple(halfspaces)
        if not hs:
            raise PolytopeError("no half-spaces given")
        self.dim = len(hs[0].normal) if dim is None else dim
        self.halfspaces = hs
        self.vertices = tuple(enumerate_vertices(hs, self.dim))
        self.faces = tuple(_build_faces(self.vertices, self.dim))
        self._by_facets = {f.facet_set: f for f in self.faces}

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence]) -> "SimplePolytope":
        """Rows ``(offset, c_1, ..., c_n)`` meaning ``offset + sum c_i x_i >= 0``."""
        return cls(HalfSpace(tuple(r[1:]), r[0]) for r in rows)

    @property
    def num_facets(self) -> int:
        return len(self.halfspaces)

    def __eq__(self, other):
        return isinstance(other, SimplePolytope) and self.halfspaces == other.halfspaces

    def __hash__(self):
        return hash(self.halfspaces)

    def __repr__(self):
        return f"SimplePolytope(dim={self.dim}, facets={self.num_facets}, vertices={len(self.vertices)})"

    def face(self, facet_set: Iterable[int]) -> Face:
        key = frozenset(facet_set)
        try:
            return self._by_facets[key]
        except KeyError:
            labels = ",".join(str(i + 1) for i in sorted(key))
            raise KeyError(f"no face with facet set {{{labels}}}") from None

    def has_face(self, facet_set: Iterable[int]) -> bool:
        return frozenset(facet_set) in self._by_facets

    @property
    def top(self) -> Face:
        return self._by_facets[frozenset()]

    def faces_of_dim(self, k: int) -> list[Face]:
        return [f for f in self.faces if f.dim == k]

    def vertex_faces(self) -> list[Face]:
        return self.faces_of_dim(0)

    def subfaces(self, face: Face) -> list[Face]:
        """Faces G with G <= face (including face itself)."""
        return [g for g in self.faces if face.facet_set <= g.facet_set]

    def superfaces(self, face: Face) -> list[Face]:
        """Faces H with face <= H (including face itself and P)."""
        return [h for h in self.faces if h.facet_set <= face.facet_set]

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for f in self.faces_of_dim(1):
            a, b = sorted(f.vertex_ids)
            out.append((a, b))
        return out

    def lattice_signature(self) -> frozenset[frozenset[int]]:
        return frozenset(self._by_facets)


def _build_faces(vertices: Sequence[Vertex], n: int) -> list[Face]:
    found: dict[frozenset[int], Face] = {}
    for v in vertices:
        act = sorted(v.active)
        for k in range(n + 1):
            for sub in combinations(act, k):
                s = frozenset(sub)
                if s in found:
                    continue
                ids = frozenset(i for i, w in enumerate(vertices) if s <= w.active)
                common = frozenset.intersection(*(vertices[i].active for i in ids))
                if common != s:
                    raise NotSimpleError(f"facet set {sorted(s)} is not closed; polytope not simple")
                found[s] = Face(s, n - len(s), ids)
    faces = sorted(found.values(), key=Face.sort_key)
    for f in faces:
        if len(f.vertex_ids) < f.dim + 1:
            raise NotSimpleError("face with too few vertices for its dimension")
    return faces


def face_lattice(p: SimplePolytope) -> tuple[Face, ...]:
    return p.faces


def f_vector(p: SimplePolytope) -> list[int]:
    counts = [0] * (p.dim + 1)
    for f in p.faces:
        counts[f.dim] += 1
    return counts


def _height(direction, x) -> Fraction:
    return sum((a * b for a, b in zip(direction, x)), Fraction(0))


def is_generic(p: SimplePolytope, direction: Sequence) -> bool:
    hs = [_height(direction, v.coords) for v in p.vertices]
    return len(set(hs)) == len(hs)


def generic_direction(p: SimplePolytope) -> tuple[Fraction, ...]:
    """First generic direction in the sequence ``(1, B, B^2, ...)``, B = 1 + spread, spread + 1, ..."""
    coords = [v.coords for v in p.vertices]
    spread = max(max(c[i] for c in coords) - min(c[i] for c in coords) for i in range(p.dim))
    base = 1 + spread
    # only finitely many bases can fail: each vertex pair gives a nonzero polynomial in B
    while True:
        d = tuple(Fraction(base) ** k for k in range(p.dim))
        if is_generic(p, d):
            return d
        base += 1


def betti_via_index(p: SimplePolytope, direction: Sequence | None = None) -> list[int]:
    """Even Betti numbers ``(b_0, b_2, ..., b_2n)`` from incoming-edge counts.

    Edges are oriented toward increasing height ``<direction, x>``; the
    index of a vertex is its number of incoming edges.
    """
    if direction is None:
        direction = generic_direction(p)
    direction = tuple(rat(x) for x in direction)
    if len(direction) != p.dim:
        raise GenericityError(f"direction must have length {p.dim}")
    heights = [_height(direction, v.coords) for v in p.vertices]
    if len(set(heights)) != len(heights):
        raise GenericityError(f"direction {direction} does not separate vertices")
    incoming = [0] * len(p.vertices)
    for a, b in p.edges():
        incoming[b if heights[b] > heights[a] else a] += 1
    betti = [0] * (p.dim + 1)
    for k in incoming:
        betti[k] += 1
    return betti


def _face_sum(p: SimplePolytope, face: Face, x) -> Fraction:
    return sum((p.halfspaces[j](x) for j in face.facet_set), Fraction(0))


def _check_truncatable(p: SimplePolytope, face: Face) -> None:
    if not face.facet_set:
        raise TruncationError("cannot truncate the whole polytope")
    if len(face.facet_set) == 1:
        raise TruncationError(f"face {face.label()} is a facet; truncating a facet is not a blowup")
    if p._by_facets.get(face.facet_set) != face:
        raise TruncationError(f"face {face.label()} does not belong to this polytope")


def default_eps(p: SimplePolytope, face: Face) -> Fraction:
    """Half the least value of ``sum_{j in I(F)} p_j`` over vertices outside F."""
    _check_truncatable(p, face)
    values = [
        _face_sum(p, face, v.coords) for i, v in enumerate(p.vertices) if i not in face.vertex_ids
    ]
    return min(values) / 2


def truncate_face(p: SimplePolytope, face: Face, eps: Fraction | None = None) -> SimplePolytope:
    """Cut F off with ``sum_{j in I(F)} p_j - eps >= 0``, appended as the last facet."""
    _check_truncatable(p, face)
    eps = default_eps(p, face) if eps is None else rat(eps)
    if eps <= 0:
        raise TruncationError("eps must be positive")
    normal = [Fraction(0)] * p.dim
    offset = -eps
    for j in face.facet_set:
        h = p.halfspaces[j]
        normal = [a + b for a, b in zip(normal, h.normal)]
        offset += h.offset
    for i, v in enumerate(p.vertices):
        if i not in face.vertex_ids and _face_sum(p, face, v.coords) <= eps:
            raise TruncationError(f"eps={eps} is too large: it cuts vertex {v.coords} outside the face")
    try:
        q = SimplePolytope(p.halfspaces + (HalfSpace(tuple(normal), offset),), p.dim)
    except PolytopeError as exc:
        raise TruncationError(f"truncation with eps={eps} failed: {exc}") from exc
    kept = {v.coords for i, v in enumerate(p.vertices) if i not in face.vertex_ids}
    new_coords = {v.coords for v in q.vertices}
    if not kept <= new_coords or any(p.vertices[i].coords in new_coords for i in face.vertex_ids):
        raise TruncationError("truncation did not remove exactly the vertices of the face")
    return q


class Equivalence(NamedTuple):
    equivalent: bool
    reason: str = ""

    def __bool__(self):
        return self.equivalent


def combinatorially_equivalent(
    p: SimplePolytope, q: SimplePolytope, facet_bijection: Sequence[int] | Mapping[int, int] | None = None
) -> Equivalence:
    """Whether the facet bijection carries the face lattice of p onto that of q.

    ``facet_bijection[i]`` is the facet of q matched with facet i of p;
    None means the identity.
    """
    if p.dim != q.dim:
        return Equivalence(False, f"dimensions differ ({p.dim} vs {q.dim})")
    if p.num_facets != q.num_facets:
        return Equivalence(False, f"facet counts differ ({p.num_facets} vs {q.num_facets})")
    m = p.num_facets
    if facet_bijection is None:
        sigma = {i: i for i in range(m)}
    elif isinstance(facet_bijection, Mapping):
        sigma = dict(facet_bijection)
    else:
        sigma = dict(enumerate(facet_bijection))
    if sorted(sigma) != list(range(m)) or sorted(sigma.values()) != list(range(m)):
        return Equivalence(False, "facet map is not a bijection")
    image = frozenset(frozenset(sigma[i] for i in s) for s in p.lattice_signature())
    if image != q.lattice_signature():
        return Equivalence(False, "face lattices differ under the facet map")
    return Equivalence(True)


def perturb_and_verify(
    p: SimplePolytope, magnitude, seed: int | None = 0, retries: int = 20
) -> SimplePolytope:
    """Jiggle every half-space coefficient by a rational of size <= magnitude.

    The result is checked to be simple and combinatorially equivalent to p
    under the identity labelling; on failure the magnitude is halved.
    """
    magnitude = rat(magnitude)
    if magnitude < 0:
        raise ValueError("magnitude must be nonnegative")
    if magnitude == 0:
        return p
    rng = random.Random(seed)
    scale = 1000

    def jiggle(x):
        return x + magnitude * Fraction(rng.randint(-scale, scale), scale)

    for _ in range(retries):
        hs = []
        try:
            for h in p.halfspaces:
                hs.append(HalfSpace(tuple(jiggle(a) for a in h.normal), jiggle(h.offset)))
            q = SimplePolytope(hs, p.dim)
        except PolytopeError:
            q = None
        if q is not None and combinatorially_equivalent(p, q):
            return q
        magnitude /= 2
    raise PerturbationError(f"no combinatorially equivalent perturbation found after {retries} attempts")


# -- constructors -----------------------------------------------------------

def simplex(n: int) -> SimplePolytope:
    """Standard simplex: facets ``x_i >= 0`` then ``1 - sum x_i >= 0``."""
    hs = [HalfSpace(tuple(int(i == j) for j in range(n)), 0) for i in range(n)]
    hs.append(HalfSpace(tuple([-1] * n), 1))
    return SimplePolytope(hs, n)


def cube(n: int) -> SimplePolytope:
    """Unit cube: facets ``x_1..x_n >= 0`` then ``1 - x_1..1 - x_n >= 0``."""
    hs = [HalfSpace(tuple(int(i == j) for j in range(n)), 0) for i in range(n)]
    hs += [HalfSpace(tuple(-int(i == j) for j in range(n)), 1) for i in range(n)]
    return SimplePolytope(hs, n)


def product(p: SimplePolytope, q: SimplePolytope) -> SimplePolytope:
    """Cartesian product; facets of p come first, then those of q."""
    zp = (Fraction(0),) * p.dim
    zq = (Fraction(0),) * q.dim
    hs = [HalfSpace(h.normal + zq, h.offset) for h in p.halfspaces]
    hs += [HalfSpace(zp + h.normal, h.offset) for h in q.halfspaces]
    return SimplePolytope(hs, p.dim + q.dim)
