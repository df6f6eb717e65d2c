import random
from fractions import Fraction

import pytest
from modelgen import polytope_corpus, random_truncation

from quasitoric.invariants import e_quas
from quasitoric.polytope import (
    GenericityError,
    HalfSpace,
    NotSimpleError,
    PerturbationError,
    PolytopeError,
    SimplePolytope,
    TruncationError,
    betti_via_index,
    combinatorially_equivalent,
    cube,
    default_eps,
    f_vector,
    face_lattice,
    generic_direction,
    is_generic,
    perturb_and_verify,
    product,
    simplex,
    truncate_face,
)

F = Fraction
CORPUS = polytope_corpus(seed=1, count=30)


@pytest.fixture
def square():
    return cube(2)


@pytest.fixture
def triangle():
    return simplex(2)


def test_vertex_counts(square, triangle):
    assert len(square.vertices) == 4
    assert len(triangle.vertices) == 3
    c = cube(3)
    assert len(c.vertices) == 8
    assert all(len(v.active) == 3 for v in c.vertices)


def test_square_vertices_exact(square):
    assert {v.coords for v in square.vertices} == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert all(isinstance(x, Fraction) for v in square.vertices for x in v.coords)


@pytest.mark.parametrize(
    "poly, count, fvec",
    [(simplex(2), 7, [3, 3, 1]), (cube(2), 9, [4, 4, 1]), (cube(3), 27, [8, 12, 6, 1])],
)
def test_face_lattice_and_f_vector(poly, count, fvec):
    assert len(face_lattice(poly)) == count
    assert f_vector(poly) == fvec


def test_faces_are_maximal(square):
    for f in square.faces:
        common = frozenset.intersection(*(square.vertices[i].active for i in f.vertex_ids))
        assert common == f.facet_set
    assert square.top.vertex_ids == frozenset(range(4))


def test_betti_square_indices(square):
    direction = (1, 2)
    heights = {v.coords: v.coords[0] + 2 * v.coords[1] for v in square.vertices}
    assert len(set(heights.values())) == 4
    assert betti_via_index(square, direction) == [1, 2, 1]


@pytest.mark.parametrize(
    "poly, direction, betti",
    [(simplex(2), (1, 2), [1, 1, 1]), (cube(3), (1, 2, 4), [1, 3, 3, 1])],
)
def test_betti_examples(poly, direction, betti):
    assert betti_via_index(poly, direction) == betti


def test_betti_rejects_non_generic(square):
    with pytest.raises(GenericityError):
        betti_via_index(square, (1, 1))


def test_generic_direction_fallback(square):
    d = generic_direction(square)
    assert d[0] == 1 and is_generic(square, d)


def test_default_eps_examples():
    tri = simplex(2)
    assert default_eps(tri, tri.face({0, 1})) == F(1, 2)
    sq = cube(2)
    origin = next(f for f in sq.vertex_faces() if sq.vertices[min(f.vertex_ids)].coords == (0, 0))
    assert default_eps(sq, origin) == F(1, 2)
    c = cube(3)
    assert default_eps(c, c.face({0, 1, 2})) == F(1, 2)


def test_truncate_triangle_corner(triangle):
    f = triangle.face({0, 2})
    q = truncate_face(triangle, f, default_eps(triangle, f))
    assert f_vector(q) == [4, 4, 1]
    assert q.num_facets == 4
    assert q.halfspaces[:3] == triangle.halfspaces


def test_truncate_cube_edge():
    c = cube(3)
    q = truncate_face(c, c.face({0, 1}))
    assert q.num_facets == 7
    assert f_vector(q) == [10, 15, 7, 1]


def test_truncate_rejects_facet_and_top(square):
    with pytest.raises(TruncationError):
        truncate_face(square, square.face({0}))
    with pytest.raises(TruncationError):
        truncate_face(square, square.top)


def test_truncate_rejects_large_eps(triangle):
    f = triangle.face({0, 1})
    with pytest.raises(TruncationError):
        truncate_face(triangle, f, F(1))
    with pytest.raises(TruncationError):
        truncate_face(triangle, f, F(0))


def test_perturb_examples(square, triangle):
    q = perturb_and_verify(square, F(1, 100), seed=3)
    assert q != square
    assert combinatorially_equivalent(square, q)
    assert perturb_and_verify(triangle, 0) is triangle


def test_perturb_huge_magnitude(triangle):
    try:
        q = perturb_and_verify(triangle, 10, seed=0)
    except PerturbationError:
        return
    assert combinatorially_equivalent(triangle, q)


def test_perturb_gives_up():
    with pytest.raises(PerturbationError):
        perturb_and_verify(simplex(2), 10**6, seed=0, retries=1)


def test_equivalence_examples(square, triangle):
    res = combinatorially_equivalent(triangle, square, [0, 1, 2])
    assert not res and "facet counts differ" in res.reason
    # relabel by a 4-cycle: facet i of p becomes facet sigma[i] of q
    sigma = [1, 2, 3, 0]
    hs = [None] * 4
    for i, h in enumerate(square.halfspaces):
        hs[sigma[i]] = h
    relabeled = SimplePolytope(hs)
    assert combinatorially_equivalent(square, relabeled, sigma)
    assert not combinatorially_equivalent(square, square, [1, 0, 2, 3])


def test_invalid_inputs():
    with pytest.raises(PolytopeError):
        SimplePolytope.from_rows([(0, 1, 0), (0, 0, 1)])  # too few
    with pytest.raises(PolytopeError):
        SimplePolytope.from_rows([(0, 1, 0), (0, 0, 1), (1, 1, -1)])  # unbounded wedge
    with pytest.raises(PolytopeError):
        SimplePolytope.from_rows([(0, 1, 0), (-1, -1, 0), (0, 0, 1)])  # empty
    with pytest.raises(PolytopeError):
        SimplePolytope.from_rows([(0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (2, -1, 0)])  # redundant
    pyramid = [(0, 0, 0, 1), (1, -1, 0, -1), (1, 1, 0, -1), (1, 0, -1, -1), (1, 0, 1, -1)]
    with pytest.raises(NotSimpleError):
        SimplePolytope.from_rows(pyramid)
    with pytest.raises(PolytopeError):
        HalfSpace((0, 0), 1)


def test_product_is_simple():
    p = product(simplex(2), cube(1))
    assert f_vector(p) == [6, 9, 5, 1]


@pytest.mark.parametrize("poly", CORPUS, ids=repr)
def test_direction_independence_and_duality(poly):
    rng = random.Random(poly.num_facets)
    expected = e_quas(poly).coefficient_list()
    seen = 0
    while seen < 5:
        d = tuple(rng.randint(-50, 50) for _ in range(poly.dim))
        if not is_generic(poly, d):
            continue
        seen += 1
        assert betti_via_index(poly, d) == expected
    n = poly.dim
    assert all(expected[k] == expected[n - k] for k in range(n + 1))
    assert sum(expected) == len(poly.vertices)


@pytest.mark.parametrize("poly", [p for p in CORPUS if p.dim >= 2][:20], ids=repr)
def test_truncation_properties(poly):
    rng = random.Random(7)
    v = rng.choice(poly.vertex_faces())
    q = truncate_face(poly, v)
    assert len(q.vertices) == len(poly.vertices) - 1 + poly.dim
    assert q.num_facets == poly.num_facets + 1
    assert all(len(f.facet_set) == q.dim - f.dim for f in q.faces)
    q2 = random_truncation(poly, rng)
    assert q2.num_facets == poly.num_facets + 1
    assert all(len(vx.active) == q2.dim for vx in q2.vertices)
