import random
from fractions import Fraction

import pytest
from modelgen import quasi_sl_corpus

from quasitoric import catalog
from quasitoric.blowup import (
    BlowupSpec,
    SpecError,
    all_crepant_candidates,
    blow_down,
    blow_up,
    crepant_candidates,
    is_blowdown_of,
    preserves_positive_omniorientation,
    preserves_quasi_sl,
    spec_from_coefficients,
    spec_from_vector,
    verify_crepant_invariance,
)
from quasitoric.exact import det, is_primitive
from quasitoric.invariants import e_orb, e_st, hodge_numbers, orbifold_hodge
from quasitoric.model import is_positively_omnioriented, is_quasi_sl, is_smooth, validate
from quasitoric.polytope import default_eps, f_vector

F = Fraction


def test_candidates_examples():
    tear = catalog.teardrop(2)
    cands = crepant_candidates(tear, tear.polytope.face({0, 2}))
    assert [(c.b, c.lambda0) for c in cands] == [((F(1, 2), F(1, 2)), (0, -1))]
    assert cands[0].crepant
    assert crepant_candidates(tear, tear.polytope.face({0, 1})) == []
    t3 = catalog.teardrop(3)
    assert crepant_candidates(t3, t3.polytope.face({0, 2})) == []
    assert crepant_candidates(tear, tear.polytope.face({0})) == []
    assert all_crepant_candidates(catalog.cp2()) == []


def test_teardrop_blowup_is_smooth():
    tear = catalog.teardrop(2)
    (spec,) = all_crepant_candidates(tear)
    out = blow_up(tear, spec)
    assert out.lambdas == ((1, 0), (0, 1), (-1, -2), (0, -1))
    assert out.polytope.halfspaces[:3] == tear.polytope.halfspaces
    dets = [abs(det(out.lambda_matrix(w))) for w in out.polytope.vertex_faces()]
    assert dets == [1, 1, 1, 1]
    assert is_smooth(out)
    assert hodge_numbers(out).diagonal_list() == [1, 2, 1]


def test_cp2_point_blowup():
    cp2 = catalog.cp2()
    w = cp2.polytope.face({0, 1})
    assert crepant_candidates(cp2, w) == []
    spec = spec_from_coefficients(cp2, w, [1, 1])
    assert spec.lambda0 == (1, 1) and not spec.crepant
    out = blow_up(cp2, spec)
    assert validate(out).ok
    assert f_vector(out.polytope) == [4, 4, 1]
    assert hodge_numbers(out).diagonal_list() == [1, 2, 1]


def test_non_primitive_lambda0():
    tear = catalog.teardrop(2)
    w = tear.polytope.face({0, 2})
    with pytest.raises(SpecError):
        blow_up(tear, BlowupSpec(w, (F(1), F(1)), (0, -2)))
    with pytest.raises(SpecError):
        spec_from_vector(tear, w, (0, -2))
    with pytest.raises(SpecError):
        spec_from_coefficients(tear, w, [1, 1])  # sum is (0, -2)


def test_spec_rejections():
    tear = catalog.teardrop(2)
    w = tear.polytope.face({0, 2})
    with pytest.raises(SpecError):
        spec_from_coefficients(tear, w, [F(1, 2)])
    with pytest.raises(SpecError):
        spec_from_coefficients(tear, w, [F(-1, 2), F(1, 2)])
    with pytest.raises(SpecError):
        spec_from_vector(tear, w, (1, 2))  # negative coefficients
    with pytest.raises(SpecError):
        spec_from_coefficients(tear, tear.polytope.face({0}), [1])


def test_from_vector_recovers_candidate():
    tear = catalog.teardrop(2)
    w = tear.polytope.face({0, 2})
    assert spec_from_vector(tear, w, (0, -1)) == crepant_candidates(tear, w)[0]


def test_invariance_report_teardrop():
    tear = catalog.teardrop(2)
    (spec,) = all_crepant_candidates(tear)
    rep = verify_crepant_invariance(tear, spec)
    assert rep.precondition and rep.matches_candidate and rep.all_equal
    assert rep.hodge_before.diagonal_list() == rep.hodge_after.diagonal_list() == [1, 2, 1]
    assert "hodge equal" in rep.summary()


def test_invariance_report_wrong_vector():
    tear = catalog.teardrop(2)
    w = tear.polytope.face({0, 2})
    spec = spec_from_vector(tear, w, (1, -1))
    assert spec.b == (F(3, 2), F(1, 2))
    assert not spec.crepant
    rep = verify_crepant_invariance(tear, spec)
    assert not rep.matches_candidate and not rep.precondition
    assert "spec does not match any crepant candidate" in rep.notes
    assert not rep.e_st_equal and not rep.hodge_equal


def test_lemma_checks():
    tear = catalog.teardrop(2)
    (spec,) = all_crepant_candidates(tear)
    assert preserves_quasi_sl(tear, spec) == (True, True, "")
    check = preserves_positive_omniorientation(tear, spec)
    assert check.applicable and check.holds
    t3 = catalog.teardrop(3)
    manual = spec_from_vector(t3, t3.polytope.face({0, 2}), (0, -1))
    assert not preserves_quasi_sl(t3, manual).applicable


def test_square_manual_vertex_blowup_stays_positive():
    sq = catalog.cube(2)
    assert is_positively_omnioriented(sq)
    w = sq.polytope.face({0, 1})
    spec = spec_from_coefficients(sq, w, [1, 1])
    check = preserves_positive_omniorientation(sq, spec)
    assert check.applicable and check.holds


def test_precondition_report_for_negative_model():
    m = catalog.teardrop(2).flip(0)
    assert not is_positively_omnioriented(m)
    (spec,) = all_crepant_candidates(m)
    assert not preserves_positive_omniorientation(m, spec).applicable


def test_blowdown_relation():
    tear = catalog.teardrop(2)
    (spec,) = all_crepant_candidates(tear)
    out = blow_up(tear, spec)
    assert is_blowdown_of(out, tear)
    assert blow_down(out).lambdas == tear.lambdas


CORPUS = quasi_sl_corpus(seed=21, count=20)


@pytest.mark.parametrize("m", CORPUS)
def test_crepant_blowup_properties(m):
    specs = all_crepant_candidates(m)
    assert specs
    rng = random.Random(0)
    for spec in rng.sample(specs, min(3, len(specs))):
        assert is_primitive(spec.lambda0)
        assert sum(spec.b) == 1 and all(0 < x < 1 for x in spec.b)
        out = blow_up(m, spec)
        p, q = m.polytope, out.polytope
        assert q.num_facets == p.num_facets + 1
        if spec.face.dim == 0:
            assert len(q.vertices) == len(p.vertices) - 1 + p.dim
        assert is_blowdown_of(out, m)
        rep = verify_crepant_invariance(m, spec)
        assert rep.all_equal, rep.summary()
        assert preserves_quasi_sl(m, spec)
        assert preserves_positive_omniorientation(m, spec)
        half = blow_up(m, spec.with_eps(default_eps(p, spec.face) / 2))
        assert orbifold_hodge(half) == orbifold_hodge(out)
        assert e_st(half) == e_st(out) and e_orb(half) == e_orb(out)
        assert is_quasi_sl(half) == is_quasi_sl(out)
