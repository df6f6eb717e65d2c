"""Exact invariants of quasitoric orbifolds: Betti and Hodge numbers,
twisted sectors, orbifold Hodge numbers, stringy E-polynomials, and
crepant blowups."""

from .blowup import (
    BlowupSpec,
    blow_down,
    blow_up,
    crepant_candidates,
    preserves_positive_omniorientation,
    preserves_quasi_sl,
    verify_crepant_invariance,
)
from .invariants import e_orb, e_quas, e_st, hodge_numbers, orbifold_hodge, w_poly, w_tilde
from .model import (
    CharacteristicModel,
    is_positively_omnioriented,
    is_quasi_sl,
    local_group,
    sectors,
    validate,
)
from .polytope import HalfSpace, SimplePolytope, betti_via_index, f_vector, truncate_face
from .qpoly import HodgeTable, QExpPolynomial

__version__ = "0.1.0"
