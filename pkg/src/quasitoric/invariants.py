"""Polynomial invariants in the variable ``t = uv``.

Every invariant here is a finite sum over faces of the polytope; the
summands only need face lattices and box elements, never the orbifold
charts themselves.
"""
from __future__ import annotations

from typing import Union

from .model import CharacteristicModel, interior_box, local_group
from .polytope import Face, SimplePolytope
from .qpoly import HodgeTable, QExpPolynomial


class InvariantViolation(AssertionError):
    """Two routes to the same invariant disagree."""


PolytopeLike = Union[SimplePolytope, CharacteristicModel]


def _polytope(x: PolytopeLike) -> SimplePolytope:
    return x.polytope if isinstance(x, CharacteristicModel) else x


def e_quas(x: PolytopeLike, face: Face | None = None) -> QExpPolynomial:
    """``sum_{G <= F} (t-1)^{dim G}``; F defaults to the whole polytope.

    Only the face lattice enters, so the characteristic vectors are ignored.
    """
    p = _polytope(x)
    face = p.top if face is None else face
    counts: dict[int, int] = {}
    for g in p.subfaces(face):
        counts[g.dim] = counts.get(g.dim, 0) + 1
    total = QExpPolynomial()
    for k, c in counts.items():
        total = total + QExpPolynomial.t_minus_one_power(k) * c
    return total


def betti_numbers(x: PolytopeLike) -> list[int]:
    """Even Betti numbers ``b_0, b_2, ..., b_2n`` (odd ones vanish)."""
    return e_quas(x).coefficient_list()


def hodge_numbers(x: PolytopeLike, face: Face | None = None) -> HodgeTable:
    """Diagonal table with ``h^{p,p} = b_{2p}`` of X(F)."""
    return HodgeTable.diagonal(e_quas(x, face))


def w_tilde(m: CharacteristicModel, face: Face, method: str = "snf") -> QExpPolynomial:
    return QExpPolynomial((s.age, 1) for s in interior_box(m, face, method))


def w_poly(m: CharacteristicModel, face: Face, method: str = "snf") -> QExpPolynomial:
    return QExpPolynomial((s.age, 1) for s in local_group(m, face, method).elements)


def orbifold_hodge(m: CharacteristicModel, method: str = "snf") -> HodgeTable:
    """Hodge table of every sector ``(X(F), g)``, shifted by ``(age, age)``."""
    total = HodgeTable()
    for f in m.polytope.faces:
        inner = interior_box(m, f, method)
        if not inner:
            continue
        base = hodge_numbers(m, f)
        for s in inner:
            total = total + base.shift(s.age)
    return total


def e_orb_from_hodge(m: CharacteristicModel, method: str = "snf") -> QExpPolynomial:
    return orbifold_hodge(m, method).to_polynomial()


def e_orb_from_strata(m: CharacteristicModel, method: str = "snf") -> QExpPolynomial:
    """Product form: closed strata times the interior age polynomial."""
    total = QExpPolynomial()
    for f in m.polytope.faces:
        wt = w_tilde(m, f, method)
        if wt:
            total = total + e_quas(m, f) * wt
    return total


def e_orb(m: CharacteristicModel, method: str = "snf") -> QExpPolynomial:
    a = e_orb_from_hodge(m, method)
    b = e_orb_from_strata(m, method)
    if a != b:
        raise InvariantViolation(f"E_orb routes disagree: {a} (Hodge table) vs {b} (strata)")
    return a


def e_st(m: CharacteristicModel, method: str = "snf") -> QExpPolynomial:
    """Open strata ``(t-1)^{dim F}`` weighted by the full age polynomial of F."""
    total = QExpPolynomial()
    for f in m.polytope.faces:
        total = total + QExpPolynomial.t_minus_one_power(f.dim) * w_poly(m, f, method)
    return total


def stratified_w(m: CharacteristicModel, face: Face, method: str = "snf") -> QExpPolynomial:
    """``sum_{H >= F} w_tilde(H)``, to be compared against :func:`w_poly`."""
    total = QExpPolynomial()
    for h in m.polytope.superfaces(face):
        total = total + w_tilde(m, h, method)
    return total
