"""Built-in example models."""
from __future__ import annotations

from .model import CharacteristicModel, model_from_vectors
from .polytope import cube as cube_polytope
from .polytope import simplex as simplex_polytope

MAX_DIM = 4
MAX_ORDER = 12


def _unit(n, i):
    return tuple(int(i == j) for j in range(n))


def simplex(n: int) -> CharacteristicModel:
    """CP^n: lambda = e_1, ..., e_n, -(e_1 + ... + e_n)."""
    _check_range("simplex", n, 1, MAX_DIM)
    lams = [_unit(n, i) for i in range(n)] + [tuple([-1] * n)]
    return model_from_vectors(simplex_polytope(n), lams, f"simplex {n}")


def cube(n: int) -> CharacteristicModel:
    """(CP^1)^n: facets x_i >= 0 get e_i, facets 1 - x_i >= 0 get -e_i."""
    _check_range("cube", n, 1, MAX_DIM)
    lams = [_unit(n, i) for i in range(n)] + [tuple(-x for x in _unit(n, i)) for i in range(n)]
    return model_from_vectors(cube_polytope(n), lams, f"cube {n}")


def cp2() -> CharacteristicModel:
    m = simplex(2)
    return CharacteristicModel(m.polytope, m.lambdas, "cp2")


def cp2cp2() -> CharacteristicModel:
    """Square with a characteristic function that no fan realizes."""
    return model_from_vectors(cube_polytope(2), [(1, 0), (0, 1), (-1, 1), (2, -1)], "cp2cp2")


def teardrop(d: int) -> CharacteristicModel:
    """Triangle with lambda_3 = (-1, -d): one corner of type 1/d(1,1).

    Quasi-SL only for d <= 2.
    """
    _check_range("teardrop", d, 1, MAX_ORDER)
    return model_from_vectors(simplex_polytope(2), [(1, 0), (0, 1), (-1, -d)], f"teardrop {d}")


def wp_corner(d: int) -> CharacteristicModel:
    """Triangle with lambda_3 = (1, d): one A_{d-1} corner at facets 1,3.

    Every box element there has age 1, so the model is quasi-SL with d - 1
    crepant candidates.
    """
    _check_range("wp-corner", d, 1, MAX_ORDER)
    return model_from_vectors(simplex_polytope(2), [(1, 0), (0, 1), (1, d)], f"wp-corner {d}")


def _check_range(kind, value, lo, hi):
    if not lo <= value <= hi:
        raise ValueError(f"{kind}: parameter must be in [{lo}, {hi}], got {value}")


GENERATORS = {
    "simplex": (simplex, True),
    "cube": (cube, True),
    "cp2": (cp2, False),
    "cp2cp2": (cp2cp2, False),
    "teardrop": (teardrop, True),
    "wp-corner": (wp_corner, True),
}


def generate(kind: str, param: int | None = None) -> CharacteristicModel:
    try:
        fn, takes = GENERATORS[kind]
    except KeyError:
        raise ValueError(f"unsupported kind {kind!r}; choose from {', '.join(GENERATORS)}") from None
    if takes:
        if param is None:
            raise ValueError(f"{kind} needs an integer parameter")
        return fn(param)
    if param is not None:
        raise ValueError(f"{kind} takes no parameter")
    return fn()
