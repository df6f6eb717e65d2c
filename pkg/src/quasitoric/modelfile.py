"""JSON model files.

::

    {
      "name": "teardrop 2",
      "dim": 2,
      "facets": [
        {"normal": ["1", "0"], "offset": "0", "lambda": [1, 0]},
        ...
      ]
    }

Rationals are written as ``"p/q"`` strings (integers are accepted on
input).  List order fixes the facet numbering.
"""
from __future__ import annotations

import json
from pathlib import Path

from .exact import format_rat, rat
from .model import CharacteristicModel
from .polytope import HalfSpace, PolytopeError, SimplePolytope


class ModelFileError(ValueError):
    pass


def to_dict(m: CharacteristicModel) -> dict:
    facets = [
        {
            "normal": [format_rat(x) for x in h.normal],
            "offset": format_rat(h.offset),
            "lambda": list(lam),
        }
        for h, lam in zip(m.polytope.halfspaces, m.lambdas)
    ]
    out = {"dim": m.dim, "facets": facets}
    if m.name:
        out = {"name": m.name, **out}
    return out


def dumps(m: CharacteristicModel) -> str:
    return json.dumps(to_dict(m), indent=2) + "\n"


def _rat_field(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ModelFileError(f"{where}: expected an integer or rational string, got {value!r}")
    try:
        return rat(value)
    except (ValueError, TypeError) as exc:
        raise ModelFileError(f"{where}: {exc}") from None


def from_dict(data) -> CharacteristicModel:
    """Build a model; characteristic vectors are not validated here."""
    if not isinstance(data, dict):
        raise ModelFileError("top level must be an object")
    dim = data.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ModelFileError(f"dim: expected a positive integer, got {dim!r}")
    facets = data.get("facets")
    if not isinstance(facets, list) or not facets:
        raise ModelFileError("facets: expected a non-empty list")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ModelFileError("name: expected a string")
    halfspaces, lambdas = [], []
    for i, fct in enumerate(facets):
        where = f"facets[{i}]"
        if not isinstance(fct, dict):
            raise ModelFileError(f"{where}: expected an object")
        for key in ("normal", "offset", "lambda"):
            if key not in fct:
                raise ModelFileError(f"{where}: missing field {key!r}")
        normal = fct["normal"]
        if not isinstance(normal, list) or len(normal) != dim:
            raise ModelFileError(f"{where}.normal: expected a list of {dim} rationals")
        normal = tuple(_rat_field(x, f"{where}.normal[{j}]") for j, x in enumerate(normal))
        offset = _rat_field(fct["offset"], f"{where}.offset")
        lam = fct["lambda"]
        if not isinstance(lam, list) or len(lam) != dim:
            raise ModelFileError(f"{where}.lambda: expected a list of {dim} integers")
        for j, x in enumerate(lam):
            if isinstance(x, bool) or not isinstance(x, int):
                raise ModelFileError(f"{where}.lambda[{j}]: expected an integer, got {x!r}")
        try:
            halfspaces.append(HalfSpace(normal, offset))
        except PolytopeError as exc:
            raise ModelFileError(f"{where}: {exc}") from None
        lambdas.append(tuple(lam))
    try:
        poly = SimplePolytope(halfspaces, dim)
    except PolytopeError as exc:
        raise ModelFileError(f"facets: {exc}") from None
    return CharacteristicModel(poly, tuple(lambdas), name)


def loads(text: str) -> CharacteristicModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(data)


def load(path) -> CharacteristicModel:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFileError(f"{path}: {exc.strerror or exc}") from None
    try:
        return loads(text)
    except ModelFileError as exc:
        raise ModelFileError(f"{path}: {exc}") from None


def save(m: CharacteristicModel, path) -> None:
    Path(path).write_text(dumps(m), encoding="utf-8")
