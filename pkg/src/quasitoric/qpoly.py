"""Sparse polynomials in ``t = uv`` with rational exponents, and Hodge tables."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .exact import format_rat, rat


class QExpPolynomial:
    """Finitely supported map exponent -> integer coefficient; zeros are dropped."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable[tuple] = ()):
        acc: dict[Fraction, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = rat(e)
            acc[e] = acc.get(e, 0) + int(c)
        self._terms = {e: c for e, c in acc.items() if c != 0}

    @classmethod
    def monomial(cls, exponent, coeff: int = 1) -> "QExpPolynomial":
        return cls({exponent: coeff})

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int]) -> "QExpPolynomial":
        """Integer-exponent polynomial from ``[c_0, c_1, ...]``."""
        return cls(enumerate(coeffs))

    @classmethod
    def t_minus_one_power(cls, k: int) -> "QExpPolynomial":
        from math import comb

        return cls((j, comb(k, j) * (-1) ** (k - j)) for j in range(k + 1))

    @property
    def terms(self) -> dict[Fraction, int]:
        return dict(self._terms)

    def coeff(self, exponent) -> int:
        return self._terms.get(rat(exponent), 0)

    def exponents(self) -> list[Fraction]:
        return sorted(self._terms)

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self._terms)

    def coefficient_list(self) -> list[int]:
        """Dense ``[c_0, ..., c_deg]``; only for integral-exponent polynomials."""
        if not self.is_integral():
            raise ValueError("polynomial has fractional exponents")
        if not self._terms:
            return []
        top = int(max(self._terms))
        return [self._terms.get(Fraction(k), 0) for k in range(top + 1)]

    def at_one(self) -> int:
        return sum(self._terms.values())

    def shift(self, exponent) -> "QExpPolynomial":
        s = rat(exponent)
        return QExpPolynomial((e + s, c) for e, c in self._terms.items())

    def __add__(self, other):
        if isinstance(other, int):
            other = QExpPolynomial({0: other})
        if not isinstance(other, QExpPolynomial):
            return NotImplemented
        return QExpPolynomial(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return QExpPolynomial((e, -c) for e, c in self._terms.items())

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return QExpPolynomial((e, c * other) for e, c in self._terms.items())
        if not isinstance(other, QExpPolynomial):
            return NotImplemented
        return QExpPolynomial(
            (e1 + e2, c1 * c2) for e1, c1 in self._terms.items() for e2, c2 in other._terms.items()
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = QExpPolynomial({0: other})
        return isinstance(other, QExpPolynomial) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"QExpPolynomial({self})"

    def __str__(self):
        """Descending exponents, e.g. ``t^2 + t^(4/3) + 3*t + 1``."""
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "t"
            elif e.denominator == 1:
                mono = f"t^{e.numerator}"
            else:
                mono = f"t^({format_rat(e)})"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


class HodgeTable:
    """Multiplicities ``h^{p,q}`` over rational bidegrees."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping | Iterable[tuple] = ()):
        acc: dict[tuple[Fraction, Fraction], int] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (p, q), h in items:
            key = (rat(p), rat(q))
            acc[key] = acc.get(key, 0) + int(h)
        self._entries = {k: v for k, v in acc.items() if v != 0}

    @classmethod
    def diagonal(cls, poly: QExpPolynomial) -> "HodgeTable":
        return cls(((e, e), c) for e, c in poly.terms.items())

    @property
    def entries(self) -> dict[tuple[Fraction, Fraction], int]:
        return dict(self._entries)

    def __getitem__(self, pq) -> int:
        p, q = pq
        return self._entries.get((rat(p), rat(q)), 0)

    def shift(self, s) -> "HodgeTable":
        s = rat(s)
        return HodgeTable(((p + s, q + s), h) for (p, q), h in self._entries.items())

    def __add__(self, other):
        if not isinstance(other, HodgeTable):
            return NotImplemented
        return HodgeTable(list(self._entries.items()) + list(other._entries.items()))

    def is_diagonal(self) -> bool:
        return all(p == q for p, q in self._entries)

    def is_integral(self) -> bool:
        return all(p.denominator == 1 and q.denominator == 1 for p, q in self._entries)

    def diagonal_list(self) -> list[int]:
        """``[h^{0,0}, h^{1,1}, ...]`` for an integral diagonal table."""
        if not (self.is_diagonal() and self.is_integral()):
            raise ValueError("table is not integral and diagonal")
        if not self._entries:
            return []
        top = int(max(p for p, _ in self._entries))
        return [self[k, k] for k in range(top + 1)]

    def to_polynomial(self) -> QExpPolynomial:
        """``sum h^{p,p} t^p``; the sign convention keeps every coefficient positive."""
        if not self.is_diagonal():
            raise ValueError("off-diagonal entries cannot be folded into t = uv")
        return QExpPolynomial((p, h) for (p, _), h in self._entries.items())

    def rows(self) -> list[tuple[Fraction, Fraction, int]]:
        return [(p, q, self._entries[p, q]) for p, q in sorted(self._entries)]

    def to_csv(self) -> str:
        lines = ["p,q,h"]
        lines += [f"{format_rat(p)},{format_rat(q)},{h}" for p, q, h in self.rows()]
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return isinstance(other, HodgeTable) and self._entries == other._entries

    def __hash__(self):
        return hash(frozenset(self._entries.items()))

    def __repr__(self):
        body = ", ".join(f"({format_rat(p)},{format_rat(q)}): {h}" for p, q, h in self.rows())
        return f"HodgeTable({{{body}}})"
