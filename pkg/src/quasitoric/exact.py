"""Exact integer and rational kernels.

Rationals are :class:`fractions.Fraction`; integer matrices are plain
row-major sequences of integer rows.  Everything here is arbitrary
precision and pure.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import NamedTuple, Sequence

Rat = Fraction
IntMat = Sequence[Sequence[int]]


class DimensionError(ValueError):
    pass


def rat(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction.

    Floats are refused: they would smuggle rounding into the data.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            if sep:
                n, d = int(num), int(den)
            else:
                n, d = int(text), 1
        except ValueError:
            raise ValueError(f"invalid rational {value!r}") from None
        if d == 0:
            raise ValueError(f"invalid rational {value!r}: zero denominator")
        return Fraction(n, d)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def columns(cols: Sequence[Sequence[int]]) -> list[list[int]]:
    """Build a matrix whose columns are the given vectors."""
    if not cols:
        raise DimensionError("need at least one column")
    n = len(cols[0])
    if any(len(c) != n for c in cols):
        raise DimensionError("columns of unequal length")
    return [[c[i] for c in cols] for i in range(n)]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: IntMat, b: IntMat) -> list[list]:
    if not a or not b or len(a[0]) != len(b):
        raise DimensionError("incompatible shapes for product")
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def det(m: IntMat) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise DimensionError("determinant needs a non-empty square matrix")
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_cofactor(m: IntMat):
    """Laplace expansion along the first row; a slow independent check."""
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise DimensionError("determinant needs a non-empty square matrix")
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in (list(r) for r in m[1:])]
        total += (-1) ** j * m[0][j] * det_cofactor(minor)
    return total


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve the square system ``a x = b`` over the rationals.

    Returns None when ``a`` is singular.
    """
    n = len(a)
    rows = [[Fraction(x) for x in a[i]] + [Fraction(b[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        pivot_row = [x / p for x in rows[col]]
        rows[col] = pivot_row
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], pivot_row)]
    return [rows[i][n] for i in range(n)]


def rank(m: Sequence[Sequence]) -> int:
    """Rank over the rationals."""
    rows = [[Fraction(x) for x in row] for row in m]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][col] != 0:
                f = rows[i][col] / rows[r][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


class SnfResult(NamedTuple):
    """Smith form ``u @ m @ v == diag(d)`` (zero padded)."""

    d: tuple[int, ...]
    u: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]


def snf(m: IntMat) -> SnfResult:
    """Smith normal form with unimodular transforms.

    ``d`` has ``min(rows, cols)`` entries, nonnegative, with each nonzero
    factor dividing the next.
    """
    nrows = len(m)
    if nrows == 0 or not m[0]:
        raise DimensionError("empty matrix")
    ncols = len(m[0])
    if any(len(row) != ncols for row in m):
        raise DimensionError("ragged matrix")
    a = [list(row) for row in m]
    u = identity(nrows)
    v = identity(ncols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        # row dst += f * row src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    for t in range(min(nrows, ncols)):
        while True:
            # smallest nonzero entry of the trailing block as pivot
            best = None
            for i in range(t, nrows):
                for j in range(t, ncols):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, ncols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    d = tuple(a[i][i] for i in range(min(nrows, ncols)))
    return SnfResult(d, tuple(map(tuple, u)), tuple(map(tuple, v)))


def primitivize(vec: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("cannot primitivize the zero vector")
    return tuple(x // g for x in vec)


def is_primitive(vec: Sequence[int]) -> bool:
    g = 0
    for x in vec:
        g = gcd(g, x)
    return g == 1
