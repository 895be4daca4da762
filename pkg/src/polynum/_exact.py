"""Small exact-rational helpers: binomials, ranks, determinants, affine charts."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import comb, factorial, gcd
from typing import Iterable, Sequence


def as_fraction(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return Fraction(int(value[0]), int(value[1]))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def gbinom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k) as a polynomial in n (n may be negative)."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k)
    # C(n, k) = (-1)^k C(k - n - 1, k)
    return (-1) ** k * comb(k - n - 1, k)


def simplex_number(k: int, m: int) -> int:
    """The k-simplex number alpha^k(m) = C(m - 1 + k, k).

    For m >= 1 this is the number of grid points of the (m-1)-fold dilated
    k-simplex.  For m <= 0 the polynomial continuation is returned, which is
    what decomposition identities need when they are evaluated at small n.
    """
    return gbinom(m - 1 + k, k)


def lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix by Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        for i in range(r + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [list(map(Fraction, r)) for r in matrix]
    n = len(m)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        pv = m[c][c]
        result *= pv
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return sign * result


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right nullspace of a rational matrix."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [a / pv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def affine_dim(points: Sequence[Sequence[Fraction]]) -> int:
    """Affine dimension of a point set (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    return rank(diffs) if diffs else 0


def affine_chart(points: Sequence[Sequence[Fraction]]) -> list[int]:
    """Coordinate indices onto which the affine hull of ``points`` projects bijectively."""
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    chosen: list[int] = []
    current = 0
    ncols = len(base)
    for c in range(ncols):
        trial = chosen + [c]
        r = rank([[row[j] for j in trial] for row in diffs]) if diffs else 0
        if r > current:
            chosen = trial
            current = r
    return chosen


def simplex_volume(points: Sequence[Sequence[Fraction]], chart: Sequence[int]) -> Fraction:
    """Volume of a full-dimensional simplex after projecting onto ``chart``."""
    base = points[0]
    rows = [[p[j] - base[j] for j in chart] for p in points[1:]]
    return abs(det(rows)) / factorial(len(rows))
