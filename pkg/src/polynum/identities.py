"""Classical counting identities used to cross-check decomposition coefficients.

Each closed form is paired with a brute-force enumeration at small sizes.
Descents are counted on words of step labels: position p is a descent when
the label at p is larger than the label at p + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial, prod
from typing import Iterator, Sequence

from ._exact import simplex_number
from .config import BudgetExceeded


@dataclass(frozen=True)
class DescentVector:
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def trimmed(self) -> tuple[int, ...]:
        c = list(self.counts)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        return tuple(c)

    def __getitem__(self, i: int) -> int:
        return self.counts[i] if 0 <= i < len(self.counts) else 0


def descents(word: Sequence[int]) -> int:
    return sum(1 for a, b in zip(word, word[1:]) if a > b)


def multiset_permutations(counts: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Distinct words with ``counts[j]`` copies of letter ``j + 1``."""
    remaining = list(counts)
    n = sum(remaining)
    word: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(word) == n:
            yield tuple(word)
            return
        for j, r in enumerate(remaining):
            if r:
                remaining[j] -= 1
                word.append(j + 1)
                yield from rec()
                word.pop()
                remaining[j] += 1

    return rec()


def _descent_histogram(words, width: int) -> DescentVector:
    counts = [0] * max(width, 1)
    for w in words:
        counts[descents(w)] += 1
    return DescentVector(tuple(counts))


# Eulerian numbers -----------------------------------------------------------------

@lru_cache(maxsize=None)
def eulerian(d: int, i: int) -> int:
    """Permutations of [d] with i descents, by the two-term recurrence."""
    if d < 0 or i < 0:
        raise ValueError(f"eulerian({d}, {i}) out of range")
    if d == 0:
        return 1 if i == 0 else 0
    if i > max(d - 1, 0):
        return 0
    left = eulerian(d - 1, i - 1) if i >= 1 else 0
    return (i + 1) * eulerian(d - 1, i) + (d - i) * left


def eulerian_enumerated(d: int) -> tuple[int, ...]:
    if d > 9:
        raise BudgetExceeded(f"enumerating S_{d} is too large")
    return _descent_histogram(permutations(range(1, d + 1)), d).counts


@lru_cache(maxsize=None)
def _gen_eulerian_dp(counts: tuple[int, ...], last: int) -> tuple[int, ...]:
    """Descent polynomial of words on the remaining letters, given the previous letter."""
    if not any(counts):
        return (1,)
    acc: list[int] = []
    for j, r in enumerate(counts):
        if not r:
            continue
        rest = counts[:j] + (r - 1,) + counts[j + 1:]
        tail = _gen_eulerian_dp(rest, j + 1)
        shift = 1 if last > j + 1 else 0
        if len(acc) < len(tail) + shift:
            acc.extend([0] * (len(tail) + shift - len(acc)))
        for k, v in enumerate(tail):
            acc[k + shift] += v
    return tuple(acc)


def generalized_eulerian_row(d_list: Sequence[int]) -> DescentVector:
    """Descent counts of permutations of the multiset {1^d1, ..., l^dl}."""
    if any(x < 0 for x in d_list):
        raise ValueError("multiplicities must be nonnegative")
    d = sum(d_list)
    row = list(_gen_eulerian_dp(tuple(d_list), 0))
    row += [0] * (max(d, 1) - len(row))
    return DescentVector(tuple(row))


def generalized_eulerian(d_list: Sequence[int], i: int) -> int:
    return generalized_eulerian_row(d_list)[i]


def generalized_eulerian_enumerated(d_list: Sequence[int]) -> DescentVector:
    if sum(d_list) > 12:
        raise BudgetExceeded("enumeration is limited to multisets of size 12")
    return _descent_histogram(multiset_permutations(d_list), max(sum(d_list), 1))


def worpitzky_check(d: int, n: int) -> bool:
    """sum_i <d, i> alpha^d(n - i) == n^d."""
    return sum(eulerian(d, i) * simplex_number(d, n - i) for i in range(d)) == n**d


# Stirling numbers -----------------------------------------------------------------

@lru_cache(maxsize=None)
def stirling2(d: int, r: int) -> int:
    if d < 0 or r < 0 or r > d:
        raise ValueError(f"stirling2({d}, {r}) out of range")
    if d == r:
        return 1
    if r == 0:
        return 0
    return r * stirling2(d - 1, r) + (stirling2(d - 1, r - 1) if r >= 1 else 0)


def set_partitions_count(d: int, r: int) -> int:
    """Partitions of a d-set into r blocks, by enumerating restricted growth strings."""
    if d > 10:
        raise BudgetExceeded("set partition enumeration is limited to d <= 10")
    count = 0

    def rec(pos: int, blocks: int) -> None:
        nonlocal count
        if pos == d:
            count += blocks == r
            return
        for b in range(min(blocks + 1, r)):
            rec(pos + 1, max(blocks, b + 1))

    rec(0, 0)
    return count


def stirling_descent_identity_check(d: int, r: int) -> bool:
    """r! S(d, r) == sum_i <d, i> C(i, d - r), i over all descent numbers."""
    lhs = factorial(r) * stirling2(d, r)
    rhs = sum(eulerian(d, i) * comb(i, d - r) for i in range(d))
    return lhs == rhs


# Narayana, MacMahon, plane partitions -----------------------------------------------

def narayana(d1: int, k: int) -> int:
    if not 1 <= k <= d1:
        raise ValueError(f"narayana({d1}, {k}) out of range")
    value = Fraction(comb(d1, k) * comb(d1, k - 1), d1)
    assert value.denominator == 1
    return int(value)


def macmahon_box(a: int, b: int, c: int) -> int:
    """Plane partitions in an a x b x c box by the triple product."""
    if min(a, b, c) < 0:
        raise ValueError("box sides must be nonnegative")
    value = Fraction(1)
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            for k in range(1, c + 1):
                value *= Fraction(i + j + k - 1, i + j + k - 2)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral box count {value}")
    return int(value)


def _weak_rows(length: int, bounds: Sequence[int]) -> list[tuple[int, ...]]:
    """Weakly decreasing rows with entry p at most bounds[p]."""
    out: list[tuple[int, ...]] = []

    def rec(row: list[int]) -> None:
        if len(row) == length:
            out.append(tuple(row))
            return
        cap = bounds[len(row)]
        if row:
            cap = min(cap, row[-1])
        for v in range(cap + 1):
            row.append(v)
            rec(row)
            row.pop()

    rec([])
    return out


def count_plane_arrays(rows: int, bounds: Sequence[int]) -> int:
    """Arrays with ``rows`` rows, weakly decreasing along rows and down columns,
    entries of column p in [0, bounds[p]]."""
    shapes = _weak_rows(len(bounds), bounds)
    ways = {s: 1 for s in shapes}
    for _ in range(rows - 1):
        ways = {
            s: sum(w for t, w in ways.items() if all(x <= y for x, y in zip(s, t)))
            for s in shapes
        }
    return sum(ways.values()) if rows > 0 else 1


def plane_partition_oracle(a: int, b: int, c: int) -> int:
    """Brute-force count of b x a arrays, weakly decreasing in rows and
    columns, with entries in [0, c]."""
    if a * b > 9 or c > 6:
        raise BudgetExceeded("plane partition oracle limited to a*b <= 9, c <= 6")
    if a == 0 or b == 0:
        return 1
    rows = _weak_rows(a, [c] * a)

    def rec(prev: tuple[int, ...] | None, depth: int) -> int:
        if depth == b:
            return 1
        return sum(
            rec(r, depth + 1)
            for r in rows
            if prev is None or all(x <= y for x, y in zip(r, prev))
        )

    return rec(None, 0)


# Young tableaux ---------------------------------------------------------------------

def young_tableaux_count(l: int, m: int) -> int:
    """Standard tableaux of the l x m rectangle by the hook length formula."""
    if l < 1 or m < 1:
        raise ValueError("rectangle sides must be positive")
    hooks = prod((l - i) + (m - j) - 1 for i in range(l) for j in range(m))
    return factorial(l * m) // hooks


def young_tableaux_enumerated(l: int, m: int) -> int:
    """Count l x m arrays of 1..lm strictly decreasing along rows and columns."""
    if l * m > 12:
        raise BudgetExceeded("tableau enumeration limited to l*m <= 12")
    return sum(1 for _ in yamanouchi_words(l, m))


def yamanouchi_words(l: int, m: int) -> Iterator[tuple[int, ...]]:
    """Row sequences that fill an l x m rectangle one box at a time."""
    filled = [0] * l
    word: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(word) == l * m:
            yield tuple(word)
            return
        for r in range(l):
            if filled[r] < m and (r == 0 or filled[r - 1] > filled[r]):
                filled[r] += 1
                word.append(r + 1)
                yield from rec()
                word.pop()
                filled[r] -= 1

    return rec()


def tableau_of_word(word: Sequence[int], l: int, m: int) -> list[list[int]]:
    """The decreasing-entry tableau: box filled at step t gets entry lm + 1 - t."""
    grid = [[0] * m for _ in range(l)]
    filled = [0] * l
    total = l * m
    for t, r in enumerate(word, start=1):
        grid[r - 1][filled[r - 1]] = total + 1 - t
        filled[r - 1] += 1
    return grid


# Descent-vector closed forms --------------------------------------------------------

def _t1_from_values(values: Sequence[int], d: int) -> tuple[int, ...]:
    """a_i = sum_{j=0..i} (-1)^j C(d+1, j) values[i-j], i = 0..d-1."""
    return tuple(
        sum((-1) ** j * comb(d + 1, j) * values[i - j] for j in range(i + 1))
        for i in range(d)
    )


def lattice_path_closed_form(d_list: Sequence[int]) -> DescentVector:
    d = sum(d_list)
    values = [prod(simplex_number(k, i + 1) for k in d_list) for i in range(d)]
    return DescentVector(_t1_from_values(values, d) if d else (1,))


def lattice_path_coeffs(d_list: Sequence[int]) -> DescentVector:
    """Descent counts of monotone lattice paths to (d1, ..., dl); the closed
    form is computed alongside and must agree."""
    closed = lattice_path_closed_form(d_list)
    if sum(d_list) <= 12:
        enumerated = generalized_eulerian_enumerated(d_list)
    else:
        enumerated = generalized_eulerian_row(d_list)
    if enumerated.trimmed() != closed.trimmed():
        raise AssertionError(f"closed form {closed.counts} != enumeration {enumerated.counts}")
    return enumerated


def ballot_words(d1: int, d2: int) -> Iterator[tuple[int, ...]]:
    """Step words (1 = east, 2 = north) of paths to (d1, d2) with x1 >= x2 throughout."""
    for w in multiset_permutations((d1, d2)):
        x = y = 0
        ok = True
        for s in w:
            if s == 1:
                x += 1
            else:
                y += 1
                if y > x:
                    ok = False
                    break
        if ok:
            yield w


def ballot_path_coeffs(d1: int, d2: int) -> DescentVector:
    if d2 > d1 or d2 < 0:
        raise ValueError("ballot paths need 0 <= d2 <= d1")
    if d1 + d2 > 14:
        raise BudgetExceeded("ballot path enumeration limited to d1 + d2 <= 14")
    return _descent_histogram(ballot_words(d1, d2), max(d1 + d2, 1))


def ballot_closed_form(d1: int, d2: int) -> DescentVector:
    """a_i = sum_j (-1)^j C(d+1, j) P(i-j, 2, d1) with P the box count."""
    d = d1 + d2
    values = [macmahon_box(i, 2, d1) for i in range(d)]
    return DescentVector(_t1_from_values(values, d) if d else (1,))


def ballot_closed_form_general(d1: int, d2: int) -> DescentVector:
    """Same transform applied to the column-bounded counts: (i x 2) arrays with
    first column at most d1 and second column at most d2."""
    d = d1 + d2
    values = [count_plane_arrays(i, [d1, d2]) for i in range(d)]
    return DescentVector(_t1_from_values(values, d) if d else (1,))


def young_poly_coeffs(l: int, m: int) -> DescentVector:
    if l * m > 12:
        raise BudgetExceeded("tableau enumeration limited to l*m <= 12")
    return _descent_histogram(yamanouchi_words(l, m), l * m)


def young_closed_form(l: int, m: int) -> DescentVector:
    """a_i = sum_j (-1)^j C(lm+1, j) P(i-j, l, m)."""
    d = l * m
    values = [macmahon_box(i, l, m) for i in range(d)]
    return DescentVector(_t1_from_values(values, d))
