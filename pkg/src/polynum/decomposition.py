"""Decompositions of polytope numbers into shifted simplex numbers.

Five forms are supported, each a sum of terms ``coef * alpha^k(n - shift)``:

* ``T1``  sum_i a_i alpha^d(n - i), a from shelling classes
* ``T2``  sum_i (-1)^(d-i) b_i alpha^i(n), b counts interior apex simplexes
* ``T31`` sum_k c_k alpha^k(n - k), c counts apex simplexes
* ``T32`` grouped terms alpha^k(n - f) over interior apex simplexes
* ``T4``  sum_k d_k alpha^k(n - k - 1), d the f-vector of the triangulation

Simplex numbers are evaluated as polynomials, so every form is an identity
of polynomials in n and holds at n = 0 as well.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from ._exact import simplex_number
from .face_lattice import FaceLattice, Polytope, ids_of
from .triangulation import PointedTriangulation, ShellingOrder, triangulation_shelling

THEOREMS = ("T1", "T2", "T31", "T32", "T4")

SHIFT_RULES = {
    "T1": "a_i * alpha^d(n-i), i = 0..d-1",
    "T2": "(-1)^(d-i) * b_i * alpha^i(n), i = 1..d",
    "T31": "c_k * alpha^k(n-k), k = 0..d",
    "T32": "count * alpha^k(n-f) for each listed [count, k, f]",
    "T4": "d_k * alpha^k(n-k-1), k = 0..d",
}


@dataclass(frozen=True)
class DecompositionForm:
    theorem: str
    dim: int
    coeffs: tuple[int, ...]
    terms: tuple[tuple[int, int, int], ...]  # (coef, k, shift)

    @property
    def shift_rule(self) -> str:
        return SHIFT_RULES[self.theorem]

    def evaluate(self, n: int) -> int:
        return sum(c * simplex_number(k, n - s) for c, k, s in self.terms)

    def to_json(self, verified_range: Sequence[int] | None = None) -> dict:
        doc = {
            "theorem": self.theorem,
            "coeffs": list(self.coeffs),
            "shift_rule": self.shift_rule,
            "verified_range": list(verified_range) if verified_range is not None else None,
        }
        if self.theorem == "T32":
            doc["terms"] = [list(t) for t in self.terms]
        return doc

    def dumps(self, verified_range: Sequence[int] | None = None) -> str:
        return json.dumps(self.to_json(verified_range), separators=(",", ":"))


def _need_dim(d: int) -> None:
    if d < 1:
        raise ValueError("decompositions need a polytope of dimension >= 1")


def form_T1(a: Sequence[int]) -> DecompositionForm:
    d = len(a)
    _need_dim(d)
    return DecompositionForm("T1", d, tuple(a), tuple((c, d, i) for i, c in enumerate(a)))


def form_T2(b: Sequence[int]) -> DecompositionForm:
    d = len(b)
    _need_dim(d)
    terms = tuple(((-1) ** (d - i) * c, i, 0) for i, c in enumerate(b, start=1))
    return DecompositionForm("T2", d, tuple(b), terms)


def form_T31(c: Sequence[int]) -> DecompositionForm:
    d = len(c) - 1
    _need_dim(d)
    return DecompositionForm("T31", d, tuple(c), tuple((x, k, k) for k, x in enumerate(c)))


def form_T4(dk: Sequence[int]) -> DecompositionForm:
    d = len(dk) - 1
    _need_dim(d)
    return DecompositionForm("T4", d, tuple(dk), tuple((x, k, k + 1) for k, x in enumerate(dk)))


def form_T32(groups: dict[tuple[int, int], int], d: int) -> DecompositionForm:
    _need_dim(d)
    keys = sorted(groups)
    terms = tuple((groups[key], key[0], key[1]) for key in keys)
    return DecompositionForm("T32", d, tuple(groups[key] for key in keys), terms)


# Solves from values ---------------------------------------------------------------

def decompose_T1_solve(values: Sequence[int], d: int) -> DecompositionForm:
    """a_i = sum_j (-1)^j C(d+1, j) P(i+1-j) from P(1), ..., P(d)."""
    _need_dim(d)
    if len(values) != d:
        raise ValueError(f"need exactly {d} values P(1..{d}), got {len(values)}")
    a = [
        sum((-1) ** j * comb(d + 1, j) * values[i - j] for j in range(i + 1))
        for i in range(d)
    ]
    return form_T1(a)


def decompose_T31_solve(values: Sequence[int], d: int) -> DecompositionForm:
    """c_i = sum_j (-1)^(i-j) C(i, j) P(j+1) from P(1), ..., P(d+1)."""
    _need_dim(d)
    if len(values) != d + 1:
        raise ValueError(f"need exactly {d + 1} values P(1..{d + 1}), got {len(values)}")
    c = [
        sum((-1) ** (i - j) * comb(i, j) * values[j] for j in range(i + 1))
        for i in range(d + 1)
    ]
    return form_T31(c)


def decompose_T2_solve(values: Sequence[int], d: int) -> DecompositionForm:
    """Solve sum_i x_i alpha^i(n) = P(n), n = 1..d, exactly; b_i = (-1)^(d-i) x_i."""
    _need_dim(d)
    if len(values) != d:
        raise ValueError(f"need exactly {d} values P(1..{d}), got {len(values)}")
    rows = [
        [Fraction(simplex_number(i, n)) for i in range(1, d + 1)] + [Fraction(values[n - 1])]
        for n in range(1, d + 1)
    ]
    for col in range(d):
        pivot = next(r for r in range(col, d) if rows[r][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        pv = rows[col][col]
        rows[col] = [x / pv for x in rows[col]]
        for r in range(d):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    x = [rows[i][d] for i in range(d)]
    if any(v.denominator != 1 for v in x):
        raise ValueError(f"non-integral solution {x}")
    return form_T2([(-1) ** (d - i) * int(v) for i, v in enumerate(x, start=1)])


# Counting on a triangulation ------------------------------------------------------

def _apex_faces(T: PointedTriangulation) -> list[int]:
    bit = 1 << T.apex
    return [m for m in T.complex_faces if m & bit]


def _size(mask: int) -> int:
    return bin(mask).count("1")


def decompose_T1_shelling(
    T: PointedTriangulation, shelling: ShellingOrder | None = None
) -> DecompositionForm:
    """a_0 = 1 for the first simplex and a_i = #{j : l_j = i}."""
    d = T.dim
    _need_dim(d)
    if shelling is None:
        shelling = triangulation_shelling(T)
    counts = Counter(shelling.l_counts)
    width = max([d] + [l + 1 for l in counts])
    return form_T1([1] + [counts[i] for i in range(1, width)])


def decompose_T2(T: PointedTriangulation) -> DecompositionForm:
    d = T.dim
    _need_dim(d)
    b = [0] * d
    for m in _apex_faces(T):
        k = _size(m) - 1
        if k >= 1 and T.meets_interior(m):
            b[k - 1] += 1
    return form_T2(b)


def decompose_T31(T: PointedTriangulation) -> DecompositionForm:
    d = T.dim
    _need_dim(d)
    c = [0] * (d + 1)
    for m in _apex_faces(T):
        c[_size(m) - 1] += 1
    return form_T31(c)


def decompose_T32(T: PointedTriangulation) -> DecompositionForm:
    """alpha^0(n) for the apex plus alpha^k(n - f) per interior apex k-simplex,
    where f counts its facets that are themselves interior apex simplexes
    (the apex alone counting as one for edges)."""
    d = T.dim
    _need_dim(d)
    apex_bit = 1 << T.apex
    level = {apex_bit}
    for m in _apex_faces(T):
        if _size(m) >= 2 and T.meets_interior(m):
            level.add(m)
    groups: Counter = Counter({(0, 0): 1})
    for m in level:
        k = _size(m) - 1
        if k == 0:
            continue
        f = sum(1 for v in ids_of(m) if v != T.apex and m & ~(1 << v) in level)
        groups[(k, f)] += 1
    return form_T32(dict(groups), d)


def decompose_T4(T: PointedTriangulation) -> DecompositionForm:
    _need_dim(T.dim)
    return form_T4(T.f_vector())


# Conversion -------------------------------------------------------------------------

def convert_to_T1(form: DecompositionForm) -> DecompositionForm:
    """Rewrite any form in terms of alpha^d(n - j), j = 0..d-1.

    Uses alpha^k(m) = sum_j (-1)^j C(d-k, j) alpha^d(m - j), then folds shifts
    beyond d back with the vanishing (d+1)-th backward difference of alpha^d.
    """
    d = form.dim
    acc: Counter = Counter()
    for coef, k, shift in form.terms:
        for j in range(d - k + 1):
            acc[shift + j] += coef * (-1) ** j * comb(d - k, j)
    for t in sorted((t for t in acc if t > d), reverse=True):
        coef = acc.pop(t)
        if not coef:
            continue
        # alpha^d(n - t) = -(-1)^(d+1) sum_{j<=d} (-1)^j C(d+1, j) alpha^d(n - t + d + 1 - j)
        base = t - d - 1
        for j in range(d + 1):
            acc[base + j] -= coef * (-1) ** (d + 1) * (-1) ** j * comb(d + 1, j)
    if any(acc[t] for t in acc if t < 0):
        raise ValueError("negative shifts cannot be expressed in the T1 basis")
    if acc.get(d, 0) != 0:
        raise ValueError(f"form has a nonzero alpha^d(n-{d}) component {acc[d]}")
    return form_T1([acc.get(i, 0) for i in range(d)])


# Moebius function of a face poset ---------------------------------------------------

@dataclass
class PolytopalComplex:
    """Nonempty faces as vertex masks mapped to their dimensions."""

    faces: dict[int, int]

    @classmethod
    def from_triangulation(cls, T: PointedTriangulation) -> "PolytopalComplex":
        return cls({m: _size(m) - 1 for m in T.complex_faces})

    @classmethod
    def boundary_of(cls, lattice: FaceLattice) -> "PolytopalComplex":
        return cls({f.mask: f.dim for fid, f in enumerate(lattice) if 0 < fid < lattice.top})

    @classmethod
    def away_from_apex(cls, T: PointedTriangulation) -> "PolytopalComplex":
        bit = 1 << T.apex
        return cls({m: _size(m) - 1 for m in T.complex_faces if not m & bit})

    @property
    def dim(self) -> int:
        return max(self.faces.values(), default=-1)

    def boundary_faces(self) -> set[int]:
        """Faces lying on the boundary of the underlying space (pure complexes)."""
        d = self.dim
        tops = [m for m, k in self.faces.items() if k == d]
        ridges = [m for m, k in self.faces.items() if k == d - 1]
        free = [r for r in ridges if sum(1 for t in tops if t & r == r) == 1]
        return {m for m in self.faces if any(r & m == m for r in free)}


class FacePoset:
    """Faces of a complex plus a top element, ordered by inclusion."""

    TOP = -1

    def __init__(self, C: PolytopalComplex):
        self.complex = C
        self.elements = sorted(C.faces, key=lambda m: (C.faces[m], ids_of(m))) + [self.TOP]
        self._mu: dict[int, dict[int, int]] = {}

    def rank(self, x: int) -> int:
        return self.complex.dim + 1 if x == self.TOP else self.complex.faces[x]

    def leq(self, x: int, y: int) -> bool:
        if y == self.TOP:
            return True
        if x == self.TOP:
            return False
        return x & y == x

    def mu_from(self, x: int) -> dict[int, int]:
        """mu(x, y) for every y >= x, by the defining recursion."""
        hit = self._mu.get(x)
        if hit is not None:
            return hit
        above = [y for y in self.elements if self.leq(x, y)]
        mu: dict[int, int] = {}
        for y in above:  # elements are sorted by rank
            if y == x:
                mu[y] = 1
            else:
                mu[y] = -sum(v for z, v in mu.items() if self.leq(z, y))
        self._mu[x] = mu
        return mu

    def mu(self, x: int, y: int) -> int:
        return self.mu_from(x).get(y, 0)


@dataclass
class MoebiusReport:
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def moebius_check(
    C: PolytopalComplex, T: PointedTriangulation | None = None, n_max: int = 8
) -> MoebiusReport:
    """Check the sign/zero pattern of mu on the face poset of C.

    mu(F, top) is 0 for faces on the boundary of |C| and (-1)^(rank difference)
    otherwise; below the top every interval is Eulerian.  When a triangulation
    is given, additionally check that the Moebius expression for the complex of
    simplexes avoiding the apex sums to the polytope numbers.
    """
    poset = FacePoset(C)
    boundary = C.boundary_faces()
    report = MoebiusReport()
    for x in poset.elements[:-1]:
        for y, value in poset.mu_from(x).items():
            if y == FacePoset.TOP and x in boundary:
                expected = 0
            else:
                expected = (-1) ** (poset.rank(y) - poset.rank(x))
            report.checked += 1
            if value != expected:
                report.violations.append(
                    f"mu({ids_of(x)}, {'top' if y == FacePoset.TOP else ids_of(y)}) = {value}, expected {expected}"
                )
    if T is not None:
        from .numbers import NumberEngine

        away = FacePoset(PolytopalComplex.away_from_apex(T))
        engine = NumberEngine(T.polytope, T.apexes)
        top = T.top_face
        total = 0
        for n in range(1, n_max + 1):
            layer = -sum(
                away.mu(y, FacePoset.TOP) * simplex_number(away.rank(y), n)
                for y in away.elements[:-1]
            )
            total += layer
            report.checked += 1
            if total != engine.number(top, n):
                report.violations.append(
                    f"partial sum of the apex-free layer at n={n} is {total}, "
                    f"expected {engine.number(top, n)}"
                )
    return report


# Convenience ------------------------------------------------------------------------

def decompose(T: PointedTriangulation, theorem: str, method: str = "count") -> DecompositionForm:
    """Dispatch on a theorem tag; ``method='solve'`` uses values of the recurrence."""
    theorem = normalize_theorem(theorem)
    if method == "solve":
        from .numbers import NumberEngine

        engine = NumberEngine(T.polytope, T.apexes)
        d = T.dim
        values = [engine.number(T.top_face, n) for n in range(1, d + 2)]
        if theorem == "T1":
            return decompose_T1_solve(values[:d], d)
        if theorem == "T2":
            return decompose_T2_solve(values[:d], d)
        if theorem == "T31":
            return decompose_T31_solve(values, d)
        raise ValueError(f"no solve path for {theorem}")
    return {
        "T1": decompose_T1_shelling,
        "T2": decompose_T2,
        "T31": decompose_T31,
        "T32": decompose_T32,
        "T4": decompose_T4,
    }[theorem](T)


def normalize_theorem(tag: str) -> str:
    key = str(tag).upper().replace("-", "").replace("_", "")
    if not key.startswith("T"):
        key = "T" + key
    if key not in THEOREMS:
        raise ValueError(f"unknown theorem {tag!r}; expected one of 1, 2, 3-1, 3-2, 4")
    return key
