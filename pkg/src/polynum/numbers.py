"""Polytope numbers by recurrence, by vertex sums and by simplex grids.

All three descriptions are implemented independently so they can be checked
against each other.  Point sets are compared exactly: coordinates are scaled
to integers and packed into one Python int per point.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._exact import lcm
from .config import check_budget, current_budget
from .face_lattice import Polytope, product
from .triangulation import (
    ApexAssignment,
    GenericFunctional,
    PointedTriangulation,
    assign_apexes,
    build_triangulation,
)


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")


class NumberEngine:
    """The recurrence for one polytope and apex choice, tabulated by layers.

    Layer n holds P_F(n) and P_F(n)^# for every face F; faces are visited in
    order of dimension so each layer only needs itself and the one below.
    """

    def __init__(self, P: Polytope, A: ApexAssignment | None = None):
        self.P = P
        self.A = A if A is not None else assign_apexes(P)
        lattice = P.lattice
        sub = lattice.subfaces
        self._dims = [f.dim for f in lattice]
        # faces G of F with the apex of F outside G
        self._avoid = [
            tuple(g for g in sub[f] if self.A[f] not in lattice[g]) if f else ()
            for f in range(len(lattice))
        ]
        self._proper = [tuple(g for g in sub[f] if g != f) if f else () for f in range(len(lattice))]
        size = len(lattice)
        self._number = [[0] * size, [0] + [1] * (size - 1)]
        self._interior = [[0] * size, [1 if k == 0 else 0 for k in self._dims]]

    def _extend(self, n: int) -> None:
        order = range(1, len(self._dims))
        while len(self._number) <= n:
            prev = self._number[-1]
            num = [0] * len(prev)
            inner = [0] * len(prev)
            get = inner.__getitem__
            for f in order:
                num[f] = prev[f] + sum(map(get, self._avoid[f]))
                inner[f] = num[f] - sum(map(get, self._proper[f]))
            self._number.append(num)
            self._interior.append(inner)

    def number(self, fid: int, n: int) -> int:
        _check_n(n)
        self._extend(n)
        return self._number[n][fid]

    def interior(self, fid: int, n: int) -> int:
        _check_n(n)
        self._extend(n)
        return self._interior[n][fid]

    def sequence(self, n_max: int, fid: int | None = None) -> list[int]:
        f = self.P.lattice.top if fid is None else fid
        return [self.number(f, n) for n in range(n_max + 1)]

    def interior_sequence(self, n_max: int, fid: int | None = None) -> list[int]:
        f = self.P.lattice.top if fid is None else fid
        return [self.interior(f, n) for n in range(n_max + 1)]


def poly_number(P: Polytope, A: ApexAssignment | None, n: int) -> int:
    return NumberEngine(P, A).number(P.lattice.top, n)


def interior_number(P: Polytope, A: ApexAssignment | None, n: int) -> int:
    return NumberEngine(P, A).interior(P.lattice.top, n)


# Exact point packing ------------------------------------------------------------

class _Packer:
    """Packs integer-scaled points into ints so that sums of points map to sums."""

    def __init__(self, coords: Sequence[Sequence[Fraction]], max_terms: int):
        self.scale = lcm(x.denominator for p in coords for x in p)
        scaled = [[int(x * self.scale) for x in p] for p in coords]
        bound = max((abs(x) for p in scaled for x in p), default=0)
        self.base = 2 * max(max_terms, 1) * bound + 1
        self.codes = [self.pack(p) for p in scaled]

    def pack(self, ints: Sequence[int]) -> int:
        return sum(x * self.base**j for j, x in enumerate(ints))


def vertex_description_sets(
    P: Polytope, A: ApexAssignment | None, n: int
) -> tuple[set[int], set[int]]:
    """(T_P(n), T_P(n) minus the proper-face sets) as packed point sets."""
    _check_n(n)
    check_budget(n, current_budget().max_n, "n")
    A = A if A is not None else assign_apexes(P)
    if n == 0:
        return set(), set()
    lattice = P.lattice
    packer = _Packer(P.coords, n)
    sub = lattice.subfaces
    memo: dict[tuple[int, int], frozenset[int]] = {}

    def T(fid: int, m: int) -> frozenset[int]:
        if m == 1:
            return frozenset((0,))
        key = (fid, m)
        hit = memo.get(key)
        if hit is None:
            acc: set[int] = set()
            for g in sub[fid]:
                shift = packer.codes[A[g]]
                acc.update(shift + x for x in T(g, m - 1))
            hit = memo[key] = frozenset(acc)
        return hit

    top = lattice.top
    full = set(T(top, n))
    boundary: set[int] = set()
    if lattice.dim >= 1:
        for g in sub[top]:
            if g != top:
                boundary |= T(g, n)
    elif n >= 1:
        # a point is its own interior
        return full, set(full)
    return full, full - boundary


def vertex_description_count(P: Polytope, A: ApexAssignment | None, n: int, interior: bool = False) -> int:
    full, inner = vertex_description_sets(P, A, n)
    return len(inner if interior else full)


def _grid(packer: _Packer, simplex: Sequence[int], n: int) -> set[int]:
    codes = [packer.codes[v] for v in simplex]
    return {sum(c) for c in itertools.combinations_with_replacement(codes, n - 1)} if n >= 1 else set()


def geometric_sets(T: PointedTriangulation, n: int) -> tuple[set[int], set[int]]:
    """(S_P(n), S_P(n) without the grids of boundary simplexes)."""
    _check_n(n)
    check_budget(n, current_budget().max_n, "n")
    P = T.polytope
    if n == 0:
        return set(), set()
    packer = _Packer(P.coords, n)
    full: set[int] = set()
    for s in T.simplexes:
        full |= _grid(packer, s, n)
    if T.dim == 0:
        return full, set(full)
    boundary: set[int] = set()
    for m in T.complex_faces:
        if bin(m).count("1") == T.dim and not T.meets_interior(m):
            boundary |= _grid(packer, [i for i in range(m.bit_length()) if m >> i & 1], n)
    return full, full - boundary


def geometric_count(T: PointedTriangulation, n: int, interior: bool = False) -> int:
    full, inner = geometric_sets(T, n)
    return len(inner if interior else full)


# Products -----------------------------------------------------------------------

@dataclass
class ProductReport:
    n_max: int
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def product_formula_check(
    P: Polytope, Q: Polytope, n_max: int, functional: GenericFunctional | None = None
) -> ProductReport:
    """Check (P x Q)(n) = P(n) Q(n) and the interior analogue for n <= n_max.

    The factors use the restrictions of the product functional, so the apex
    of every product face is the pair of the factor apexes.
    """
    R = product(P, Q)
    f = functional or GenericFunctional.default(R.ambient_dim)
    fp = f.restrict(0, P.ambient_dim)
    fq = f.restrict(P.ambient_dim, R.ambient_dim)
    ep = NumberEngine(P, assign_apexes(P, fp))
    eq = NumberEngine(Q, assign_apexes(Q, fq))
    er = NumberEngine(R, assign_apexes(R, f))
    report = ProductReport(n_max)
    for n in range(n_max + 1):
        lhs = er.number(R.lattice.top, n)
        rhs = ep.number(P.lattice.top, n) * eq.number(Q.lattice.top, n)
        if lhs != rhs:
            report.violations.append(f"{R.name}({n}) = {lhs} but product of factors is {rhs}")
        lhs = er.interior(R.lattice.top, n)
        rhs = ep.interior(P.lattice.top, n) * eq.interior(Q.lattice.top, n)
        if lhs != rhs:
            report.violations.append(f"interior {R.name}({n}) = {lhs} but product of factors is {rhs}")
        report.checked += 2
    return report


# Polynomials --------------------------------------------------------------------

@dataclass(frozen=True)
class PolynomialForm:
    coeffs: tuple[Fraction, ...]  # highest degree first

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, n) -> Fraction:
        acc = Fraction(0)
        for c in self.coeffs:
            acc = acc * n + c
        return acc

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def interpolate_polynomial(values: Sequence[int], d: int) -> PolynomialForm:
    """Degree-d interpolant through (n, values[n-1]) for n = 1..d+1.

    Any further values are used as check points and must be reproduced.
    """
    if len(values) < d + 1:
        raise ValueError(f"need {d + 1} values, got {len(values)}")
    xs = list(range(1, d + 2))
    ys = [Fraction(v) for v in values[: d + 1]]
    coeffs = [Fraction(0)] * (d + 1)  # lowest degree first
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += yi * b / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    form = PolynomialForm(tuple(reversed(coeffs)))
    for n, v in enumerate(values, start=1):
        if form(n) != v:
            raise ValueError(f"values are not a degree-{d} polynomial: mismatch at n={n}")
    return form


# Export -------------------------------------------------------------------------

def bfile(values: Sequence[int], offset: int = 0) -> str:
    return "".join(f"{n} {v}\n" for n, v in enumerate(values, start=offset))


def sequence_json(name: str, dim: int, values: Sequence[int], interior: Sequence[int] | None = None) -> str:
    doc = {"name": name, "dim": dim, "values": list(values)}
    if interior is not None:
        doc["interior_values"] = list(interior)
    if len(values) >= dim + 2:
        doc["polynomial"] = interpolate_polynomial(values[1:], dim).to_json()
    return json.dumps(doc, separators=(",", ":"))
