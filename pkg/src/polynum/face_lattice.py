"""Polytopes as exact vertex sets with explicit graded face lattices.

Every lattice here is built compositionally from a handful of constructors.
Faces are stored as integer bitmasks over vertex ids; ``Face.vertex_ids``
gives the sorted tuple view.  ``brute_force_faces`` recomputes a lattice from
coordinates alone and exists to cross-check the constructors.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from ._exact import affine_dim, as_fraction, nullspace, rank
from .config import BudgetExceeded, current_budget

Coords = tuple[Fraction, ...]


def mask_of(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def ids_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class Face:
    mask: int
    dim: int

    @cached_property
    def vertex_ids(self) -> tuple[int, ...]:
        return ids_of(self.mask)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, vertex_id: int) -> bool:
        return bool(self.mask >> vertex_id & 1)


class FaceLattice:
    """Graded face lattice, including the empty face (dim -1) and the top face.

    Faces are numbered by ``(dim, vertex_ids)`` so id 0 is the empty face and
    the last id is the polytope itself.
    """

    def __init__(self, n_vertices: int, faces: Iterable[tuple[int, int]]):
        unique: dict[int, int] = {}
        for mask, dim in faces:
            if mask == 0:
                continue
            old = unique.get(mask)
            if old is not None and old != dim:
                raise ValueError(f"face {ids_of(mask)} given with dims {old} and {dim}")
            unique[mask] = dim
        ordered = sorted(unique.items(), key=lambda md: (md[1], ids_of(md[0])))
        self.n_vertices = n_vertices
        self.faces: list[Face] = [Face(0, -1)] + [Face(m, d) for m, d in ordered]
        self.index: dict[int, int] = {f.mask: i for i, f in enumerate(self.faces)}
        tops = [i for i, f in enumerate(self.faces) if f.dim == self.faces[-1].dim]
        if len(tops) != 1:
            raise ValueError("face lattice must have exactly one top face")
        self.facets: list[tuple[int, ...]] = self._facet_incidence()

    def _facet_incidence(self) -> list[tuple[int, ...]]:
        by_vertex: dict[int, list[int]] = {}
        for fid, f in enumerate(self.faces):
            for v in f.vertex_ids:
                by_vertex.setdefault(v, []).append(fid)
        incidence: list[list[int]] = [[] for _ in self.faces]
        for gid, g in enumerate(self.faces):
            if g.dim == -1:
                for fid, f in enumerate(self.faces):
                    if f.dim == 0:
                        incidence[fid].append(0)
                continue
            low = (g.mask & -g.mask).bit_length() - 1
            for fid in by_vertex[low]:
                f = self.faces[fid]
                if f.dim == g.dim + 1 and f.mask & g.mask == g.mask:
                    incidence[fid].append(gid)
        return [tuple(sorted(x)) for x in incidence]

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def __getitem__(self, fid: int) -> Face:
        return self.faces[fid]

    @property
    def top(self) -> int:
        return len(self.faces) - 1

    @property
    def dim(self) -> int:
        return self.faces[-1].dim

    def face_id(self, vertex_ids: Iterable[int]) -> int:
        return self.index[mask_of(vertex_ids)]

    def vertex_face(self, v: int) -> int:
        return self.index[1 << v]

    def by_dim(self, k: int) -> list[int]:
        return [i for i, f in enumerate(self.faces) if f.dim == k]

    @cached_property
    def subfaces(self) -> tuple[tuple[int, ...], ...]:
        """For each face, the ids of all its nonempty faces (itself included)."""
        out: list[frozenset[int]] = [frozenset()] * len(self.faces)
        for fid, f in enumerate(self.faces):
            if f.dim < 0:
                continue
            acc = {fid}
            for g in self.facets[fid]:
                acc |= out[g]
            out[fid] = frozenset(acc)
        return tuple(tuple(sorted(s)) for s in out)

    @cached_property
    def proper_facets(self) -> tuple[int, ...]:
        """Facet ids of the top face."""
        return self.facets[self.top]

    def smallest_face_containing(self, mask: int) -> int:
        """Id of the smallest face whose vertex set contains ``mask``."""
        best = self.top
        for fid, f in enumerate(self.faces):
            if f.mask & mask == mask and f.dim < self.faces[best].dim:
                best = fid
        return best

    def in_proper_face(self, mask: int) -> bool:
        return any(self.faces[fid].mask & mask == mask for fid in self.proper_facets)

    def masks(self) -> set[int]:
        return {f.mask for f in self.faces}

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dim + 1)
        for f in self.faces:
            if f.dim >= 0:
                counts[f.dim] += 1
        return tuple(counts)

    def check(self) -> list[str]:
        """Structural invariants; returns a list of violations (empty when valid)."""
        problems = []
        if sum(1 for f in self.faces if f.dim == -1) != 1:
            problems.append("expected exactly one empty face")
        masks = self.masks()
        for i, f in enumerate(self.faces):
            for g in self.faces[i + 1:]:
                if (f.mask & g.mask) not in masks:
                    problems.append(f"intersection of {f.vertex_ids} and {g.vertex_ids} is not a face")
                    break
        d = self.dim
        if d >= 1:
            fv = self.f_vector()
            euler = sum((-1) ** k * fv[k] for k in range(d))
            if euler != 1 + (-1) ** (d - 1):
                problems.append(f"Euler relation fails: {euler}")
        for fid, f in enumerate(self.faces):
            if f.dim >= 0 and not self.facets[fid]:
                problems.append(f"face {f.vertex_ids} has no facets")
        return problems


@dataclass(frozen=True)
class Polytope:
    coords: tuple[Coords, ...]
    lattice: FaceLattice = field(compare=False, repr=False)
    name: str = ""

    @property
    def dim(self) -> int:
        return self.lattice.dim

    @property
    def ambient_dim(self) -> int:
        return len(self.coords[0]) if self.coords else 0

    @property
    def n_vertices(self) -> int:
        return len(self.coords)

    def face_coords(self, fid: int) -> list[Coords]:
        return [self.coords[v] for v in self.lattice[fid].vertex_ids]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "ambient_dim": self.ambient_dim,
            "vertices": [[[x.numerator, x.denominator] for x in p] for p in self.coords],
            "faces": [
                {"dim": f.dim, "vertex_ids": list(f.vertex_ids)}
                for f in self.lattice
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, doc: dict) -> "Polytope":
        coords = tuple(
            tuple(Fraction(int(n), int(d)) for n, d in p) for p in doc["vertices"]
        )
        lattice = FaceLattice(
            len(coords), ((mask_of(f["vertex_ids"]), f["dim"]) for f in doc["faces"])
        )
        return cls(coords, lattice, doc.get("name", ""))


def _point(values: Iterable) -> Coords:
    return tuple(as_fraction(v) for v in values)


def _unit(i: int, n: int, scale: int = 1) -> Coords:
    return tuple(Fraction(scale if j == i else 0) for j in range(n))


# Constructors ---------------------------------------------------------------

def make_simplex(d: int) -> Polytope:
    """Standard d-simplex conv{e_1, ..., e_{d+1}} in R^{d+1}."""
    if d < 0:
        raise ValueError("simplex dimension must be >= 0")
    n = d + 1
    coords = tuple(_unit(i, n) for i in range(n))
    faces = (
        (mask_of(sub), len(sub) - 1)
        for r in range(1, n + 1)
        for sub in itertools.combinations(range(n), r)
    )
    return Polytope(coords, FaceLattice(n, faces), f"simplex:{d}")


def make_cross(d: int) -> Polytope:
    """Standard d-cross polytope; vertex i is +e_{i+1}, vertex d+i is -e_{i+1}."""
    if d < 1:
        raise ValueError("cross polytope dimension must be >= 1")
    coords = tuple(_unit(i, d) for i in range(d)) + tuple(_unit(i, d, -1) for i in range(d))
    faces: list[tuple[int, int]] = []
    for r in range(1, d + 1):
        for axes in itertools.combinations(range(d), r):
            for signs in itertools.product((0, 1), repeat=r):
                ids = [a + s * d for a, s in zip(axes, signs)]
                faces.append((mask_of(ids), r - 1))
    faces.append(((1 << (2 * d)) - 1, d))
    return Polytope(coords, FaceLattice(2 * d, faces), f"cross:{d}")


def make_cube(d: int) -> Polytope:
    """The d-measure polytope on {0,1}^d; faces fix a coordinate subset to 0/1."""
    if d < 0:
        raise ValueError("cube dimension must be >= 0")
    verts = list(itertools.product((0, 1), repeat=d))
    coords = tuple(_point(v) for v in verts)
    faces = []
    for pattern in itertools.product((0, 1, None), repeat=d):
        ids = [
            i for i, v in enumerate(verts)
            if all(p is None or p == x for p, x in zip(pattern, v))
        ]
        faces.append((mask_of(ids), sum(p is None for p in pattern)))
    return Polytope(coords, FaceLattice(len(verts), faces), f"cube:{d}")


def make_hypersimplex(d: int, k: int) -> Polytope:
    """Hypersimplex {x in [0,1]^d : sum x = k}, a (d-1)-polytope."""
    if d < 2 or not 1 <= k <= d - 1:
        raise ValueError(f"hypersimplex needs d >= 2 and 1 <= k <= d-1, got d={d}, k={k}")
    verts = [
        tuple(1 if i in ones else 0 for i in range(d))
        for ones in itertools.combinations(range(d), k)
    ]
    coords = tuple(_point(v) for v in verts)
    faces = []
    for pattern in itertools.product((0, 1, None), repeat=d):
        fixed_one = sum(p == 1 for p in pattern)
        fixed_zero = sum(p == 0 for p in pattern)
        if fixed_one > k or fixed_zero > d - k:
            continue
        free = d - fixed_one - fixed_zero
        need = k - fixed_one
        if need > free:
            continue
        ids = [
            i for i, v in enumerate(verts)
            if all(p is None or p == x for p, x in zip(pattern, v))
        ]
        dim = free - 1 if 0 < need < free else 0
        faces.append((mask_of(ids), dim))
    return Polytope(coords, FaceLattice(len(verts), faces), f"hypersimplex:{d},{k}")


def pyramid(P: Polytope) -> Polytope:
    """Pyramid over P: base at height 0, apex at the origin lifted to height 1."""
    n = P.n_vertices
    coords = tuple(p + (Fraction(0),) for p in P.coords)
    coords += (tuple(Fraction(0) for _ in range(P.ambient_dim)) + (Fraction(1),),)
    apex = 1 << n
    faces = []
    for f in P.lattice:
        if f.dim >= 0:
            faces.append((f.mask, f.dim))
        faces.append((f.mask | apex, f.dim + 1))
    return Polytope(coords, FaceLattice(n + 1, faces), f"pyr({P.name})")


def bipyramid(P: Polytope) -> Polytope:
    """Bipyramid over P with apexes at heights +1 and -1 over the vertex barycenter."""
    n = P.n_vertices
    amb = P.ambient_dim
    centre = tuple(sum(p[j] for p in P.coords) / n for j in range(amb))
    top = centre + (Fraction(1),)
    bottom = centre + (Fraction(-1),)
    if P.dim == 0:
        # the lone vertex is the midpoint of the two apexes
        coords = (top, bottom)
        faces = [(1, 0), (2, 0), (3, 1)]
        return Polytope(coords, FaceLattice(2, faces), f"bipyr({P.name})")
    coords = tuple(p + (Fraction(0),) for p in P.coords) + (top, bottom)
    a, b = 1 << n, 1 << (n + 1)
    faces = []
    for fid, f in enumerate(P.lattice):
        if fid == P.lattice.top:
            continue
        if f.dim >= 0:
            faces.append((f.mask, f.dim))
        faces.append((f.mask | a, f.dim + 1))
        faces.append((f.mask | b, f.dim + 1))
    faces.append(((1 << (n + 2)) - 1, P.dim + 1))
    return Polytope(coords, FaceLattice(n + 2, faces), f"bipyr({P.name})")


def product(P: Polytope, Q: Polytope) -> Polytope:
    """Cartesian product; vertex (i, j) gets id i * |vert Q| + j."""
    m = Q.n_vertices
    coords = tuple(p + q for p in P.coords for q in Q.coords)
    faces = []
    for f in P.lattice:
        if f.dim < 0:
            continue
        for g in Q.lattice:
            if g.dim < 0:
                continue
            ids = [i * m + j for i in f.vertex_ids for j in g.vertex_ids]
            faces.append((mask_of(ids), f.dim + g.dim))
    return Polytope(coords, FaceLattice(len(coords), faces), f"prod({P.name},{Q.name})")


def f_vector(P: Polytope) -> tuple[int, ...]:
    """(f_0, ..., f_d); the empty face is not counted and f_d = 1 is the polytope."""
    return P.lattice.f_vector()


# Brute-force oracle -----------------------------------------------------------

def _to_affine_coords(points: Sequence[Coords]) -> list[list[Fraction]]:
    """Express points in an affine basis of their hull (exact)."""
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points]
    basis: list[list[Fraction]] = []
    for row in diffs:
        if rank(basis + [row]) > len(basis):
            basis.append(row)
    k = len(basis)
    if k == 0:
        return [[] for _ in points]
    # solve diffs = coeffs @ basis on a set of columns where the basis is invertible
    from ._exact import affine_chart

    chart = affine_chart([[Fraction(0)] * len(base)] + basis)
    square = [[b[j] for j in chart] for b in basis]  # k x k, invertible
    inv = _inverse(square)
    out = []
    for row in diffs:
        r = [row[j] for j in chart]
        out.append([sum(r[i] * inv[i][c] for i in range(k)) for c in range(k)])
    return out


def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def brute_force_faces(coords: Sequence[Sequence]) -> FaceLattice:
    """Face lattice from coordinates alone, by enumerating supporting hyperplanes.

    Raises ``BudgetExceeded`` past the oracle limits and ``ValueError`` when
    some point is not a vertex of the hull.
    """
    budget = current_budget()
    pts = [tuple(as_fraction(x) for x in p) for p in coords]
    n = len(pts)
    if n > budget.oracle_vertices:
        raise BudgetExceeded(f"{n} points exceed the oracle limit {budget.oracle_vertices}")
    if len(set(pts)) != n:
        raise ValueError("points must be distinct")
    full = (1 << n) - 1
    if n == 1:
        return FaceLattice(1, [(1, 0)])
    local = _to_affine_coords(pts)
    d = len(local[0])
    # the hyperplane search is C(n, d) in the dimension of the hull
    if d > budget.max_dim:
        raise BudgetExceeded(f"hull dimension {d} exceeds the oracle limit {budget.max_dim}")
    facets: set[int] = set()
    for sub in itertools.combinations(range(n), d):
        rows = [local[i] + [Fraction(1)] for i in sub]
        ns = nullspace(rows, d + 1)
        if len(ns) != 1:
            continue
        normal = ns[0]
        values = [sum(a * b for a, b in zip(normal[:d], p)) + normal[d] for p in local]
        if all(v >= 0 for v in values) or all(v <= 0 for v in values):
            facets.add(mask_of(i for i, v in enumerate(values) if v == 0))
    faces = {full}
    frontier = set(facets)
    while frontier:
        faces |= frontier
        nxt = set()
        for f in frontier:
            for g in facets:
                h = f & g
                if h and h not in faces:
                    nxt.add(h)
        frontier = nxt
    for i in range(n):
        if (1 << i) not in faces:
            raise ValueError(f"point {i} is not a vertex: points not in convex position")
    dims = [(m, affine_dim([pts[i] for i in ids_of(m)])) for m in faces]
    return FaceLattice(n, dims)
