"""Pointed triangulations built from apex chains, plus shellings of them.

Every nonempty face gets an apex: the sink of a generic linear functional.
The maximal simplexes are the apex sequences of face chains
``P = G_1 > G_2 > ... > G_{d+1}`` where each ``G_{i+1}`` is a facet of
``G_i`` avoiding the apex of ``G_i``.
"""

from __future__ import annotations

import heapq
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from ._exact import affine_chart, as_fraction, simplex_volume
from .config import BudgetExceeded, current_budget
from .face_lattice import Face, FaceLattice, Polytope, brute_force_faces, ids_of, mask_of


@dataclass(frozen=True)
class GenericFunctional:
    """Linear functional ``c`` made generic by a lexicographic tie-break.

    Two points are compared by ``c . x`` and then by their coordinates in
    order, which is the limit of ``c + (t, t^2, ...)`` as ``t`` goes to zero.
    """

    base: tuple[Fraction, ...]

    @classmethod
    def default(cls, ambient_dim: int) -> "GenericFunctional":
        return cls(tuple(Fraction(i + 1) for i in range(ambient_dim)))

    @classmethod
    def parse(cls, text: str) -> "GenericFunctional":
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if not parts:
            raise ValueError("empty functional")
        return cls(tuple(as_fraction(p) for p in parts))

    def key(self, point: Sequence[Fraction]) -> tuple:
        return (sum(c * x for c, x in zip(self.base, point)),) + tuple(point)

    def restrict(self, start: int, stop: int) -> "GenericFunctional":
        return GenericFunctional(self.base[start:stop])

    def concat(self, other: "GenericFunctional") -> "GenericFunctional":
        return GenericFunctional(self.base + other.base)


@dataclass(frozen=True)
class ApexAssignment:
    apex_of: tuple[int, ...]  # indexed by face id; -1 for the empty face
    functional: GenericFunctional | None = None

    def __getitem__(self, fid: int) -> int:
        return self.apex_of[fid]


def assign_apexes(P: Polytope, f: GenericFunctional | None = None) -> ApexAssignment:
    if f is None:
        f = GenericFunctional.default(P.ambient_dim)
    if len(f.base) != P.ambient_dim:
        raise ValueError(
            f"functional has length {len(f.base)}, ambient dimension is {P.ambient_dim}"
        )
    keys = [f.key(p) for p in P.coords]
    apex = [-1]
    for face in P.lattice.faces[1:]:
        apex.append(min(face.vertex_ids, key=keys.__getitem__))
    return ApexAssignment(tuple(apex), f)


def _subsets(mask: int) -> Iterable[int]:
    """All nonempty submasks of ``mask``."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class PointedTriangulation:
    polytope: Polytope
    apexes: ApexAssignment
    simplexes: tuple[tuple[int, ...], ...]
    chain_faces: tuple[tuple[int, ...], ...] = ()
    top: int = -1

    @property
    def lattice(self) -> FaceLattice:
        return self.polytope.lattice

    @property
    def top_face(self) -> int:
        return self.lattice.top if self.top < 0 else self.top

    @property
    def dim(self) -> int:
        return self.lattice[self.top_face].dim

    @property
    def apex(self) -> int:
        return self.apexes[self.top_face]

    @cached_property
    def simplex_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(s) for s in self.simplexes)

    @cached_property
    def complex_faces(self) -> frozenset[int]:
        """Vertex masks of every nonempty simplex of the triangulation complex."""
        out: set[int] = set()
        for m in self.simplex_masks:
            out.update(_subsets(m))
        return frozenset(out)

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dim + 1)
        for m in self.complex_faces:
            counts[bin(m).count("1") - 1] += 1
        return tuple(counts)

    def meets_interior(self, mask: int) -> bool:
        """Whether the simplex meets the relative interior of the top face.

        A simplex of the complex meets the interior exactly when no proper
        face of the top face contains all of its vertices.
        """
        top = self.lattice[self.top_face]
        for fid in self.lattice.facets[self.top_face]:
            if self.lattice[fid].mask & mask == mask:
                return False
        return top.mask & mask == mask

    def volume(self) -> Fraction:
        chart = affine_chart(self.polytope.face_coords(self.top_face))
        return sum(
            (simplex_volume([self.polytope.coords[v] for v in s], chart) for s in self.simplexes),
            Fraction(0),
        )

    def to_json(self, shelling: "ShellingOrder | None" = None) -> dict:
        doc = {
            "apexes": {
                str(fid): v for fid, v in enumerate(self.apexes.apex_of) if fid > 0
            },
            "simplexes": [list(s) for s in self.simplexes],
        }
        if shelling is not None:
            doc["shelling"] = {"order": list(shelling.order), "l_counts": list(shelling.l_counts)}
        return doc


def _chains(lattice: FaceLattice, apexes: ApexAssignment, fid: int, memo: dict) -> list:
    if fid in memo:
        return memo[fid]
    face = lattice[fid]
    v = apexes[fid]
    if face.dim == 0:
        out = [((v,), (fid,))]
    else:
        out = []
        for g in lattice.facets[fid]:
            if v in lattice[g]:
                continue
            for verts, faces in _chains(lattice, apexes, g, memo):
                out.append(((v,) + verts, (fid,) + faces))
    memo[fid] = out
    return out


def build_triangulation(
    P: Polytope, A: ApexAssignment | None = None, check: bool = True, top: int = -1
) -> PointedTriangulation:
    """All maximal apex chains of the top face (or of face ``top``)."""
    if A is None:
        A = assign_apexes(P)
    lattice = P.lattice
    fid = lattice.top if top < 0 else top
    chains = _chains(lattice, A, fid, {})
    simplexes = tuple(c[0] for c in chains)
    if check:
        # a vertex of G off a facet of G is off its affine hull, so a chain that
        # drops one dimension per step with each apex outside the next face is
        # a full-dimensional simplex
        dim = lattice[fid].dim
        for s, faces in chains:
            ok = len(s) == dim + 1 and all(
                lattice[g].dim == dim - i
                and (i == dim or s[i] not in lattice[faces[i + 1]])
                for i, g in enumerate(faces)
            )
            if not ok:
                raise ValueError(f"degenerate apex chain {s}: inconsistent apex assignment")
    return PointedTriangulation(P, A, simplexes, tuple(c[1] for c in chains), top)


def sub_triangulation(T: PointedTriangulation, F: Face | int) -> PointedTriangulation:
    """The induced pointed triangulation of a face."""
    lattice = T.lattice
    if isinstance(F, Face):
        if F.mask not in lattice.index:
            raise KeyError(f"face {F.vertex_ids} is not in the lattice")
        fid = lattice.index[F.mask]
    else:
        fid = F
        if not 0 < fid < len(lattice):
            raise KeyError(f"face id {fid} is not a nonempty face")
    if T.chain_faces:
        return build_triangulation(T.polytope, T.apexes, check=False, top=fid)
    # hand-built triangulations carry no chains; restrict by containment
    fmask = lattice[fid].mask
    dim = lattice[fid].dim
    seen = {}
    for m in T.complex_faces:
        if m & fmask == m and bin(m).count("1") == dim + 1:
            seen[ids_of(m)] = ()
    simplexes = tuple(sorted(seen))
    return PointedTriangulation(T.polytope, T.apexes, simplexes, tuple(seen[s] for s in simplexes), fid)


# Validation -------------------------------------------------------------------

@dataclass
class ConditionResult:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class ValidationReport:
    conditions: list[ConditionResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def __getitem__(self, name: str) -> ConditionResult:
        return next(c for c in self.conditions if c.name == name)

    def to_json(self) -> dict:
        return {c.name: {"passed": c.passed, "witness": c.witness} for c in self.conditions}


def validate_pointed(P: Polytope, T: PointedTriangulation) -> ValidationReport:
    """Check the three pointed-triangulation conditions; failures carry a witness."""
    lattice = P.lattice
    A = T.apexes
    faces = T.complex_faces
    report = ValidationReport()

    # 1: every maximal simplex inside a face contains that face's apex
    witness = ""
    for fid in range(1, len(lattice)):
        f = lattice[fid]
        v = A[fid]
        for m in faces:
            if m & f.mask == m and bin(m).count("1") == f.dim + 1 and not m >> v & 1:
                witness = f"simplex {ids_of(m)} in face {f.vertex_ids} misses apex {v}"
                break
        if witness:
            break
    report.conditions.append(ConditionResult("condition1", not witness, witness))

    # 2: apexes agree down the lattice
    witness = ""
    for fid in range(1, len(lattice)):
        f = lattice[fid]
        v = A[fid]
        for gid in lattice.subfaces[fid]:
            if v in lattice[gid] and A[gid] != v:
                witness = (
                    f"apex {v} of face {f.vertex_ids} lies in subface "
                    f"{lattice[gid].vertex_ids} whose apex is {A[gid]}"
                )
                break
        if witness:
            break
    report.conditions.append(ConditionResult("condition2", not witness, witness))

    # 3: each face's apex is joined by an edge to every vertex of the face
    witness = ""
    for fid in range(1, len(lattice)):
        v = A[fid]
        for w in lattice[fid].vertex_ids:
            if w != v and (1 << v | 1 << w) not in faces:
                witness = f"edge ({v}, {w}) of face {lattice[fid].vertex_ids} not in the complex"
                break
        if witness:
            break
    report.conditions.append(ConditionResult("condition3", not witness, witness))
    return report


# Shellings --------------------------------------------------------------------

@dataclass(frozen=True)
class ShellingOrder:
    order: tuple[int, ...]
    l_counts: tuple[int, ...]  # one entry per simplex after the first


def _attach(mask: int, covered: set[int]) -> tuple[int, int] | None:
    """(shared facet count, vertices opposite the shared facets), or None when
    the intersection with the union is not a nonempty pure union of facets.

    A face of the simplex lies in no shared facet exactly when it contains
    every vertex opposite a shared facet.  The union is closed under taking
    faces, so it suffices to test that vertex set itself.
    """
    opposite = 0
    count = 0
    for v in ids_of(mask):
        if mask & ~(1 << v) in covered:
            opposite |= 1 << v
            count += 1
    if not count:
        return None
    if opposite != mask and opposite in covered:
        return None
    return count, opposite


def _shared_facets(mask: int, covered: set[int]) -> int | None:
    hit = _attach(mask, covered)
    return None if hit is None else hit[0]


def _new_faces(mask: int, opposite: int) -> list[int]:
    """Faces of the simplex containing ``opposite``: what an attachment adds."""
    rest = mask & ~opposite
    return [opposite | sub for sub in _subsets(rest)] + [opposite]


def triangulation_shelling(T: PointedTriangulation, budget: int | None = None) -> ShellingOrder:
    """A shelling order found greedily, backtracking on dead ends."""
    if budget is None:
        budget = current_budget().shelling_nodes
    masks = T.simplex_masks
    n = len(masks)
    if n <= 1:
        return ShellingOrder(tuple(range(n)), ())
    by_facet: dict[int, list[int]] = {}
    for i, m in enumerate(masks):
        for v in ids_of(m):
            by_facet.setdefault(m & ~(1 << v), []).append(i)
    neighbours = [
        sorted({j for v in ids_of(m) for j in by_facet[m & ~(1 << v)] if j != i})
        for i, m in enumerate(masks)
    ]

    greedy = _greedy_shelling(masks, neighbours, budget)
    if greedy is not None:
        return greedy
    return _backtracking_shelling(masks, neighbours, budget)


def _greedy_shelling(masks, neighbours, budget: int) -> ShellingOrder | None:
    """Always take the smallest frontier simplex that fits; None on a dead end."""
    n = len(masks)
    order, counts = [0], []
    covered: set[int] = set(_subsets(masks[0]))
    used = [False] * n
    used[0] = True
    queued = set(neighbours[0])
    heap = sorted(queued)
    nodes = 0
    while len(order) < n:
        deferred = []
        while heap:
            j = heapq.heappop(heap)
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"shelling search exceeded {budget} node expansions")
            hit = _attach(masks[j], covered)
            if hit is None:
                deferred.append(j)
                continue
            break
        else:
            return None
        l, opposite = hit
        covered.update(_new_faces(masks[j], opposite))
        order.append(j)
        counts.append(l)
        used[j] = True
        queued.discard(j)
        for k in deferred:
            heapq.heappush(heap, k)
        for k in neighbours[j]:
            if not used[k] and k not in queued:
                queued.add(k)
                heapq.heappush(heap, k)
    return ShellingOrder(tuple(order), tuple(counts))


def _backtracking_shelling(masks, neighbours, budget: int) -> ShellingOrder:
    n = len(masks)
    order: list[int] = [0]
    counts: list[int] = []
    covered: set[int] = set(_subsets(masks[0]))
    used = [False] * n
    used[0] = True
    # each stack frame: candidates still to try at that depth and what was added
    stack: list[tuple[list[int], list[int]]] = []
    nodes = 0

    def candidates() -> list[int]:
        seen = set()
        for i in order:
            for j in neighbours[i]:
                if not used[j]:
                    seen.add(j)
        return sorted(seen, reverse=True)

    pending = candidates()
    while len(order) < n:
        placed = False
        while pending:
            j = pending.pop()
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"shelling search exceeded {budget} node expansions")
            l = _shared_facets(masks[j], covered)
            if l is None:
                continue
            added = [s for s in _subsets(masks[j]) if s not in covered]
            covered.update(added)
            stack.append((pending, added))
            order.append(j)
            counts.append(l)
            used[j] = True
            pending = candidates()
            placed = True
            break
        if placed:
            continue
        if not stack:
            raise RuntimeError("no shelling order exists from the first simplex")
        pending, added = stack.pop()
        j = order.pop()
        counts.pop()
        used[j] = False
        covered.difference_update(added)
    return ShellingOrder(tuple(order), tuple(counts))


def check_shelling(T: PointedTriangulation, S: ShellingOrder) -> bool:
    """Re-verify a shelling certificate from scratch."""
    masks = T.simplex_masks
    if sorted(S.order) != list(range(len(masks))) or len(S.l_counts) != max(len(masks) - 1, 0):
        return False
    covered: set[int] = set()
    for pos, j in enumerate(S.order):
        if pos:
            if _shared_facets(masks[j], covered) != S.l_counts[pos - 1]:
                return False
        covered.update(_subsets(masks[j]))
    return True


# Volumes ----------------------------------------------------------------------

def reference_volume(coords: Sequence[Sequence]) -> Fraction:
    """Volume of conv(coords) by recursive pulling from the lowest vertex id,
    using only the brute-force face lattice."""
    pts = [tuple(as_fraction(x) for x in p) for p in coords]
    lattice = brute_force_faces(pts)
    chart = affine_chart(pts)

    def simplices(fid: int) -> list[tuple[int, ...]]:
        face = lattice[fid]
        if face.dim == 0:
            return [face.vertex_ids]
        v = face.vertex_ids[0]
        out = []
        for g in lattice.facets[fid]:
            if v not in lattice[g]:
                out.extend((v,) + s for s in simplices(g))
        return out

    return sum(
        (simplex_volume([pts[i] for i in s], chart) for s in simplices(lattice.top)),
        Fraction(0),
    )


def dumps(T: PointedTriangulation, shelling: ShellingOrder | None = None) -> str:
    return json.dumps(T.to_json(shelling), separators=(",", ":"))
