import json
from collections import Counter
from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from polynum.config import BudgetExceeded
from polynum.face_lattice import (
    bipyramid,
    make_cross,
    make_cube,
    make_hypersimplex,
    make_simplex,
    product,
    pyramid,
)
from polynum.triangulation import (
    ApexAssignment,
    GenericFunctional,
    PointedTriangulation,
    assign_apexes,
    build_triangulation,
    check_shelling,
    reference_volume,
    sub_triangulation,
    triangulation_shelling,
    validate_pointed,
)


def test_apex_of_simplex_faces():
    P = make_simplex(2)
    A = assign_apexes(P, GenericFunctional.parse("1,2,3"))
    L = P.lattice
    assert A[L.face_id([1, 2])] == 1
    assert A[L.top] == 0


def test_apex_of_segment():
    P = make_cube(1)
    assert P.coords[assign_apexes(P, GenericFunctional.parse("1"))[P.lattice.top]] == (0,)


def test_apex_of_cross():
    P = make_cross(3)
    A = assign_apexes(P)
    assert P.coords[A[P.lattice.top]] == (0, 0, -1)


def test_tie_break_is_lexicographic():
    # every vertex of the square ties under c = 0
    P = make_cube(2)
    A = assign_apexes(P, GenericFunctional.parse("0,0"))
    assert P.coords[A[P.lattice.top]] == (0, 0)
    A = assign_apexes(P, GenericFunctional.parse("1,-1"))
    assert P.coords[A[P.lattice.top]] == (0, 1)


def test_functional_length_checked():
    with pytest.raises(ValueError):
        assign_apexes(make_cube(2), GenericFunctional.parse("1,2,3"))


def test_rational_functional():
    f = GenericFunctional.parse("1/2, -3/4")
    assert f.base == (Fraction(1, 2), Fraction(-3, 4))


@pytest.mark.parametrize("P", [make_cube(3), make_cross(4), make_hypersimplex(5, 2), bipyramid(make_cube(2))])
def test_assignment_deterministic_and_hereditary(P):
    A = assign_apexes(P)
    assert A == assign_apexes(P)
    L = P.lattice
    for fid in range(1, len(L)):
        v = A[fid]
        assert v in L[fid]
        for g in L.subfaces[fid]:
            if v in L[g]:
                assert A[g] == v


def test_simplex_single():
    for d in range(0, 6):
        assert len(build_triangulation(make_simplex(d)).simplexes) == 1


@pytest.mark.parametrize("d", range(1, 6))
def test_counts(d):
    assert len(build_triangulation(make_cube(d)).simplexes) == factorial(d)
    assert len(build_triangulation(make_cross(d)).simplexes) == 2 ** (d - 1)


@pytest.mark.parametrize("dl", [(1, 1), (2, 1), (2, 2), (3, 1), (2, 1, 1), (3, 2)])
def test_product_of_simplexes_count(dl):
    from functools import reduce

    P = reduce(product, [make_simplex(k) for k in dl])
    mult = factorial(sum(dl))
    for k in dl:
        mult //= factorial(k)
    assert len(build_triangulation(P).simplexes) == mult


def test_cube_permutation_simplexes():
    # L(x) = -sum (d+1-i) x_i puts the apex at (1,1,1)
    P = make_cube(3)
    A = assign_apexes(P, GenericFunctional.parse("-3,-2,-1"))
    T = build_triangulation(P, A)
    assert P.coords[T.apex] == (1, 1, 1)
    chains = set()
    for s in T.simplexes:
        pts = [P.coords[v] for v in s]
        # consecutive vertices differ in one coordinate: a permutation of [3]
        steps = tuple(next(i for i in range(3) if a[i] != b[i]) for a, b in zip(pts, pts[1:]))
        chains.add(steps)
    assert chains == set(permutations(range(3)))


def test_cross_standard():
    P = make_cross(3)
    T = build_triangulation(P)
    pts = [{P.coords[v] for v in s} for s in T.simplexes]
    e3, m3 = (0, 0, 1), (0, 0, -1)
    expected = [
        {e3, m3, (a, 0, 0), (0, b, 0)} for a in (1, -1) for b in (1, -1)
    ]
    assert sorted(map(sorted, pts)) == sorted(map(sorted, expected))


@pytest.mark.parametrize(
    "P", [make_cube(2), make_cube(3), make_cross(3), make_hypersimplex(4, 2), pyramid(make_cube(2)), bipyramid(make_cross(2))]
)
def test_volume(P):
    T = build_triangulation(P)
    assert T.volume() == reference_volume(P.coords)


def test_volume_values():
    assert build_triangulation(make_cube(3)).volume() == 1
    assert build_triangulation(make_cross(3)).volume() == Fraction(4, 3)


@pytest.mark.parametrize("P", [make_cube(3), make_cross(4), make_hypersimplex(4, 2), product(make_simplex(2), make_simplex(1))])
def test_validate_standard(P):
    report = validate_pointed(P, build_triangulation(P))
    assert report.passed, report.to_json()


def test_validate_bad_square():
    P = make_cube(2)
    L = P.lattice
    A = assign_apexes(P)
    apex = list(A.apex_of)
    apex[L.face_id([0, 1])] = 1  # disagrees with the square's apex 0
    bad = ApexAssignment(tuple(apex))
    T = PointedTriangulation(P, bad, ((0, 1, 3), (0, 2, 3)))
    report = validate_pointed(P, T)
    assert not report["condition2"].passed
    assert report["condition2"].witness


def test_validate_wrong_diagonal():
    P = make_cube(2)
    T = PointedTriangulation(P, assign_apexes(P), ((0, 1, 2), (1, 2, 3)))
    report = validate_pointed(P, T)
    assert not report["condition1"].passed
    assert not report["condition3"].passed


def test_validate_cube4():
    assert validate_pointed(make_cube(4), build_triangulation(make_cube(4))).passed
    assert validate_pointed(make_cross(4), build_triangulation(make_cross(4))).passed


def test_shelling_cube3():
    T = build_triangulation(make_cube(3))
    S = triangulation_shelling(T)
    assert check_shelling(T, S)
    c = Counter(S.l_counts)
    assert (1, c[1], c[2]) == (1, 4, 1)


def test_shelling_simplex():
    S = triangulation_shelling(build_triangulation(make_simplex(3)))
    assert S.order == (0,) and S.l_counts == ()


@pytest.mark.parametrize("d,expected", [(3, (1, 2, 1)), (4, (1, 3, 3, 1))])
def test_shelling_cross(d, expected):
    T = build_triangulation(make_cross(d))
    S = triangulation_shelling(T)
    assert check_shelling(T, S)
    c = Counter(S.l_counts)
    assert (1,) + tuple(c[i] for i in range(1, d)) == expected


@pytest.mark.parametrize("P", [make_cube(4), bipyramid(make_cube(3)), product(make_simplex(2), make_simplex(2)), pyramid(make_cross(3))])
def test_shelling_bounds(P):
    T = build_triangulation(P)
    S = triangulation_shelling(T)
    assert check_shelling(T, S)
    assert all(1 <= l <= P.dim - 1 for l in S.l_counts)


def test_check_shelling_rejects_bad_order():
    T = build_triangulation(make_cube(3))
    S = triangulation_shelling(T)
    assert not check_shelling(T, type(S)(S.order, tuple(l + 1 for l in S.l_counts)))


def test_shelling_budget():
    T = build_triangulation(make_cube(4))
    with pytest.raises(BudgetExceeded):
        triangulation_shelling(T, budget=3)


def test_sub_triangulation():
    P = make_simplex(3)
    T = build_triangulation(P)
    facet = P.lattice.facets[P.lattice.top][0]
    S = sub_triangulation(T, facet)
    assert len(S.simplexes) == 1 and len(S.simplexes[0]) == 3

    C = make_cube(3)
    T = build_triangulation(C)
    square = C.lattice.by_dim(2)[0]
    assert len(sub_triangulation(T, square).simplexes) == 2
    v = C.lattice.vertex_face(5)
    assert sub_triangulation(T, v).simplexes == ((5,),)
    with pytest.raises(KeyError):
        sub_triangulation(T, 0)


def test_sub_triangulation_matches_direct():
    P = make_cross(4)
    T = build_triangulation(P)
    L = P.lattice
    for fid in range(1, len(L)):
        # the induced triangulation is the part of the complex inside the face
        inside = {
            m for m in T.complex_faces
            if m & L[fid].mask == m and bin(m).count("1") == L[fid].dim + 1
        }
        assert set(sub_triangulation(T, fid).simplex_masks) == inside


def test_json_export():
    T = build_triangulation(make_cube(2))
    doc = json.loads(json.dumps(T.to_json(triangulation_shelling(T))))
    assert len(doc["simplexes"]) == 2
    assert doc["shelling"]["l_counts"] == [1]


def brute_shared(mask, covered):
    from polynum.triangulation import _subsets

    inter = [s for s in _subsets(mask) if s in covered and s != mask]
    facets = [mask & ~(1 << v) for v in range(mask.bit_length()) if mask >> v & 1]
    shared = [f for f in facets if f in covered]
    if not shared or any(not any(s & f == s for f in shared) for s in inter):
        return None
    return len(shared)


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_shared_facets_against_brute_force(data):
    from polynum.triangulation import _shared_facets, _subsets

    T = build_triangulation(data.draw(st.sampled_from([make_cube(3), make_cube(4), make_cross(4)])))
    masks = T.simplex_masks
    placed = data.draw(st.lists(st.sampled_from(masks), min_size=1, max_size=len(masks), unique=True))
    covered = set()
    for m in placed:
        covered.update(_subsets(m))
    probe = data.draw(st.sampled_from(masks))
    if probe in placed:
        return
    assert _shared_facets(probe, covered) == brute_shared(probe, covered)


def test_backtracking_agrees_with_greedy():
    from polynum.triangulation import _backtracking_shelling

    T = build_triangulation(make_cube(4))
    S = triangulation_shelling(T)
    masks = T.simplex_masks
    by_facet = {}
    for i, m in enumerate(masks):
        for v in range(m.bit_length()):
            if m >> v & 1:
                by_facet.setdefault(m & ~(1 << v), []).append(i)
    neighbours = [sorted({j for f in by_facet if f & m == f for j in by_facet[f] if j != i}) for i, m in enumerate(masks)]
    B = _backtracking_shelling(masks, neighbours, 10**6)
    assert check_shelling(T, B)
    assert B == S
