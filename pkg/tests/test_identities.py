from functools import reduce
from itertools import permutations
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from polynum.config import BudgetExceeded
from polynum.decomposition import decompose_T1_shelling
from polynum.face_lattice import make_simplex, product
from polynum.identities import (
    ballot_closed_form,
    ballot_closed_form_general,
    ballot_path_coeffs,
    ballot_words,
    count_plane_arrays,
    descents,
    eulerian,
    eulerian_enumerated,
    generalized_eulerian,
    generalized_eulerian_enumerated,
    generalized_eulerian_row,
    lattice_path_closed_form,
    lattice_path_coeffs,
    macmahon_box,
    multiset_permutations,
    narayana,
    plane_partition_oracle,
    set_partitions_count,
    stirling2,
    stirling_descent_identity_check,
    tableau_of_word,
    worpitzky_check,
    yamanouchi_words,
    young_closed_form,
    young_poly_coeffs,
    young_tableaux_count,
    young_tableaux_enumerated,
)
from polynum.triangulation import build_triangulation


def test_descents():
    assert descents((3, 1, 2)) == 1
    assert descents((1, 2, 3)) == 0
    assert descents((2, 1, 2, 1)) == 2


def test_multiset_permutations():
    words = list(multiset_permutations((2, 1)))
    assert sorted(words) == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]
    assert len(list(multiset_permutations((2, 2, 1)))) == 30


def test_eulerian_rows():
    assert [eulerian(3, i) for i in range(3)] == [1, 4, 1]
    assert [eulerian(4, i) for i in range(4)] == [1, 11, 11, 1]
    assert [eulerian(5, i) for i in range(5)] == [1, 26, 66, 26, 1]


@pytest.mark.parametrize("d", range(1, 8))
def test_eulerian_enumeration(d):
    assert tuple(eulerian(d, i) for i in range(d)) == eulerian_enumerated(d)
    assert sum(eulerian(d, i) for i in range(d)) == factorial(d)


@pytest.mark.parametrize("d", range(1, 9))
def test_worpitzky(d):
    assert all(worpitzky_check(d, n) for n in range(0, 25))


def test_generalized_eulerian_small():
    assert generalized_eulerian_row((1, 1)).trimmed() == (1, 1)
    assert generalized_eulerian_row((2, 1)).trimmed() == (1, 2)
    assert generalized_eulerian((2, 2), 1) == 4
    assert generalized_eulerian_row((1, 1, 1)).trimmed() == (1, 4, 1)


@pytest.mark.parametrize("dl", [(1, 1), (2, 1), (2, 2), (3, 2), (2, 2, 2), (4, 1, 1), (3, 3, 2)])
def test_generalized_eulerian_matches_enumeration(dl):
    row = generalized_eulerian_row(dl)
    assert row.trimmed() == generalized_eulerian_enumerated(dl).trimmed()
    assert row.total == factorial(sum(dl)) // reduce(lambda a, b: a * factorial(b), dl, 1)
    assert lattice_path_coeffs(dl).trimmed() == lattice_path_closed_form(dl).trimmed()


@pytest.mark.parametrize("dl", [(1, 1), (2, 1), (2, 2), (3, 1), (2, 1, 1)])
def test_generalized_eulerian_is_simplex_product_T1(dl):
    P = reduce(product, [make_simplex(k) for k in dl])
    a = decompose_T1_shelling(build_triangulation(P)).coeffs
    row = generalized_eulerian_row(dl)
    assert tuple(row[i] for i in range(len(a))) == a


def test_all_ones_is_eulerian():
    for d in range(1, 7):
        assert generalized_eulerian_row((1,) * d).trimmed() == tuple(eulerian(d, i) for i in range(d))


def test_stirling():
    assert stirling2(4, 2) == 7
    assert stirling2(5, 3) == 25
    assert [stirling2(4, r) for r in range(1, 5)] == [1, 7, 6, 1]
    with pytest.raises(ValueError):
        stirling2(2, 3)


@pytest.mark.parametrize("d", range(1, 8))
def test_stirling_enumeration_and_descents(d):
    for r in range(1, d + 1):
        assert stirling2(d, r) == set_partitions_count(d, r)
        assert stirling_descent_identity_check(d, r)


def test_narayana():
    assert [narayana(3, k) for k in range(1, 4)] == [1, 3, 1]
    assert [narayana(4, k) for k in range(1, 5)] == [1, 6, 6, 1]
    with pytest.raises(ValueError):
        narayana(3, 0)


def test_macmahon():
    assert macmahon_box(2, 2, 2) == 20
    assert macmahon_box(1, 1, 5) == 6
    assert macmahon_box(0, 3, 3) == 1
    assert macmahon_box(3, 3, 3) == 980


@pytest.mark.parametrize("a,b,c", [(1, 1, 1), (2, 2, 2), (2, 3, 3), (3, 3, 2), (1, 4, 6), (3, 2, 4)])
def test_macmahon_oracle(a, b, c):
    assert macmahon_box(a, b, c) == plane_partition_oracle(a, b, c)


def test_plane_partition_budget():
    with pytest.raises(BudgetExceeded):
        plane_partition_oracle(4, 4, 2)


def test_count_plane_arrays_matches_box():
    for i in range(0, 5):
        for c in range(0, 4):
            assert count_plane_arrays(i, [c, c]) == macmahon_box(i, 2, c)


def test_ballot_words():
    words = list(ballot_words(2, 2))
    assert sorted(words) == [(1, 1, 2, 2), (1, 2, 1, 2)]
    assert len(list(ballot_words(3, 3))) == 5


@pytest.mark.parametrize("m", range(1, 7))
def test_ballot_narayana(m):
    expected = tuple(narayana(m, k) for k in range(1, m + 1))
    assert ballot_path_coeffs(m, m).trimmed() == expected
    assert ballot_closed_form(m, m).trimmed() == expected


def test_ballot_three():
    assert ballot_path_coeffs(3, 3).trimmed() == (1, 3, 1)


@pytest.mark.parametrize("d1,d2", [(1, 0), (2, 1), (3, 1), (4, 2), (5, 3), (6, 6), (7, 2)])
def test_ballot_column_bounded(d1, d2):
    assert ballot_path_coeffs(d1, d2).trimmed() == ballot_closed_form_general(d1, d2).trimmed()


def test_ballot_box_form_needs_square_shape():
    # with unequal sides the 2 x d1 box count overshoots the paths
    assert ballot_path_coeffs(2, 1).trimmed() == (1, 1)
    assert ballot_closed_form(2, 1).trimmed() != (1, 1)


def test_ballot_range():
    with pytest.raises(ValueError):
        ballot_path_coeffs(1, 2)


def test_young_counts():
    assert young_tableaux_count(2, 2) == 2
    assert young_tableaux_count(2, 3) == 5
    assert young_tableaux_count(3, 3) == 42
    assert young_tableaux_count(3, 4) == 462


@pytest.mark.parametrize("l,m", [(1, 5), (2, 2), (2, 3), (3, 3), (2, 5), (3, 4), (4, 3)])
def test_young_enumeration(l, m):
    assert young_tableaux_count(l, m) == young_tableaux_enumerated(l, m)


def test_young_descents():
    assert young_poly_coeffs(2, 2).trimmed() == (1, 1)
    assert young_poly_coeffs(3, 3).trimmed() == (1, 10, 20, 10, 1)
    assert young_closed_form(3, 3).trimmed() == (1, 10, 20, 10, 1)


@pytest.mark.parametrize("l,m", [(1, 1), (1, 4), (2, 2), (2, 3), (3, 2), (2, 4), (3, 3)])
def test_young_closed_form(l, m):
    assert young_closed_form(l, m).trimmed() == young_poly_coeffs(l, m).trimmed()


def test_tableaux_are_decreasing():
    for w in yamanouchi_words(2, 3):
        grid = tableau_of_word(w, 2, 3)
        assert sorted(x for row in grid for x in row) == list(range(1, 7))
        assert all(row[j] > row[j + 1] for row in grid for j in range(2))
        assert all(grid[0][j] > grid[1][j] for j in range(3))


def test_young_budget():
    with pytest.raises(BudgetExceeded):
        young_poly_coeffs(4, 4)


@settings(max_examples=30, deadline=None)
@given(dl=st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_generalized_eulerian_property(dl):
    assert generalized_eulerian_row(dl).trimmed() == generalized_eulerian_enumerated(dl).trimmed()


@settings(max_examples=30, deadline=None)
@given(d=st.integers(1, 6))
def test_eulerian_by_permutations(d):
    counts = [0] * d
    for p in permutations(range(d)):
        counts[descents(p)] += 1
    assert tuple(counts) == tuple(eulerian(d, i) for i in range(d))


@settings(max_examples=30, deadline=None)
@given(d=st.integers(1, 10), r=st.integers(1, 10))
def test_surjections(d, r):
    if r > d:
        return
    surj = sum((-1) ** j * comb(r, j) * (r - j) ** d for j in range(r + 1))
    assert surj == factorial(r) * stirling2(d, r)
