"""Verification suites shared by the CLI and the tests."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable

from ._exact import simplex_number
from .decomposition import (
    THEOREMS,
    PolytopalComplex,
    convert_to_T1,
    decompose,
    decompose_T1_solve,
    moebius_check,
)
from .expr import build
from .face_lattice import Polytope, make_cross, make_cube, make_hypersimplex, make_simplex
from .identities import (
    ballot_closed_form,
    ballot_closed_form_general,
    ballot_path_coeffs,
    eulerian,
    eulerian_enumerated,
    generalized_eulerian_enumerated,
    generalized_eulerian_row,
    lattice_path_closed_form,
    macmahon_box,
    narayana,
    plane_partition_oracle,
    set_partitions_count,
    stirling2,
    stirling_descent_identity_check,
    worpitzky_check,
    young_closed_form,
    young_poly_coeffs,
    young_tableaux_count,
    young_tableaux_enumerated,
)
from .numbers import NumberEngine, geometric_count, product_formula_check, vertex_description_count
from .triangulation import build_triangulation

SUITES = ("counts", "decompositions", "identities", "moebius", "product")


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


def standard_polytopes(max_d: int) -> list[Polytope]:
    out = []
    for d in range(1, max_d + 1):
        out += [make_simplex(d), make_cross(d), make_cube(d)]
    for d in range(3, min(max_d + 1, 5) + 1):
        out += [make_hypersimplex(d, k) for k in range(1, d)]
    return out


def hypersimplex_lattice_count(d: int, k: int, n: int) -> int:
    """Integer points with sum k(n-1) and coordinates in [0, n-1]."""
    if n == 0:
        return 0
    return sum(1 for x in itertools.product(range(n), repeat=d) if sum(x) == k * (n - 1))


def _three_way(P: Polytope, n_max: int) -> Check:
    T = build_triangulation(P)
    engine = NumberEngine(P, T.apexes)
    top = P.lattice.top
    for n in range(n_max + 1):
        for interior in (False, True):
            rec = engine.interior(top, n) if interior else engine.number(top, n)
            vert = vertex_description_count(P, T.apexes, n, interior)
            geo = geometric_count(T, n, interior)
            if not rec == vert == geo:
                kind = "interior " if interior else ""
                return Check(
                    f"counts.three_way.{P.name}", False,
                    f"{kind}n={n}: recurrence {rec}, vertex {vert}, geometric {geo}",
                )
    return Check(f"counts.three_way.{P.name}", True)


def _disjoint_union(P: Polytope, n_max: int) -> Check:
    engine = NumberEngine(P)
    top = P.lattice.top
    # at n = 1 every vertex contributes 1 while P(1) = 1, so the identity starts at n = 2
    for n in [0] + list(range(2, n_max + 1)):
        total = sum(engine.interior(g, n) for g in P.lattice.subfaces[top])
        if total != engine.number(top, n):
            return Check(f"counts.disjoint_union.{P.name}", False, f"n={n}: {total}")
    return Check(f"counts.disjoint_union.{P.name}", True)


def suite_counts(polytopes: Iterable[Polytope], n_max: int = 6) -> list[Check]:
    checks = []
    for P in polytopes:
        checks.append(_three_way(P, n_max))
        checks.append(_disjoint_union(P, n_max))
        if P.name.startswith("simplex:"):
            d = P.dim
            ok = all(
                NumberEngine(P).number(P.lattice.top, n) == comb(n - 1 + d, d)
                for n in range(1, 2 * n_max)
            )
            checks.append(Check(f"counts.simplex_closed_form.{P.name}", ok))
        if P.name.startswith("hypersimplex:"):
            d, k = map(int, P.name.split(":")[1].split(","))
            engine = NumberEngine(P)
            bad = [
                n for n in range(n_max + 1)
                if engine.number(P.lattice.top, n) != hypersimplex_lattice_count(d, k, n)
            ]
            checks.append(Check(f"counts.hypersimplex_lattice.{P.name}", not bad, f"n={bad}" if bad else ""))
    facet_cut = all(
        simplex_number(d, n) - simplex_number(d - 1, n) == simplex_number(d, n - 1)
        for d in range(1, 9) for n in range(1, 31)
    )
    checks.append(Check("counts.facet_cut", facet_cut))
    summation = all(
        simplex_number(k + 1, n) == sum(simplex_number(k, i) for i in range(1, n + 1))
        for k in range(0, 8) for n in range(1, 31)
    )
    checks.append(Check("counts.summation", summation))
    return checks


def suite_decompositions(polytopes: Iterable[Polytope]) -> list[Check]:
    checks = []
    for P in polytopes:
        d = P.dim
        if d < 1:
            continue
        T = build_triangulation(P)
        engine = NumberEngine(P, T.apexes)
        values = engine.sequence(2 * d + 2)
        solved = decompose_T1_solve(values[1 : d + 1], d)
        for th in THEOREMS:
            form = decompose(T, th)
            bad = [n for n in range(2 * d + 3) if form.evaluate(n) != values[n]]
            checks.append(Check(
                f"decompositions.{th}.{P.name}", not bad,
                f"{'terms' if th == 'T32' else 'coeffs'} "
                f"{[list(t) for t in form.terms] if th == 'T32' else list(form.coeffs)} disagree at n={bad}"
                if bad else "",
            ))
            if th == "T1":
                same = form.coeffs == solved.coeffs
                checks.append(Check(
                    f"decompositions.T1_dual_path.{P.name}", same,
                    "" if same else f"shelling {form.coeffs} vs solve {solved.coeffs}",
                ))
            elif th != "T32":
                try:
                    conv = convert_to_T1(form).coeffs
                except ValueError as exc:
                    conv = str(exc)
                checks.append(Check(
                    f"decompositions.{th}_to_T1.{P.name}", conv == solved.coeffs,
                    "" if conv == solved.coeffs else f"converted {conv} vs {solved.coeffs}",
                ))
    return checks


def suite_identities(max_d: int = 5) -> list[Check]:
    checks = []

    def add(name: str, fn: Callable[[], bool]) -> None:
        checks.append(Check(f"identities.{name}", bool(fn())))

    add("worpitzky", lambda: all(worpitzky_check(d, n) for d in range(1, max_d + 2) for n in range(0, 21)))
    add("stirling_descent", lambda: all(
        stirling_descent_identity_check(d, r) for d in range(1, 9) for r in range(1, d + 1)))
    add("stirling_enumeration", lambda: all(
        stirling2(d, r) == set_partitions_count(d, r) for d in range(1, 8) for r in range(1, d + 1)))
    add("eulerian_enumeration", lambda: all(
        tuple(eulerian(d, i) for i in range(d)) == eulerian_enumerated(d) for d in range(1, 8)))
    add("macmahon_oracle", lambda: all(
        macmahon_box(a, b, c) == plane_partition_oracle(a, b, c)
        for a in range(0, 10) for b in range(0, 10) if a * b <= 9 for c in range(0, 7)))
    add("macmahon_symmetry", lambda: all(
        len({macmahon_box(*p) for p in itertools.permutations((a, b, c))}) == 1
        for a in range(4) for b in range(4) for c in range(4)))
    add("generalized_eulerian", lambda: all(
        generalized_eulerian_row(dl).trimmed() == generalized_eulerian_enumerated(dl).trimmed()
        == lattice_path_closed_form(dl).trimmed()
        for l in range(1, 4) for dl in itertools.product(range(1, max_d + 1), repeat=l)
        if sum(dl) <= 10))
    add("narayana_ballot", lambda: all(
        ballot_path_coeffs(m, m).trimmed() == tuple(narayana(m, k) for k in range(1, m + 1))
        == ballot_closed_form(m, m).trimmed()
        for m in range(1, min(max_d, 6) + 1)))
    add("ballot_column_bounded", lambda: all(
        ballot_path_coeffs(a, b).trimmed() == ballot_closed_form_general(a, b).trimmed()
        for a in range(0, 7) for b in range(0, a + 1) if a + b <= 12))
    add("young_hook_length", lambda: all(
        young_tableaux_count(l, m) == young_tableaux_enumerated(l, m) == young_poly_coeffs(l, m).total
        for l in range(1, 13) for m in range(1, 13) if l * m <= 12))
    add("young_closed_form", lambda: all(
        young_closed_form(l, m).trimmed() == young_poly_coeffs(l, m).trimmed()
        for l in range(1, 10) for m in range(1, 10) if l * m <= 9))
    return checks


def suite_moebius(polytopes: Iterable[Polytope] | None = None) -> list[Check]:
    if polytopes is None:
        polytopes = [make_simplex(3), make_cube(2), make_cube(3), make_cross(3)]
    checks = []
    for P in polytopes:
        T = build_triangulation(P)
        for label, C, tri in (
            ("boundary", PolytopalComplex.boundary_of(P.lattice), None),
            ("triangulation", PolytopalComplex.from_triangulation(T), T),
        ):
            report = moebius_check(C, tri)
            checks.append(Check(
                f"moebius.{label}.{P.name}", report.passed, "; ".join(report.violations[:3])))
    return checks


def suite_product(max_total_dim: int = 5, n_max: int = 10) -> list[Check]:
    factors = [make_simplex(0)] + standard_polytopes(min(max_total_dim, 4))
    checks = []
    for P, Q in itertools.combinations_with_replacement(factors, 2):
        if P.dim + Q.dim > max_total_dim or P.dim + Q.dim == 0:
            continue
        report = product_formula_check(P, Q, n_max)
        checks.append(Check(
            f"product.{P.name}x{Q.name}", report.passed, "; ".join(report.violations[:3])))
    return checks


def run_suite(name: str, max_d: int | None = None, expr: str | None = None) -> list[Check]:
    if name == "all":
        out = []
        for s in SUITES:
            out += run_suite(s, max_d, expr)
        return sorted(out, key=lambda c: c.name)
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}, all")
    polytopes = [build(expr)] if expr else None
    if name == "counts":
        checks = suite_counts(polytopes or standard_polytopes(max_d or 3))
    elif name == "decompositions":
        checks = suite_decompositions(polytopes or standard_polytopes(max_d or 3))
    elif name == "identities":
        checks = suite_identities(max_d or 5)
    elif name == "moebius":
        checks = suite_moebius(polytopes)
    else:
        checks = suite_product(max_d or 5)
    return sorted(checks, key=lambda c: c.name)
