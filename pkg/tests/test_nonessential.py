import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import PENTAGON_P, fan_objectives, wedge_set, cut_wedge_set, pentagon
from molpreduce.errors import NotAnMolp, UnboundedFeasibleSet, ZeroMatrix
from molpreduce.instances import random_bounded_set, random_molp
from molpreduce.linalg import Q, RationalMatrix, rank_factorize
from molpreduce.nonessential import (
    ConicCertificate,
    essential_rows_via_hrep,
    is_conic_combination,
    nonessential_system,
    serialize_report,
    verify_nonessential,
)
from molpreduce.polyhedra import HPolyhedron, PolyhedralCone, cone_from_matrix, cones_equal
from molpreduce.problems import VectorProblem
from molpreduce.reduction import reduce_molp
from molpreduce.solver import oracle_efficient_set


def test_sum_row_is_removed():
    r = nonessential_system([[1, 0], [0, 1], [1, 1]])
    assert r.removed == [2] and r.retained == [0, 1]
    assert r.certificate_for(2).multipliers == (1, 1)
    assert r.certificate_for(2).check([[1, 0], [0, 1], [1, 1]])


def test_report_text():
    r = nonessential_system(fan_objectives())
    assert serialize_report(r) == (
        "method extreme-directions\n"
        "retained 0 3\n"
        "removed 1 : lambda 0=1 3=1\n"
        "removed 2 : lambda 0=1 3=3\n"
    )


def test_parallel_rows_keep_first():
    r = nonessential_system([[2, 4], [1, 0], [1, 2]])
    assert r.retained == [0, 1] and r.removed == [2]
    assert r.certificate_for(2).multipliers == (Q("1/2"), 0)
    assert r.alternatives == 1


def test_rows_with_lineality():
    # (1,0) and (-1,0) span a line; (0,1) is needed, (1,1) is not
    P = [[1, 0], [-1, 0], [0, 1], [1, 1]]
    r = nonessential_system(P)
    assert r.retained == [0, 1, 2] and r.removed == [3]
    assert all(c.check(P) for c in r.certificates)


def test_zero_matrix():
    with pytest.raises(ZeroMatrix):
        nonessential_system([[0, 0]])


def test_conic_combination_lp():
    assert is_conic_combination([1, 1], [[1, 0], [0, 1]]).multipliers == (1, 1)
    assert is_conic_combination([-1, 0], [[1, 0], [0, 1]]) is None
    assert is_conic_combination([0, 0], []) is not None
    assert is_conic_combination([1, 0], []) is None


def test_certificate_rejects_negative_multiplier():
    assert not ConicCertificate(0, (1,), (Q(-1),)).check([[1, 0], [-1, 0]])


def test_nonessential_without_conic_combination():
    P = fan_objectives()
    # (0, 1) is not generated by the other three rows, yet it can be dropped here
    assert is_conic_combination(P[3], P[:3]) is None
    assert verify_nonessential(VectorProblem.molp(P, wedge_set()), {3})


def test_extra_constraint_makes_objective_essential():
    assert not verify_nonessential(VectorProblem.molp(fan_objectives(), cut_wedge_set()), {3})


def test_nonessential_sets_are_not_closed_under_union():
    molp = VectorProblem.molp(fan_objectives(), wedge_set())
    assert verify_nonessential(molp, {2})
    assert verify_nonessential(molp, {3})
    assert not verify_nonessential(molp, {2, 3})


def test_verify_edge_cases(square):
    molp = VectorProblem.molp([[1, 0], [0, 1]], square)
    assert verify_nonessential(molp, set())
    # dropping every objective makes the whole square efficient
    assert not verify_nonessential(molp, {0, 1})
    with pytest.raises(NotAnMolp):
        verify_nonessential(VectorProblem(RationalMatrix.identity(2), square, PolyhedralCone(RationalMatrix.from_rows([[1, 1]]))), {0})
    free = HPolyhedron.build(RationalMatrix.zeros(0, 2), [], [], [0, 0], [None, None])
    with pytest.raises(UnboundedFeasibleSet):
        verify_nonessential(VectorProblem.molp([[1, 0], [0, 1]], free), {0})


def test_hrep_route_on_pentagon(pentagon_molp):
    f = rank_factorize(RationalMatrix.from_rows(PENTAGON_P))
    Pstar, report = essential_rows_via_hrep(f)
    assert report.retained == [0, 1] and report.removed == [2, 3]
    assert Pstar == RationalMatrix.identity(2)
    assert all(c.check(PENTAGON_P) for c in report.certificates)
    smaller = VectorProblem.molp(Pstar, pentagon(), "max")
    assert oracle_efficient_set(smaller).vertex_set() == oracle_efficient_set(pentagon_molp).vertex_set()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_planted_rows_are_removed(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 3)
    base = [[rng.randint(-1, 3) for _ in range(n)] for _ in range(rng.randint(2, 4))]
    base = [b for b in base if sum(b) > 0] or [[1] * n]
    planted = []
    for _ in range(rng.randint(1, 2)):
        lam = [rng.randint(0, 2) for _ in base]
        if not any(lam):
            lam[0] = 1
        planted.append([sum(l * b[i] for l, b in zip(lam, base)) for i in range(n)])
    P = base + planted
    r = nonessential_system(P)
    assert set(range(len(base), len(P))) <= set(r.removed)
    assert all(c.check(P) for c in r.certificates)
    # same cone: equal polars
    assert cones_equal(cone_from_matrix(RationalMatrix.from_rows(P)), cone_from_matrix(RationalMatrix.from_rows([P[i] for i in r.retained])))
    S = random_bounded_set(rng, n, 4)
    assert verify_nonessential(VectorProblem.molp(P, S), r.removed)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_hrep_route_keeps_efficient_set(seed):
    molp, _ = random_molp(random.Random(seed), 3, 5, 3)
    r = reduce_molp(molp)
    Pstar, report = essential_rows_via_hrep(r.factorization)
    assert all(c.check(molp.P) for c in report.certificates)
    smaller = VectorProblem.molp(Pstar, molp.S, molp.sense)
    assert oracle_efficient_set(smaller).vertex_set() == oracle_efficient_set(molp).vertex_set()


def test_more_conic_examples():
    assert is_conic_combination([2, 1], [[1, 0], [1, 1]]).multipliers == (1, 1)
    assert nonessential_system(RationalMatrix.identity(3)).removed == []


def test_middle_pair_removed_together():
    r = nonessential_system(fan_objectives())
    assert r.removed == [1, 2]
    assert verify_nonessential(VectorProblem.molp(fan_objectives(), wedge_set()), {1, 2})


def test_hrep_route_examples():
    from molpreduce.linalg import Factorization

    L = RationalMatrix.from_rows([[1, 0], [0, 1], [1, 1]])
    Pstar, report = essential_rows_via_hrep(Factorization(L, RationalMatrix.identity(2), 2, True))
    assert Pstar == RationalMatrix.identity(2) and report.removed == [2]
    R = RationalMatrix.from_rows([[1, 2, 0], [0, 1, 1]])
    Pstar, report = essential_rows_via_hrep(Factorization(RationalMatrix.identity(2), R, 2, True))
    assert Pstar == R and report.removed == []
