import random

from hypothesis import given, settings, strategies as st

from molpreduce.instances import random_bounded_set
from molpreduce.linalg import Q, dot
from molpreduce.lp import LinearProgram, lp_solve
from molpreduce.polyhedra import HPolyhedron
from molpreduce.solver import _brute_force_vertices


def test_min_over_interval():
    res = lp_solve(LinearProgram((1,), HPolyhedron.box([0], [1])))
    assert res.status == "optimal" and res.value == 0 and res.x == (0,)


def test_infeasible():
    S = HPolyhedron.build([[1]], [1], [None], [None], [0])
    assert lp_solve(LinearProgram((1,), S)).status == "infeasible"


def test_crossed_bounds_infeasible():
    assert lp_solve(LinearProgram((1,), HPolyhedron.box([2], [1]))).status == "infeasible"


def test_unbounded():
    S = HPolyhedron.build([[1]], [0], [None])
    assert lp_solve(LinearProgram((-1,), S)).status == "unbounded"


def test_max_and_equality_rows():
    # max x + y  s.t.  x + 2y = 4, 0 <= x <= 3, y free
    S = HPolyhedron.build([[1, 2]], [4], [4], [0, None], [3, None])
    res = lp_solve(LinearProgram((1, 1), S, "max"))
    assert res.value == Q("7/2")
    assert res.x == (3, Q("1/2"))


def test_duals_certify_optimum():
    # min x + y  s.t.  x + 2y >= 2, 3x + y >= 3
    S = HPolyhedron.build([[1, 2], [3, 1]], [2, 3], [None, None])
    res = lp_solve(LinearProgram((1, 1), S), duals=True)
    y = res.duals
    assert all(v >= 0 for v in y)
    assert (y[0] + 3 * y[1], 2 * y[0] + y[1]) == (1, 1)
    assert 2 * y[0] + 3 * y[1] == res.value


def test_degenerate_cycling_candidate_terminates():
    # Beale-style degenerate program; Bland's rule must terminate
    S = HPolyhedron.build(
        [["1/4", -60, "-1/25", 9], ["1/2", -90, "-1/50", 3], [0, 0, 1, 0]],
        [None, None, None],
        [0, 0, 1],
        [0, 0, 0, 0],
        [None] * 4,
    )
    res = lp_solve(LinearProgram(("-3/4", 150, "-1/50", 6), S))
    assert res.optimal and res.value == Q("-1/20")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_optimum_matches_best_vertex(seed, n):
    rng = random.Random(seed)
    S = random_bounded_set(rng, n)
    c = tuple(rng.randint(-5, 5) for _ in range(n))
    res = lp_solve(LinearProgram(c, S))
    verts = _brute_force_vertices(S)
    assert res.optimal
    assert res.value == min(dot(c, v) for v in verts)
    assert S.contains(res.x)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_deterministic_basis(seed):
    rng = random.Random(seed)
    S = random_bounded_set(rng, 3)
    c = tuple(rng.randint(-5, 5) for _ in range(3))
    a, b = lp_solve(LinearProgram(c, S)), lp_solve(LinearProgram(c, S))
    assert a.basis == b.basis and a.x == b.x
