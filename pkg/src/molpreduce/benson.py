"""Primal outer approximation of the upper image ``P[S] + C``.

The outer polyhedron is kept as an incremental double description in
homogeneous coordinates ``(z, t)``.  Each round solves, for every new outer
vertex ``t``, the scalarization ``min s  s.t. x in S, t + s c - Px in C``
with ``c`` interior to ``C``.  The vertex with the largest ``s`` is cut off
by the supporting halfspace read from the dual solution.
"""

from __future__ import annotations

from typing import Optional

from gmpy2 import mpq

from .errors import ConeNotPointed, ConeNotSolid, UnboundedFeasibleSet
from .linalg import ONE, ZERO, RationalMatrix, dot, primitive, rank
from .lp import LinearProgram, lp_solve
from .polyhedra import (
    DEFAULT_DIMENSION_CAP,
    DoubleDescription,
    HPolyhedron,
    _check_cap,
    double_description,
    extreme_directions,
)
from .problems import INFEASIBLE, OPTIMAL, SolveResult, VectorProblem, make_result


def _scalar_min(S, w, P: RationalMatrix) -> tuple[mpq, tuple]:
    c = tuple(dot(w, P.col(j)) for j in range(P.cols))
    res = lp_solve(LinearProgram(c, S))
    if not res.optimal:
        raise UnboundedFeasibleSet(f"weighted-sum LP is {res.status}")
    return res.value, P @ res.x


def facet_rows(B: RationalMatrix, rays) -> RationalMatrix:
    """Rows of ``B`` defining facets of the pointed solid cone ``{z | Bz >= 0}``.

    A row is a facet when the extreme rays it vanishes on span a hyperplane;
    of positively parallel rows the first is kept.
    """
    q = B.cols
    seen, keep = set(), []
    for i in range(B.rows):
        b = B.row(i)
        key = primitive(b)
        if not any(key) or key in seen:
            continue
        tight = [r for r in rays if dot(b, r) == 0]
        if (rank(tight) if tight else 0) == q - 1:
            seen.add(key)
            keep.append(b)
    return RationalMatrix.from_rows(keep, cols=q)


def solve_benson(p: VectorProblem, cap: int = DEFAULT_DIMENSION_CAP, max_iter: Optional[int] = None) -> SolveResult:
    if p.generalized:
        raise ValueError("solve_benson handles ordinary minimality only")
    C = p.C
    if not C.is_pointed():
        raise ConeNotPointed("ordering cone has a nontrivial lineality space")
    if not C.is_solid():
        raise ConeNotSolid("ordering cone has empty interior")
    q = p.q
    _check_cap(q + 1, cap)

    V = double_description(p.S, cap)
    if not V.vertices:
        return SolveResult(INFEASIBLE)
    if not V.bounded:
        raise UnboundedFeasibleSet("solve_benson needs a bounded feasible set")

    P = p.objective()
    rays = extreme_directions(C)
    Bm = facet_rows(C.B, rays)
    c = [sum((ray[i] for ray in rays), 0) for i in range(q)]
    Bc = Bm @ c
    BP = Bm @ P

    # P2 feasible region in (x, s): S rows, then -BP x + Bc s >= -B t.
    n = p.n
    S = p.S
    base_rows = [tuple(S.A.row(i)) + (ZERO,) for i in range(S.A.rows)]
    cone_rows = [tuple(-v for v in BP.row(i)) + (Bc[i],) for i in range(Bm.rows)]
    A = RationalMatrix.from_rows(base_rows + cone_rows, cols=n + 1)

    def p2(t):
        Bt = Bm @ t
        region = HPolyhedron(
            A,
            S.row_lb + tuple(-v for v in Bt),
            S.row_ub + (None,) * Bm.rows,
            S.var_lb + (None,),
            S.var_ub + (None,),
        )
        res = lp_solve(LinearProgram((ZERO,) * n + (ONE,), region), duals=True)
        if not res.optimal:
            raise RuntimeError(f"scalarization LP is {res.status}")
        u = res.duals[S.A.rows:]
        w = tuple(sum((u[r] * Bm[r, i] for r in range(Bm.rows)), ZERO) for i in range(q))
        if dot(w, c) != 1:
            raise RuntimeError("dual multipliers do not normalize against the direction")
        return res.value, w

    dd = DoubleDescription(q + 1)
    dd.add(tuple([0] * q + [1]))
    cuts: list[tuple[tuple[int, ...], mpq]] = []
    attained = set()  # image points known to lie in P[S]

    def add_cut(w):
        w = primitive(w)
        beta, z = _scalar_min(S, w, P)
        attained.add(z)
        cuts.append((w, beta))
        dd.add(tuple(list(w) + [-beta]))

    for r in range(Bm.rows):
        add_cut(Bm.row(r))

    depth: dict[tuple, tuple] = {}
    lp_count = len(cuts)
    rounds = 0
    while True:
        rounds += 1
        best = None
        for r in dd.rays:
            if r[-1] <= 0:
                continue
            t = tuple(mpq(x, r[-1]) for x in r[:-1])
            if t not in depth:
                if t in attained:
                    depth[t] = (ZERO, None)
                else:
                    depth[t] = p2(t)
                    lp_count += 1
            s, w = depth[t]
            if s > 0 and (best is None or s > best[0] or (s == best[0] and t < best[1])):
                best = (s, t, w)
        if best is None or (max_iter is not None and rounds > max_iter):
            break
        add_cut(best[2])
        lp_count += 1

    outer_vertices = sorted(
        tuple(mpq(x, r[-1]) for x in r[:-1]) for r in dd.rays if r[-1] > 0
    )
    # A vertex x of S is efficient iff Px lies on a bounded face of the upper
    # image: no extreme ray of C stays within all cuts active at Px.
    eff = []
    for x in V.vertices:
        z = P @ x
        active = [w for w, beta in cuts if dot(w, z) == beta]
        if not active:
            continue
        if any(all(dot(w, ray) == 0 for w in active) for ray in rays):
            continue
        eff.append(x)
    return make_result(
        OPTIMAL,
        eff,
        p.P,
        upper_image_vertices=outer_vertices,
        cuts=len(cuts),
        lps=lp_count,
    )
