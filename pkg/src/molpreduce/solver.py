"""Minimality predicates, the enumeration solver and a brute-force oracle.

All problems are handled as minimization problems with objective
``p.objective()``; reported minimal points are images under the original
``P`` so a maximization problem reports its maximal points.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from gmpy2 import mpq

from .errors import NotPointed, TooLarge, UnboundedFeasibleSet
from .linalg import ONE, ZERO, Q, RationalMatrix, dot, rank, solve_square
from .lp import LinearProgram, lp_solve
from .polyhedra import HPolyhedron, double_description
from .problems import INFEASIBLE, OPTIMAL, SolveResult, VectorProblem, make_result

__all__ = [
    "DominanceQuery",
    "LinearProgram",
    "is_generalized_minimal",
    "is_minimal",
    "lp_solve",
    "oracle_efficient_set",
    "solve_enum",
]


@dataclass(frozen=True)
class DominanceQuery:
    """Is ``point`` (an image point under ``problem.objective()``) minimal?"""

    point: tuple
    problem: VectorProblem


class _ConeSlack:
    """LP pieces for ``x in S, B (z - Px) >= 0`` shared by the predicates."""

    def __init__(self, p: VectorProblem):
        self.p = p
        self.B = p.C.B
        self.P = p.objective()
        self.BP = self.B @ self.P

    def region(self, z: Sequence) -> HPolyhedron:
        # B(z - Px) >= 0  <=>  -(BP) x >= -Bz
        Bz = self.B @ z
        rows = [tuple(-v for v in self.BP.row(i)) for i in range(self.B.rows)]
        return self.p.S.add_rows(rows, [-v for v in Bz], [None] * len(rows))

    def max_slack(self, z, weights) -> mpq:
        """Max of ``w.B(z - Px)`` over the region (always >= 0 when z is an image)."""
        w = [Q(v) for v in weights]
        c = tuple(-dot(w, self.BP.col(j)) for j in range(self.P.cols))
        res = lp_solve(LinearProgram(c, self.region(z), "max"))
        if not res.optimal:
            raise ValueError(f"dominance LP is {res.status}; is the point in the image?")
        return res.value + dot(w, self.B @ z)

    def image_is_singleton(self, z) -> bool:
        """``{Px | x in S, B(z - Px) = 0}`` is exactly ``{z}``."""
        Bz = self.B @ z
        rows = [tuple(-v for v in self.BP.row(i)) for i in range(self.B.rows)]
        neg = [-v for v in Bz]
        region = self.p.S.add_rows(rows, neg, neg)
        for i in range(self.P.rows):
            obj = self.P.row(i)
            for sense in ("min", "max"):
                res = lp_solve(LinearProgram(obj, region, sense))
                if not res.optimal or res.value != z[i]:
                    return False
        return True


def _minimal(cs: _ConeSlack, z, pointed: bool) -> bool:
    if cs.max_slack(z, [ONE] * cs.B.rows) != 0:
        return False
    return pointed or cs.image_is_singleton(z)


def _generalized_minimal(cs: _ConeSlack, z) -> bool:
    r = cs.B.rows
    for i in range(r):
        e = [ONE if t == i else ZERO for t in range(r)]
        if cs.max_slack(z, e) > 0:
            return False
    return True


def is_minimal(q: DominanceQuery) -> bool:
    """``z`` has no other image point in ``z - C``; requires a pointed cone."""
    if not q.problem.C.is_pointed():
        raise NotPointed("is_minimal needs a pointed ordering cone")
    return _minimal(_ConeSlack(q.problem), tuple(Q(v) for v in q.point), True)


def is_generalized_minimal(q: DominanceQuery) -> bool:
    """Every image point in ``z - C`` also lies in ``z + C``."""
    return _generalized_minimal(_ConeSlack(q.problem), tuple(Q(v) for v in q.point))


def solve_enum(p: VectorProblem, cap: int | None = None) -> SolveResult:
    """Enumerate vertices of ``S`` and keep those with (generalized) minimal image."""
    V = double_description(p.S) if cap is None else double_description(p.S, cap)
    if not V.vertices:
        return SolveResult(INFEASIBLE)
    if not V.bounded:
        raise UnboundedFeasibleSet("solve_enum needs a bounded feasible set")
    cs = _ConeSlack(p)
    pointed = p.C.is_pointed()
    verdict: dict[tuple, bool] = {}
    eff = []
    for x in V.vertices:
        z = cs.P @ x
        if z not in verdict:
            if p.generalized:
                verdict[z] = _generalized_minimal(cs, z)
            else:
                verdict[z] = _minimal(cs, z, pointed)
        if verdict[z]:
            eff.append(x)
    return make_result(OPTIMAL, eff, p.P, vertices=len(V.vertices))


# -- oracle --------------------------------------------------------------------

ORACLE_MAX_VERTICES = 200
ORACLE_MAX_BASES = 300_000


def _brute_force_vertices(S: HPolyhedron) -> list[tuple]:
    """Vertices as feasible solutions of every nonsingular n-subset of constraints.

    A float pass discards singular or clearly infeasible subsets; survivors
    and near-singular subsets are decided exactly.
    """
    cons = S.inequalities()
    n, m = S.dim, len(cons)
    if m < n:
        return []
    if comb(m, n) > ORACLE_MAX_BASES:
        raise TooLarge(f"{comb(m, n)} candidate bases exceed the oracle limit")
    G = np.array([[float(v) for v in a] for a, _ in cons]).reshape(m, n)
    h = np.array([float(b) for _, b in cons])
    subsets = np.array(list(combinations(range(m), n)), dtype=np.intp)
    mats = G[subsets]
    dets = np.linalg.det(mats)
    scale = np.prod(np.maximum(np.abs(mats).max(axis=2), 1e-300), axis=1)
    regular = np.abs(dets) > 1e-9 * scale
    candidates = list(np.nonzero(~regular)[0])
    if regular.any():
        sols = np.linalg.solve(mats[regular], h[subsets[regular]][..., None])[..., 0]
        slack = sols @ G.T - h
        tol = 1e-6 * (1 + np.abs(h) + np.abs(sols) @ np.abs(G).T)
        ok = (slack >= -tol).all(axis=1)
        candidates += list(np.nonzero(regular)[0][ok])
    found = set()
    for t in sorted(candidates):
        idx = subsets[t]
        rows = [cons[i][0] for i in idx]
        if rank(rows) < n:
            continue
        x = tuple(v[0] for v in solve_square(rows, [[cons[i][1]] for i in idx]))
        if all(dot(a, x) >= b for a, b in cons):
            found.add(x)
            if len(found) > ORACLE_MAX_VERTICES:
                raise TooLarge(f"more than {ORACLE_MAX_VERTICES} vertices")
    return sorted(found)


def _bounded_by_lp(S: HPolyhedron) -> bool:
    for j in range(S.dim):
        e = tuple(ONE if t == j else ZERO for t in range(S.dim))
        for sense in ("min", "max"):
            if lp_solve(LinearProgram(e, S, sense)).status == "unbounded":
                return False
    return True


def _in_cone(B: RationalMatrix, d) -> bool:
    return all(v >= 0 for v in B @ d)


def _hull_dominated(B: RationalMatrix, z, pts: list, generalized: bool) -> bool:
    """Is some convex combination ``y`` of ``pts`` strictly below ``z``?

    LP over weights ``lam >= 0``, ``sum lam = 1``, ``B(z - y) >= 0``.
    """
    q, k = len(z), len(pts)
    Y = [[pts[v][i] for v in range(k)] for i in range(q)]  # y = Y lam
    BY = [[dot(B.row(r), [Y[i][v] for i in range(q)]) for v in range(k)] for r in range(B.rows)]
    Bz = B @ z
    # B z - BY lam >= 0  <=>  BY lam <= Bz
    rows = BY + [[ONE] * k]
    lb = [None] * B.rows + [ONE]
    ub = list(Bz) + [ONE]
    region = HPolyhedron.build(rows, lb, ub, [ZERO] * k, [None] * k, dim=k)
    obj = tuple(-sum((BY[r][v] for r in range(B.rows)), ZERO) for v in range(k))
    res = lp_solve(LinearProgram(obj, region, "max"))
    gap = res.value + sum(Bz, ZERO)
    if gap > 0:
        return True
    if generalized or rank(B) == q:
        return False
    # Points of the hull with B(z - y) = 0 must all equal z.
    tight = HPolyhedron.build(rows, ub, ub, [ZERO] * k, [None] * k, dim=k)
    for i in range(q):
        for sense in ("min", "max"):
            r = lp_solve(LinearProgram(tuple(Y[i]), tight, sense))
            if r.value != z[i]:
                return True
    return False


def oracle_efficient_set(p: VectorProblem) -> SolveResult:
    """Independent brute-force reference for the efficient vertex set."""
    S = p.S
    if lp_solve(LinearProgram(tuple([ZERO] * S.dim), S)).status == INFEASIBLE:
        return SolveResult(INFEASIBLE)
    if not _bounded_by_lp(S):
        raise UnboundedFeasibleSet("oracle needs a bounded feasible set")
    verts = _brute_force_vertices(S)
    P = p.objective()
    B = p.C.B
    images = {}
    for x in verts:
        images.setdefault(P @ x, []).append(x)
    pts = sorted(images)

    def beats(y, z) -> bool:
        d = tuple(a - b for a, b in zip(z, y))
        if not _in_cone(B, d):
            return False
        if p.generalized:
            return not _in_cone(B, tuple(-v for v in d))
        return y != z

    eff = []
    for z in pts:
        if any(beats(y, z) for y in pts if y != z):
            continue
        if _hull_dominated(B, z, pts, p.generalized):
            continue
        eff.extend(images[z])
    return make_result(OPTIMAL, eff, p.P, vertices=len(verts))
