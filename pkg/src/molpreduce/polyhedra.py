"""Polyhedra and polyhedral cones in H- and V-form.

Conversions use an incremental double description method over integer
vectors.  Rays are kept as primitive integer tuples, so two generator sets
describe the same cone exactly when their canonical forms coincide.

Conventions
-----------
* ``HPolyhedron``: ``row_lb <= A x <= row_ub`` and ``var_lb <= x <= var_ub``;
  ``None`` stands for an infinite bound.
* ``PolyhedralCone``: ``{z | B z >= 0}``.
* Cone polar uses the nonnegative pairing ``{y | y.z >= 0 for z in C}``, so
  the polar of ``{z | B z >= 0}`` is generated by the rows of ``B``.
  :func:`polytope_polar` uses the ``y.x <= 1`` convention instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Optional, Sequence

from gmpy2 import mpq

from .errors import DimensionCap, DimensionMismatch, NotPointed
from .linalg import (
    ONE,
    ZERO,
    Q,
    RationalMatrix,
    as_matrix,
    canonical_direction,
    dot,
    nullspace,
    primitive,
    rank,
    rref,
)
from .lp import LinearProgram, lp_solve

DEFAULT_DIMENSION_CAP = 12

Bound = Optional[mpq]


def _opt(v) -> Bound:
    return None if v is None else Q(v)


@dataclass(frozen=True)
class HPolyhedron:
    A: RationalMatrix
    row_lb: tuple
    row_ub: tuple
    var_lb: tuple
    var_ub: tuple

    def __post_init__(self):
        m, n = self.A.rows, self.A.cols
        if not (len(self.row_lb) == len(self.row_ub) == m):
            raise DimensionMismatch("row bound count differs from row count")
        if not (len(self.var_lb) == len(self.var_ub) == n):
            raise DimensionMismatch("variable bound count differs from column count")

    @classmethod
    def build(cls, A, row_lb=None, row_ub=None, var_lb=None, var_ub=None, dim=None):
        if not isinstance(A, RationalMatrix):
            A = RationalMatrix.from_rows(A, cols=dim)
        m, n = A.rows, A.cols
        return cls(
            A,
            tuple(_opt(v) for v in (row_lb if row_lb is not None else [None] * m)),
            tuple(_opt(v) for v in (row_ub if row_ub is not None else [None] * m)),
            tuple(_opt(v) for v in (var_lb if var_lb is not None else [None] * n)),
            tuple(_opt(v) for v in (var_ub if var_ub is not None else [None] * n)),
        )

    @classmethod
    def box(cls, lb: Sequence, ub: Sequence) -> "HPolyhedron":
        n = len(lb)
        return cls.build(RationalMatrix.zeros(0, n), [], [], lb, ub)

    @classmethod
    def from_inequalities(cls, G, h, eq_rows=(), eq_rhs=(), dim=None) -> "HPolyhedron":
        """``G x >= h`` together with ``E x = e``."""
        G = [tuple(r) for r in G]
        E = [tuple(r) for r in eq_rows]
        if dim is None:
            dim = len((G + E)[0])
        A = RationalMatrix.from_rows(G + E, cols=dim)
        lb = list(h) + list(eq_rhs)
        ub = [None] * len(G) + list(eq_rhs)
        return cls.build(A, lb, ub, None, None)

    @property
    def dim(self) -> int:
        return self.A.cols

    def inequalities(self) -> list[tuple[tuple, mpq]]:
        """All constraints as pairs ``(a, b)`` meaning ``a.x >= b``."""
        out = []
        n = self.dim
        for i in range(self.A.rows):
            a = self.A.row(i)
            lb, ub = self.row_lb[i], self.row_ub[i]
            if lb is not None:
                out.append((a, lb))
            if ub is not None:
                out.append((tuple(-x for x in a), -ub))
        for j in range(n):
            e = tuple(ONE if t == j else ZERO for t in range(n))
            if self.var_lb[j] is not None:
                out.append((e, self.var_lb[j]))
            if self.var_ub[j] is not None:
                out.append((tuple(-x for x in e), -self.var_ub[j]))
        return out

    def contains(self, x: Sequence) -> bool:
        x = [Q(v) for v in x]
        return all(dot(a, x) >= b for a, b in self.inequalities())

    def add_rows(self, rows, lb, ub) -> "HPolyhedron":
        extra = RationalMatrix.from_rows(rows, cols=self.dim)
        return HPolyhedron(
            self.A.vstack(extra),
            self.row_lb + tuple(_opt(v) for v in lb),
            self.row_ub + tuple(_opt(v) for v in ub),
            self.var_lb,
            self.var_ub,
        )


@dataclass(frozen=True)
class VPolyhedron:
    """Generator form ``conv(vertices) + cone(rays) + span(lineality)``.

    With no vertices the object reads as the empty set, unless it has rays or
    lineality, in which case it is a cone with apex at the origin.
    """

    dim: int
    vertices: tuple = ()
    rays: tuple = ()
    lineality: tuple = ()

    @classmethod
    def build(cls, dim, vertices=(), rays=(), lineality=()) -> "VPolyhedron":
        return cls(
            dim,
            tuple(tuple(Q(x) for x in v) for v in vertices),
            tuple(tuple(Q(x) for x in r) for r in rays),
            tuple(tuple(Q(x) for x in l) for l in lineality),
        )

    @property
    def is_empty(self) -> bool:
        return not (self.vertices or self.rays or self.lineality)

    @property
    def bounded(self) -> bool:
        return not self.rays and not self.lineality


class DoubleDescription:
    """Incremental double description of ``{y in Z^d | H y >= 0}``.

    Starts from the whole space and accepts one constraint at a time via
    :meth:`add`.  Adjacency uses the combinatorial test on zero sets, which
    is exact because the ray set stays irredundant after every step.
    """

    def __init__(self, d: int):
        self.d = d
        self.lin: list[tuple[int, ...]] = [
            tuple(1 if i == j else 0 for i in range(d)) for j in range(d)
        ]
        self.rays: list[tuple[int, ...]] = []
        self.zeros: list[int] = []
        self.constraints: list[tuple[int, ...]] = []

    @staticmethod
    def _dot(a, b) -> int:
        return sum(x * y for x, y in zip(a, b) if x)

    @staticmethod
    def _prim(v) -> tuple[int, ...]:
        g = 0
        for x in v:
            g = gcd(g, x)
        if g > 1:
            return tuple(x // g for x in v)
        return tuple(v)

    def add(self, h: Sequence) -> None:
        h = primitive(h) if not all(isinstance(x, int) for x in h) else tuple(h)
        idx = len(self.constraints)
        self.constraints.append(h)
        if not any(h):
            return
        bit = 1 << idx
        _dot, _prim = self._dot, self._prim

        vals = [_dot(h, l) for l in self.lin]
        piv = next((j for j, v in enumerate(vals) if v != 0), None)
        if piv is not None:
            l0, v0 = self.lin[piv], vals[piv]
            if v0 < 0:
                l0, v0 = tuple(-x for x in l0), -v0
            new_lin = []
            for j, l in enumerate(self.lin):
                if j == piv:
                    continue
                s = vals[j]
                new_lin.append(l if s == 0 else _prim([v0 * a - s * b for a, b in zip(l, l0)]))
            new_rays = []
            for r in self.rays:
                s = _dot(h, r)
                new_rays.append(r if s == 0 else _prim([v0 * a - s * b for a, b in zip(r, l0)]))
            self.zeros = [z | bit for z in self.zeros] + [bit - 1]
            self.rays = new_rays + [l0]
            self.lin = new_lin
            return

        s_vals = [_dot(h, r) for r in self.rays]
        pos = [i for i, s in enumerate(s_vals) if s > 0]
        neg = [i for i, s in enumerate(s_vals) if s < 0]
        if not neg:
            self.zeros = [z | bit if s == 0 else z for z, s in zip(self.zeros, s_vals)]
            return
        need = self.d - len(self.lin) - 2
        zeros = self.zeros
        created_rays, created_zeros = [], []
        for i in pos:
            zi, si, ri = zeros[i], s_vals[i], self.rays[i]
            for j in neg:
                z = zi & zeros[j]
                if need > 0 and bin(z).count("1") < need:
                    continue
                adjacent = True
                for t, zt in enumerate(zeros):
                    if t != i and t != j and (zt & z) == z:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                sj, rj = s_vals[j], self.rays[j]
                created_rays.append(_prim([si * b - sj * a for a, b in zip(ri, rj)]))
                created_zeros.append(z | bit)
        keep_r, keep_z = [], []
        for r, z, s in zip(self.rays, zeros, s_vals):
            if s > 0:
                keep_r.append(r)
                keep_z.append(z)
            elif s == 0:
                keep_r.append(r)
                keep_z.append(z | bit)
        self.rays = keep_r + created_rays
        self.zeros = keep_z + created_zeros

    def lineality_basis(self) -> list[tuple[int, ...]]:
        if not self.lin:
            return []
        red, _ = rref(self.lin)
        return [canonical_direction(r) for r in red]


def _check_cap(d: int, cap: int) -> None:
    if d > cap:
        raise DimensionCap(f"dimension {d} exceeds cap {cap}")


def _homogenized(S: HPolyhedron) -> list[tuple[int, ...]]:
    n = S.dim
    rows = [primitive(list(a) + [-b]) for a, b in S.inequalities()]
    rows = sorted(set(rows))
    return [tuple([0] * n + [1])] + rows


def _dd_polyhedron(S: HPolyhedron) -> VPolyhedron:
    n = S.dim
    dd = DoubleDescription(n + 1)
    for h in _homogenized(S):
        dd.add(h)
    vertices, rays = set(), set()
    for r in dd.rays:
        t = r[-1]
        if t > 0:
            vertices.add(tuple(mpq(x, t) for x in r[:-1]))
        else:
            rays.add(tuple(r[:-1]))
    if not vertices:
        return VPolyhedron(n)
    lin = [l[:-1] for l in dd.lineality_basis()]
    return VPolyhedron(
        n,
        tuple(sorted(vertices)),
        tuple(tuple(Q(x) for x in r) for r in sorted(rays)),
        tuple(tuple(Q(x) for x in l) for l in lin),
    )


@dataclass(frozen=True)
class PolyhedralCone:
    """``{z in R^q | B z >= 0}``; ``B`` may have zero rows (the whole space)."""

    B: RationalMatrix

    @property
    def dim(self) -> int:
        return self.B.cols

    def contains(self, z: Sequence) -> bool:
        return all(x >= 0 for x in self.B @ [Q(v) for v in z])

    @cached_property
    def generators(self) -> VPolyhedron:
        dd = DoubleDescription(self.dim)
        for row in sorted({primitive(r) for r in self.B.row_list()}):
            dd.add(row)
        rays = sorted({tuple(r) for r in dd.rays})
        return VPolyhedron.build(self.dim, (), rays, dd.lineality_basis())

    def is_pointed(self) -> bool:
        return is_pointed(self)

    def is_solid(self) -> bool:
        g = self.generators
        gens = list(g.rays) + list(g.lineality)
        return bool(gens) and rank(gens) == self.dim

    def __str__(self) -> str:
        return f"PolyhedralCone(B=\n{self.B})"


def cone_from_matrix(L) -> PolyhedralCone:
    """The cone ``{z | L z >= 0}``, with ``L`` stored as given."""
    return PolyhedralCone(as_matrix(L))


def natural_cone(q: int) -> PolyhedralCone:
    return PolyhedralCone(RationalMatrix.identity(q))


def cone_from_generators(rays: Iterable, lineality: Iterable = (), dim: int | None = None) -> PolyhedralCone:
    """H-form of ``cone(rays) + span(lineality)``; with no generators, ``{0}``."""
    rays = [tuple(r) for r in rays]
    lineality = [tuple(l) for l in lineality]
    if dim is None:
        dim = len((rays + lineality)[0])
    dd = DoubleDescription(dim)
    for g in sorted({primitive(r) for r in rays}):
        dd.add(g)
    for l in sorted({canonical_direction(l) for l in lineality}):
        dd.add(l)
        dd.add(tuple(-x for x in l))
    rows = sorted({tuple(r) for r in dd.rays})
    for l in dd.lineality_basis():
        rows.append(tuple(l))
        rows.append(tuple(-x for x in l))
    return PolyhedralCone(RationalMatrix.from_rows(rows, cols=dim))


def is_pointed(C: PolyhedralCone) -> bool:
    """``C ∩ (-C) = {z | B z = 0}`` is trivial iff ``rank(B) = q``."""
    return rank(C.B) == C.dim if C.B.rows else C.dim == 0


def lineality_space(C: PolyhedralCone) -> list[tuple[int, ...]]:
    if C.B.rows == 0:
        return [tuple(1 if i == j else 0 for i in range(C.dim)) for j in range(C.dim)]
    return nullspace(C.B)


def extreme_directions(C: PolyhedralCone) -> list[tuple[int, ...]]:
    """Extreme rays of a pointed cone as primitive integer vectors, sorted."""
    if not is_pointed(C):
        raise NotPointed("cone has a nontrivial lineality space")
    return sorted(primitive(r) for r in C.generators.rays)


def conic_hull_extreme_directions(points: Iterable, dim: int | None = None) -> list[tuple[int, ...]]:
    """Extreme rays of ``cone(points)``; the cone must be pointed."""
    pts = [tuple(p) for p in points if any(Q(x) != 0 for x in p)]
    if dim is None:
        dim = len(pts[0])
    return extreme_directions(cone_from_generators(pts, dim=dim))


def double_description(obj, cap: int = DEFAULT_DIMENSION_CAP) -> VPolyhedron:
    """Generator form of an :class:`HPolyhedron` or :class:`PolyhedralCone`."""
    if isinstance(obj, PolyhedralCone):
        _check_cap(obj.dim, cap)
        return obj.generators
    _check_cap(obj.dim, cap)
    return _dd_polyhedron(obj)


def v_to_h(V: VPolyhedron, cap: int = DEFAULT_DIMENSION_CAP) -> HPolyhedron:
    """Irredundant H-form (facets plus affine-hull equalities) of ``V``."""
    n = V.dim
    _check_cap(n, cap)
    if V.is_empty:
        return HPolyhedron.build(RationalMatrix.from_rows([[ZERO] * n], cols=n), [ONE], [None])
    verts = list(V.vertices) or [tuple([ZERO] * n)]
    dd = DoubleDescription(n + 1)
    gens = set()
    for v in verts:
        gens.add(primitive(list(v) + [ONE]))
    for r in V.rays:
        gens.add(primitive(list(r) + [ZERO]))
    for g in sorted(gens):
        dd.add(g)
    for l in sorted({canonical_direction(l) for l in V.lineality}):
        dd.add(tuple(l) + (0,))
        dd.add(tuple(-x for x in l) + (0,))
    ineq_rows, ineq_lb = [], []
    for h in sorted(set(dd.rays)):
        a, a0 = h[:-1], h[-1]
        if not any(a):
            continue
        ineq_rows.append(a)
        ineq_lb.append(mpq(-a0))
    eq_rows, eq_rhs = [], []
    for h in dd.lineality_basis():
        a, a0 = h[:-1], h[-1]
        if not any(a):
            continue
        eq_rows.append(a)
        eq_rhs.append(mpq(-a0))
    rows = ineq_rows + eq_rows
    A = RationalMatrix.from_rows(rows, cols=n)
    return HPolyhedron.build(A, ineq_lb + eq_rhs, [None] * len(ineq_rows) + eq_rhs)


def reduce_generators(V: VPolyhedron, cap: int = DEFAULT_DIMENSION_CAP) -> VPolyhedron:
    """Drop redundant generators by a round trip through H-form."""
    if V.is_empty:
        return V
    if not V.vertices:
        C = cone_from_generators(V.rays, V.lineality, dim=V.dim)
        g = C.generators
        return VPolyhedron(V.dim, (), g.rays, g.lineality)
    return double_description(v_to_h(V, cap), cap)


def minimal_h_representation(C: PolyhedralCone) -> tuple[RationalMatrix, list[int]]:
    """Drop redundant rows of ``B``; rows are tested from the last to the first,
    so of several positively parallel rows the lowest index survives."""
    B = C.B
    q = C.dim
    kept = list(range(B.rows))
    for i in reversed(range(B.rows)):
        bi = B.row(i)
        if all(x == 0 for x in bi):
            kept.remove(i)
            continue
        others = [j for j in kept if j != i]
        rows = [B.row(j) for j in others] + [bi]
        S = HPolyhedron.build(
            RationalMatrix.from_rows(rows, cols=q),
            [ZERO] * len(others) + [-ONE],
            [None] * (len(others) + 1),
        )
        res = lp_solve(LinearProgram(bi, S, "min"))
        if res.optimal and res.value >= 0:
            kept.remove(i)
    return B.select_rows(kept), kept


def polar(C: PolyhedralCone) -> PolyhedralCone:
    """``{y | y.z >= 0 for all z in C}`` from the generators of ``C``."""
    g = C.generators
    rows = [tuple(r) for r in g.rays]
    for l in g.lineality:
        rows.append(tuple(l))
        rows.append(tuple(-x for x in l))
    if not rows:
        # C = {0}: the polar is the whole space
        return PolyhedralCone(RationalMatrix.zeros(0, C.dim))
    return PolyhedralCone(RationalMatrix.from_rows(rows, cols=C.dim))


def cone_contains_cone(outer: PolyhedralCone, inner: PolyhedralCone) -> bool:
    g = inner.generators
    if not all(outer.contains(r) for r in g.rays):
        return False
    for l in g.lineality:
        if not (outer.contains(l) and outer.contains([-x for x in l])):
            return False
    return True


def cones_equal(a: PolyhedralCone, b: PolyhedralCone) -> bool:
    return a.dim == b.dim and cone_contains_cone(a, b) and cone_contains_cone(b, a)


def polytope_polar(V: VPolyhedron) -> HPolyhedron:
    """``{y | y.x <= 1 for x in V}``; rays contribute ``y.r <= 0``."""
    rows, ub = [], []
    for v in V.vertices:
        rows.append(v)
        ub.append(ONE)
    for r in V.rays:
        rows.append(r)
        ub.append(ZERO)
    lin_rows = list(V.lineality)
    A = RationalMatrix.from_rows(rows + lin_rows, cols=V.dim)
    return HPolyhedron.build(
        A,
        [None] * len(rows) + [ZERO] * len(lin_rows),
        ub + [ZERO] * len(lin_rows),
    )


def minkowski_sum(P: VPolyhedron, R: VPolyhedron, cap: int = DEFAULT_DIMENSION_CAP) -> VPolyhedron:
    if P.dim != R.dim:
        raise DimensionMismatch(f"ambient dimensions {P.dim} and {R.dim}")
    if P.is_empty or R.is_empty:
        return VPolyhedron(P.dim)
    pv = P.vertices or (tuple([ZERO] * P.dim),)
    rv = R.vertices or (tuple([ZERO] * R.dim),)
    sums = {tuple(a + b for a, b in zip(u, w)) for u in pv for w in rv}
    V = VPolyhedron(
        P.dim,
        tuple(sorted(sums)),
        tuple(P.rays) + tuple(R.rays),
        tuple(P.lineality) + tuple(R.lineality),
    )
    return reduce_generators(V, cap)


def image(S: HPolyhedron, M, cap: int = DEFAULT_DIMENSION_CAP) -> VPolyhedron:
    """Generator form of ``M[S]``."""
    M = as_matrix(M)
    if M.cols != S.dim:
        raise DimensionMismatch(f"map with {M.cols} columns applied to R^{S.dim}")
    V = double_description(S, cap)
    return map_generators(V, M, cap)


def map_generators(V: VPolyhedron, M: RationalMatrix, cap: int = DEFAULT_DIMENSION_CAP) -> VPolyhedron:
    if V.is_empty:
        return VPolyhedron(M.rows)
    verts = {M @ v for v in V.vertices}
    rays = {primitive(M @ r) for r in V.rays}
    rays.discard(tuple([0] * M.rows))
    lin = {canonical_direction(M @ l) for l in V.lineality}
    lin.discard(tuple([0] * M.rows))
    W = VPolyhedron.build(M.rows, sorted(verts), sorted(rays), sorted(lin))
    return reduce_generators(W, cap)


def affine_dimension(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [[Q(a) - Q(b) for a, b in zip(p, base)] for p in points[1:]]
    return rank(diffs) if diffs else 0


def face_vertex_sets(S: HPolyhedron, vertices: Sequence[Sequence]) -> list[frozenset]:
    """All nonempty faces of a polytope, each given by its vertex indices."""
    ineqs = S.inequalities()
    tight = []
    for v in vertices:
        tight.append(frozenset(i for i, (a, b) in enumerate(ineqs) if dot(a, v) == b))
    allv = frozenset(range(len(vertices)))

    def closure(vs: frozenset) -> frozenset:
        common = frozenset.intersection(*(tight[v] for v in vs))
        return frozenset(v for v in allv if common <= tight[v])

    seen = {allv}
    stack = [allv]
    while stack:
        F = stack.pop()
        common = frozenset.intersection(*(tight[v] for v in F))
        for i in range(len(ineqs)):
            if i in common:
                continue
            G = frozenset(v for v in F if i in tight[v])
            if not G:
                continue
            G = closure(G)
            if G not in seen:
                seen.add(G)
                stack.append(G)
    return sorted(seen, key=lambda f: (-len(f), sorted(f)))
