"""Nonessential objectives: conic certificates, minimal spanning systems and
a brute-force check of the definition on a given feasible set.

An objective row that is a nonnegative combination of other rows can be
dropped without changing the efficient set, whatever the feasible set is.
The converse fails, which is why :func:`verify_nonessential` exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import NotAnMolp, UnboundedFeasibleSet, ZeroMatrix
from .linalg import ZERO, Factorization, Q, RationalMatrix, as_matrix, dot, fmt, primitive
from .lp import LinearProgram, lp_solve
from .polyhedra import (
    HPolyhedron,
    cone_from_generators,
    cone_from_matrix,
    extreme_directions,
    face_vertex_sets,
    minimal_h_representation,
)
from .problems import VectorProblem

EXTREME_DIRECTIONS = "extreme-directions"
MINIMAL_HREP = "minimal-hrep"


@dataclass(frozen=True)
class ConicCertificate:
    """``target = sum(multipliers[t] * row over[t])`` with nonnegative multipliers."""

    target_row: Optional[int]
    over: tuple
    multipliers: tuple

    def check(self, P) -> bool:
        P = as_matrix(P)
        if any(m < 0 for m in self.multipliers):
            return False
        combo = [ZERO] * P.cols
        for j, lam in zip(self.over, self.multipliers):
            combo = [c + lam * v for c, v in zip(combo, P.row(j))]
        return tuple(combo) == P.row(self.target_row)


@dataclass
class NonessentialReport:
    removed: list
    retained: list
    certificates: list
    method: str
    alternatives: int = 0

    def certificate_for(self, row: int) -> ConicCertificate:
        return next(c for c in self.certificates if c.target_row == row)


def is_conic_combination(p: Sequence, generators: Sequence[Sequence]) -> Optional[ConicCertificate]:
    """Find ``lam >= 0`` with ``sum(lam_j g_j) = p`` by an LP feasibility solve."""
    p = [Q(v) for v in p]
    G = [tuple(Q(v) for v in g) for g in generators]
    k = len(G)
    if k == 0:
        return ConicCertificate(None, (), ()) if not any(p) else None
    if any(len(g) != len(p) for g in G):
        raise ValueError("generator and target dimensions differ")
    rows = [[G[j][i] for j in range(k)] for i in range(len(p))]
    region = HPolyhedron.build(RationalMatrix.from_rows(rows, cols=k), p, p, [ZERO] * k, [None] * k)
    res = lp_solve(LinearProgram((ZERO,) * k, region))
    if not res.optimal:
        return None
    return ConicCertificate(None, tuple(range(k)), res.x)


def _certify(P: RationalMatrix, removed: Iterable[int], retained: Sequence[int]) -> list[ConicCertificate]:
    certs = []
    gens = [P.row(j) for j in retained]
    for i in removed:
        c = is_conic_combination(P.row(i), gens)
        if c is None:
            raise AssertionError(f"row {i} is not generated by the retained rows")
        certs.append(ConicCertificate(i, tuple(retained), c.multipliers))
    return certs


def _parallel(a: Sequence, b: Sequence) -> bool:
    return primitive(a) == primitive(b) and any(a)


def nonessential_system(P) -> NonessentialReport:
    """Split the rows of ``P`` into a minimal spanning system of ``cone(rows)``
    and rows certified as conic combinations of it.

    Pointed cone: one row per extreme direction, lowest index first.  With a
    lineality space ``T`` the rows are projected onto ``T``'s orthogonal
    complement, where the cone is pointed; rows representing its extreme
    directions are kept and the remaining rows are dropped greedily, highest
    index first, while the cone stays the same.
    """
    P = as_matrix(P)
    if P.is_zero():
        raise ZeroMatrix("objective matrix is zero")
    rows = P.row_list()
    K = cone_from_generators([r for r in rows if any(r)], dim=P.cols)
    T = list(K.generators.lineality)
    if not T:
        retained = []
        for d in extreme_directions(K):
            retained.append(next(i for i, r in enumerate(rows) if _parallel(r, d)))
    else:
        # orthogonal projection onto T-perp via rational Gram-Schmidt on T
        basis: list[list] = []
        for t in T:
            v = [Q(x) for x in t]
            for b in basis:
                f = dot(v, b) / dot(b, b)
                v = [x - f * y for x, y in zip(v, b)]
            basis.append(v)

        def project(r):
            v = list(r)
            for b in basis:
                f = dot(v, b) / dot(b, b)
                v = [x - f * y for x, y in zip(v, b)]
            return v

        proj = [project(r) for r in rows]
        pointed_part = [pr for pr in proj if any(pr)]
        keep = set()
        if pointed_part:
            # K cap T-perp is the (pointed) conic hull of the projections
            Kperp = cone_from_generators(pointed_part, dim=P.cols)
            for d in extreme_directions(Kperp):
                keep.add(next(i for i, pr in enumerate(proj) if _parallel(pr, d)))
        current = [i for i, r in enumerate(rows) if any(r)]
        for i in sorted(current, reverse=True):
            if i in keep:
                continue
            others = [P.row(j) for j in current if j != i]
            if is_conic_combination(P.row(i), others) is not None:
                current.remove(i)
        retained = current
    retained = sorted(set(retained))
    removed = [i for i in range(P.rows) if i not in retained]
    alternatives = sum(1 for i in removed if any(_parallel(P.row(i), P.row(j)) for j in retained))
    return NonessentialReport(removed, retained, _certify(P, removed, retained), EXTREME_DIRECTIONS, alternatives)


def essential_rows_via_hrep(f: Factorization) -> tuple[RationalMatrix, NonessentialReport]:
    """Drop redundant rows of ``L`` in ``{z | L z >= 0}``; returns ``(L' R, report)``."""
    C = cone_from_matrix(f.L)
    Lp, kept = minimal_h_representation(C)
    P = f.product()
    removed = [i for i in range(f.L.rows) if i not in kept]
    certs = _certify(f.L, removed, kept)
    for c in certs:
        if not c.check(P):
            raise AssertionError("certificate on L does not carry over to P")
    return Lp @ f.R, NonessentialReport(removed, list(kept), certs, MINIMAL_HREP)


def serialize_report(report: NonessentialReport) -> str:
    out = [f"method {report.method}"]
    out.append("retained " + " ".join(str(i) for i in report.retained))
    for c in sorted(report.certificates, key=lambda c: c.target_row):
        terms = [f"{j}={fmt(m)}" for j, m in zip(c.over, c.multipliers) if m != 0]
        out.append(" ".join([f"removed {c.target_row} : lambda"] + terms))
    if report.alternatives:
        out.append(f"alternatives {report.alternatives}")
    return "\n".join(out) + "\n"


# -- brute-force verification ----------------------------------------------------

def _efficient_faces(P: RationalMatrix, S: HPolyhedron, verts: list, faces: list) -> set:
    from .solver import _hull_dominated

    if P.rows == 0:
        return set(faces)
    images = [P @ v for v in verts]
    pts = sorted(set(images))
    B = RationalMatrix.identity(P.rows)
    vert_ok = [not _hull_dominated(B, z, pts, False) for z in images]
    eff = set()
    for F in faces:
        if not all(vert_ok[v] for v in F):
            continue
        if len(F) == 1:
            eff.add(F)
            continue
        bary = tuple(sum((images[v][i] for v in F), ZERO) / len(F) for i in range(P.rows))
        if not _hull_dominated(B, bary, pts, False):
            eff.add(F)
    return eff


def verify_nonessential(molp: VectorProblem, subset: Iterable[int]) -> bool:
    """Check that dropping ``subset`` leaves the efficient set unchanged on ``molp.S``.

    Efficient sets of MOLPs are unions of faces, and a face is efficient as
    soon as one relative-interior point is, so the comparison runs over the
    face lattice using face barycenters.
    """
    from .solver import _bounded_by_lp, _brute_force_vertices

    if not molp.has_natural_cone():
        raise NotAnMolp("verify_nonessential compares MOLP efficient sets")
    subset = set(subset)
    if not subset:
        return True
    if not _bounded_by_lp(molp.S):
        raise UnboundedFeasibleSet("verification needs a bounded feasible set")
    verts = _brute_force_vertices(molp.S)
    if not verts:
        return True
    faces = face_vertex_sets(molp.S, verts)
    P = molp.objective()
    keep = [i for i in range(P.rows) if i not in subset]
    Pstar = P.select_rows(keep) if keep else RationalMatrix.zeros(0, P.cols)
    return _efficient_faces(P, molp.S, verts, faces) == _efficient_faces(Pstar, molp.S, verts, faces)
