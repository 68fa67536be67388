"""Objective-space reduction of MOLPs and VLPs through ``P = L R``.

With ``C = {z | L z >= 0}`` (or ``{z | Q L z >= 0}`` for a VLP with cone
matrix ``Q``) the problem ``min_C R x, x in S`` has the same efficient set
as the original, and its minimal points map onto the original ones via
``L``.  When ``L`` has dependent columns the reduced cone is not pointed and
generalized minimality is needed instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyObjectives, FactorizationMismatch, NotAnMolp
from .linalg import Factorization, RationalMatrix, as_matrix, rank, rank_factorize, trivial_factorize
from .polyhedra import (
    DEFAULT_DIMENSION_CAP,
    PolyhedralCone,
    image,
    v_to_h,
)
from .problems import VectorProblem

RANK_MINIMAL = "rank-minimal"
GENERALIZED = "generalized"
SKIPPED = "skipped"


@dataclass(frozen=True)
class Reduction:
    original: VectorProblem
    reduced: VectorProblem
    factorization: Factorization
    kind: str

    @property
    def k(self) -> int:
        return self.factorization.k


def _check(p: VectorProblem, f: Factorization) -> None:
    if f.product() != p.P:
        raise FactorizationMismatch("L @ R does not reproduce the objective matrix")


def reduce_molp(molp: VectorProblem) -> Reduction:
    """Dispatch on ``k = rank(P)``: skip if ``k = q <= n``, ``L = P`` if ``k = n < q``."""
    if not molp.is_molp():
        raise NotAnMolp("reduce_molp needs the natural ordering cone")
    if molp.P.is_zero():
        raise EmptyObjectives("objective matrix is zero")
    q, n = molp.q, molp.n
    k = rank(molp.P)
    if k == q:
        f = trivial_factorize(molp.P, "right")
        return Reduction(molp, molp, f, SKIPPED)
    if k == n:
        f = trivial_factorize(molp.P, "left")
    else:
        f = rank_factorize(molp.P)
    return reduce_vlp(molp, f)


def reduce_vlp(vlp: VectorProblem, f: Factorization) -> Reduction:
    """Reduced problem with objective ``R`` and cone matrix ``Q L``."""
    _check(vlp, f)
    if f.L.is_identity():
        return Reduction(vlp, vlp, f, SKIPPED)
    B = vlp.C.B @ f.L
    reduced = VectorProblem(f.R, vlp.S, PolyhedralCone(B), vlp.sense, vlp.generalized)
    if f.rank_minimal and not vlp.generalized:
        return Reduction(vlp, reduced, f, RANK_MINIMAL)
    return Reduction(vlp, reduced.replace(generalized=True), f, GENERALIZED)


def generalized_reduce(molp: VectorProblem, L, R) -> Reduction:
    """Reduction for any factorization, solved with generalized minimality."""
    L, R = as_matrix(L), as_matrix(R)
    f = Factorization(L, R, L.cols, rank_minimal=(rank(L) == L.cols == rank(molp.P)))
    _check(molp, f)
    reduced = VectorProblem(R, molp.S, PolyhedralCone(molp.C.B @ L), molp.sense, True)
    return Reduction(molp, reduced, f, GENERALIZED)


def lift_minimal_points(f: Factorization, reduced_min: Iterable[Sequence]) -> list[tuple]:
    return sorted({f.L @ z for z in reduced_min})


def interpretation_problem(r: Reduction, cap: int = DEFAULT_DIMENSION_CAP) -> VectorProblem:
    """MOLP ``min L z  s.t. z in R[S]`` in the reduced image space."""
    if r.kind == SKIPPED:
        raise ValueError("interpretation problem is undefined for a skipped reduction")
    f = r.factorization
    region = v_to_h(image(r.original.S, f.R, cap), cap)
    if r.original.has_natural_cone():
        return VectorProblem.molp(f.L, region, r.original.sense)
    # general ordering cone: keep it on the L-image side
    return VectorProblem(f.L, region, r.original.C, r.original.sense)
