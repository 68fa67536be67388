"""Seeded random problem generators used by tests, the CLI and the benchmark."""

from __future__ import annotations

import random
from typing import Optional

from .linalg import RationalMatrix, rank
from .polyhedra import HPolyhedron, PolyhedralCone, cone_from_generators
from .problems import VectorProblem


def random_bounded_set(rng: random.Random, n: int, max_cuts: int = 6, spread: int = 3) -> HPolyhedron:
    """Integer box with up to ``max_cuts`` extra rows, always containing its center."""
    lb = [rng.randint(-spread, 0) for _ in range(n)]
    ub = [l + rng.randint(1, spread + 1) for l in lb]
    center2 = [l + u for l, u in zip(lb, ub)]  # twice the center
    rows, rlb = [], []
    for _ in range(rng.randint(0, max_cuts)):
        a = [rng.randint(-spread, spread) for _ in range(n)]
        if not any(a):
            continue
        at_center2 = sum(x * c for x, c in zip(a, center2))
        # a.x >= b with b at most a.center, so the center stays feasible
        b = (at_center2 - rng.randint(0, 2 * spread)) // 2
        rows.append(a)
        rlb.append(b)
    return HPolyhedron.build(RationalMatrix.from_rows(rows, cols=n), rlb, [None] * len(rows), lb, ub)


def random_full_rank(rng: random.Random, rows: int, cols: int, lo: int = -3, hi: int = 3) -> RationalMatrix:
    target = min(rows, cols)
    while True:
        m = RationalMatrix.from_rows(
            [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)], cols=cols
        )
        if rank(m) == target:
            return m


def random_low_rank(rng: random.Random, q: int, n: int, k: int) -> tuple[RationalMatrix, RationalMatrix, RationalMatrix]:
    """``(P, L, R)`` with ``P = L R`` of rank exactly ``k``."""
    while True:
        L = random_full_rank(rng, q, k)
        R = random_full_rank(rng, k, n)
        P = L @ R
        if rank(P) == k:
            return P, L, R


def random_pointed_solid_cone(rng: random.Random, q: int, extra: Optional[int] = None) -> PolyhedralCone:
    """Conic hull of random integer vectors in the open halfspace ``sum(z) > 0``."""
    extra = rng.randint(0, 2) if extra is None else extra
    while True:
        gens = []
        while len(gens) < q + extra:
            v = [rng.randint(-1, 3) for _ in range(q)]
            if sum(v) > 0:
                gens.append(v)
        if rank(gens) == q:
            return cone_from_generators(gens, dim=q)


def random_molp(rng: random.Random, n_max: int = 6, q_max: int = 6, max_cuts: int = 6) -> tuple[VectorProblem, int]:
    """Random bounded MOLP whose objective has rank ``k < q``; returns ``(molp, k)``."""
    q = rng.randint(2, q_max)
    n = rng.randint(1, n_max)
    k = rng.randint(1, min(q - 1, n))
    P, _, _ = random_low_rank(rng, q, n, k)
    S = random_bounded_set(rng, n, max_cuts)
    sense = "min" if rng.random() < 0.8 else "max"
    return VectorProblem.molp(P, S, sense), k


def random_vlp(rng: random.Random, n_max: int = 4, q_max: int = 4, max_cuts: int = 4, low_rank: bool = False) -> VectorProblem:
    q = rng.randint(2, q_max)
    n = rng.randint(1, n_max)
    if low_rank:
        k = rng.randint(1, min(q - 1, n))
        P, _, _ = random_low_rank(rng, q, n, k)
    else:
        P = RationalMatrix.from_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(q)], cols=n)
    S = random_bounded_set(rng, n, max_cuts)
    return VectorProblem(P, S, random_pointed_solid_cone(rng, q))


def random_problem(rng: random.Random) -> VectorProblem:
    """Anything the file format can express: rational data, open bounds, cones."""

    def num():
        if rng.random() < 0.3:
            return f"{rng.randint(-9, 9)}/{rng.randint(1, 7)}"
        return rng.randint(-9, 9)

    def bound():
        if rng.random() < 0.25:
            return None
        return num()

    q, n, m = rng.randint(1, 5), rng.randint(1, 5), rng.randint(0, 5)
    P = RationalMatrix.from_rows([[num() for _ in range(n)] for _ in range(q)], cols=n)
    A = RationalMatrix.from_rows([[num() for _ in range(n)] for _ in range(m)], cols=n)
    S = HPolyhedron.build(
        A, [bound() for _ in range(m)], [bound() for _ in range(m)],
        [bound() for _ in range(n)], [bound() for _ in range(n)],
    )
    r = rng.choice([None, 0, 1, q, q + 1])
    if r is None:
        C = PolyhedralCone(RationalMatrix.identity(q))
    else:
        C = PolyhedralCone(RationalMatrix.from_rows([[num() for _ in range(q)] for _ in range(r)], cols=q))
    return VectorProblem(P, S, C, rng.choice(["min", "max"]), rng.random() < 0.3)
