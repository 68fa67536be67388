"""Benchmark family: Minkowski sums of a simplex with its polar, low-rank objectives.

``P_0`` is a simplex centered at the origin and ``P_l = P_{l-1} + polar(P_{l-1})``.
The polytope is kept as a projection ``P_l = M_l [S_l]`` with
``S_l = S_{l-1} x polar(P_{l-1})`` and ``M_l = [M_{l-1}, I_d]``, so no facet
enumeration of the sum is needed.  Objectives are the first ``q`` rows of
``T M`` for a rank-two mixing matrix ``T``.
"""

from __future__ import annotations

import csv
import gc
import io
import random
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .benson import solve_benson
from .errors import ConeNotPointed, ConeNotSolid, MolpReduceError
from .linalg import ONE, ZERO, Q, RationalMatrix, rank
from .polyhedra import DEFAULT_DIMENSION_CAP, HPolyhedron, VPolyhedron, double_description, minkowski_sum, polytope_polar, v_to_h
from .problems import VectorProblem
from .reduction import SKIPPED, lift_minimal_points, reduce_molp
from .solver import solve_enum

CSV_HEADER = ["q", "molp_ms", "vlp_ms", "molp_minpts", "vlp_minpts"]
T_NOTE = "mixing matrix uses -1/3 entries and unnormalized combination columns (exact rational substitute)"


@dataclass(frozen=True)
class BenchConfig:
    d: int = 3
    ell: int = 2
    q_min: int = 3
    q_max: int = 8
    k: int = 2
    trials: int = 7
    warmup: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0 <= self.warmup < self.trials:
            raise ValueError("warmup must satisfy 0 <= warmup < trials")
        if not 1 <= self.k <= self.q_min <= self.q_max:
            raise ValueError("need 1 <= k <= q_min <= q_max")
        if self.k != 2:
            raise ValueError("the mixing matrix construction has rank 2")
        if self.d > 6 or self.ell > 3 or self.d < 2:
            raise MolpReduceError("family is limited to 2 <= d <= 6 and ell <= 3")

    @property
    def qs(self) -> list[int]:
        return list(range(self.q_min, self.q_max + 1))

    @classmethod
    def from_mapping(cls, data: dict) -> "BenchConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**{k: int(v) for k, v in data.items()})


@dataclass
class BenchRecord:
    q: int
    molp_time: float
    vlp_time: float
    molp_vertex_count: int
    vlp_vertex_count: int
    samples: dict = field(default_factory=dict)


def base_simplex(d: int) -> VPolyhedron:
    """Simplex with the origin as centroid; for d = 3 the regular tetrahedron."""
    if d == 3:
        pts = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
        return VPolyhedron.build(3, [[Q(x) / 2 for x in p] for p in pts])
    pts = [[ONE if i == j else ZERO for i in range(d)] for j in range(d)]
    pts.append([-ONE] * d)
    return VPolyhedron.build(d, pts)


def family_polytope(d: int, ell: int, cap: int = DEFAULT_DIMENSION_CAP) -> tuple[HPolyhedron, RationalMatrix, VPolyhedron]:
    """``(S, M, P_ell)`` with ``P_ell = M[S]``."""
    P = base_simplex(d)
    S = v_to_h(P, cap)
    M = RationalMatrix.identity(d)
    for _ in range(ell):
        polar_h = polytope_polar(P)
        polar_v = double_description(polar_h, cap)
        S = _product(S, polar_h)
        M = RationalMatrix.from_rows(
            [list(M.row(i)) + [ONE if j == i else ZERO for j in range(d)] for i in range(d)]
        )
        P = minkowski_sum(P, polar_v, cap)
    return S, M, P


def _product(S1: HPolyhedron, S2: HPolyhedron) -> HPolyhedron:
    n1, n2 = S1.dim, S2.dim
    rows = [list(S1.A.row(i)) + [ZERO] * n2 for i in range(S1.A.rows)]
    rows += [[ZERO] * n1 + list(S2.A.row(i)) for i in range(S2.A.rows)]
    return HPolyhedron.build(
        RationalMatrix.from_rows(rows, cols=n1 + n2),
        S1.row_lb + S2.row_lb,
        S1.row_ub + S2.row_ub,
        S1.var_lb + S2.var_lb,
        S1.var_ub + S2.var_ub,
    )


def mixing_matrix(rows: int, d: int) -> RationalMatrix:
    """Rank-two ``rows x d`` matrix.

    Column 1 is -1/3 except zeros in rows 3, 6, 9, ... (1-based); column 2 is
    -1/3 except zeros in rows 1, 4, 7, ...; column j >= 3 is
    ``(j - 8) col1 + (j - 7) col2``.
    """
    third = Q("-1/3")
    c1 = [ZERO if (i + 1) % 3 == 0 else third for i in range(rows)]
    c2 = [ZERO if (i + 1) % 3 == 1 else third for i in range(rows)]
    cols = [c1, c2]
    for j in range(3, d + 1):
        cols.append([(j - 8) * a + (j - 7) * b for a, b in zip(c1, c2)])
    return RationalMatrix.from_rows([[cols[j][i] for j in range(d)] for i in range(rows)], cols=d)


def generate_family(cfg: BenchConfig, cap: int = DEFAULT_DIMENSION_CAP) -> list[VectorProblem]:
    S, M, _ = family_polytope(cfg.d, cfg.ell, cap)
    TM = mixing_matrix(cfg.q_max, cfg.d) @ M
    out = []
    for q in cfg.qs:
        P = TM.select_rows(range(q))
        if rank(P) != cfg.k:
            raise AssertionError(f"objective for q={q} has rank {rank(P)}, expected {cfg.k}")
        out.append(VectorProblem.molp(P, S))
    return out


def solve_reduced(molp: VectorProblem):
    """Reduce and solve; Benson with enumeration fallback for awkward cones."""
    red = reduce_molp(molp)
    try:
        res = solve_benson(red.reduced)
    except (ConeNotSolid, ConeNotPointed, ValueError):
        res = solve_enum(red.reduced)
    return red, res


def check_equivalence(molp_res, red, vlp_res) -> bool:
    if molp_res.vertex_set() != vlp_res.vertex_set():
        return False
    lifted = lift_minimal_points(red.factorization, vlp_res.minimal_points)
    if red.kind == SKIPPED:
        lifted = sorted(set(vlp_res.minimal_points))
    return set(lifted) == molp_res.point_set()


def _verify(molp: VectorProblem):
    molp_res = solve_benson(molp)
    red, vlp_res = solve_reduced(molp)
    if not check_equivalence(molp_res, red, vlp_res):
        raise AssertionError(f"q={molp.q}: reduced problem disagrees with the original")
    return molp_res, vlp_res


def run_bench(cfg: BenchConfig, log=None, parallel_verify: bool = False) -> list[BenchRecord]:
    """Time each q in a seeded random order; every q is checked before timing."""
    problems = dict(zip(cfg.qs, generate_family(cfg)))
    order = list(cfg.qs)
    random.Random(cfg.seed).shuffle(order)
    if parallel_verify:
        with ThreadPoolExecutor() as pool:
            checked = dict(zip(cfg.qs, pool.map(_verify, [problems[q] for q in cfg.qs])))
    else:
        checked = {}
    records = {}
    for q in order:
        molp = problems[q]
        molp_res, vlp_res = checked[q] if q in checked else _verify(molp)
        mt, vt = [], []
        gc_was_on = gc.isenabled()
        gc.disable()  # same policy as timeit
        try:
            for _ in range(cfg.trials):
                t0 = time.perf_counter()
                solve_benson(molp)
                t1 = time.perf_counter()
                solve_reduced(molp)
                t2 = time.perf_counter()
                mt.append((t1 - t0) * 1000)
                vt.append((t2 - t1) * 1000)
        finally:
            if gc_was_on:
                gc.enable()
        mt, vt = mt[cfg.warmup:], vt[cfg.warmup:]
        records[q] = BenchRecord(
            q,
            statistics.median(mt),
            statistics.median(vt),
            len(molp_res.minimal_points),
            len(vlp_res.minimal_points),
            {"molp_ms": mt, "vlp_ms": vt},
        )
        if log:
            log(f"q={q} molp={records[q].molp_time:.3f}ms vlp={records[q].vlp_time:.3f}ms")
    return [records[q] for q in cfg.qs]


def records_csv(records: list[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow([r.q, f"{r.molp_time:.3f}", f"{r.vlp_time:.3f}", r.molp_vertex_count, r.vlp_vertex_count])
    return buf.getvalue()
