"""Exact two-phase simplex with Bland's anticycling rule.

The feasible region is an :class:`~molpreduce.polyhedra.HPolyhedron`
(``row_lb <= A x <= row_ub``, ``var_lb <= x <= var_ub``).  It is rewritten
into standard form ``min c'y, A'y = b', y >= 0`` by shifting/splitting
variables and adding slacks; the optimal basis is then mapped back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from gmpy2 import mpq

from .linalg import ONE, ZERO, Q, _bareiss_pivots, solve_square

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    objective: tuple
    constraints: "HPolyhedron"  # noqa: F821
    sense: str = "min"

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise ValueError(f"sense must be 'min' or 'max', got {self.sense!r}")
        if len(self.objective) != self.constraints.dim:
            raise ValueError("objective length does not match the number of variables")


@dataclass
class LPResult:
    status: str
    value: Optional[mpq] = None
    x: Optional[tuple] = None
    # multiplier per constraint row (same sign convention as the gradient:
    # objective = sum(duals[i] * A[i]) + bound multipliers, for a min problem)
    duals: Optional[tuple] = None
    basis: tuple = field(default=())

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _StdForm:
    """Standard-form image of an H-polyhedron plus the maps back."""

    def __init__(self, S):
        n = S.dim
        self.n = n
        self.ncols = 0
        # x_j = const[j] + sum(coef * y[col])
        self.const = [ZERO] * n
        self.xmap: list[list[tuple[int, mpq]]] = [[] for _ in range(n)]
        self.rows: list[dict] = []
        self.rhs: list[mpq] = []
        self.origin: list[tuple[int, int]] = []  # (constraint row or -1, sign)
        self.slack_of: list[Optional[int]] = []

        for j in range(n):
            lb, ub = S.var_lb[j], S.var_ub[j]
            if lb is not None:
                c = self._new_col()
                self.const[j] = lb
                self.xmap[j] = [(c, ONE)]
                if ub is not None:
                    s = self._new_col()
                    self._add_row({c: ONE, s: ONE}, ub - lb, (-1, 1), slack=s)
            elif ub is not None:
                c = self._new_col()
                self.const[j] = ub
                self.xmap[j] = [(c, -ONE)]
            else:
                c1, c2 = self._new_col(), self._new_col()
                self.xmap[j] = [(c1, ONE), (c2, -ONE)]

        A = S.A
        for i in range(A.rows):
            a = A.row(i)
            coeffs: dict[int, mpq] = {}
            off = ZERO
            for j, aij in enumerate(a):
                if aij == 0:
                    continue
                off += aij * self.const[j]
                for c, f in self.xmap[j]:
                    coeffs[c] = coeffs.get(c, ZERO) + aij * f
            coeffs = {c: v for c, v in coeffs.items() if v != 0}
            lb, ub = S.row_lb[i], S.row_ub[i]
            if lb is not None and ub is not None and lb == ub:
                self._add_row(dict(coeffs), lb - off, (i, 1))
                continue
            if lb is not None:
                s = self._new_col()
                row = dict(coeffs)
                row[s] = -ONE
                self._add_row(row, lb - off, (i, 1), slack=s)
            if ub is not None:
                s = self._new_col()
                row = dict(coeffs)
                row[s] = ONE
                self._add_row(row, ub - off, (i, 1), slack=s)

    def _new_col(self) -> int:
        self.ncols += 1
        return self.ncols - 1

    def _add_row(self, coeffs, rhs, origin, slack=None):
        self.rows.append(coeffs)
        self.rhs.append(rhs)
        self.origin.append(origin)
        self.slack_of.append(slack)

    def cost(self, c: Sequence) -> tuple[list, mpq]:
        cy = [ZERO] * self.ncols
        off = ZERO
        for j, cj in enumerate(c):
            if cj == 0:
                continue
            off += cj * self.const[j]
            for col, f in self.xmap[j]:
                cy[col] += cj * f
        return cy, off

    def recover(self, y: Sequence) -> tuple:
        return tuple(
            self.const[j] + sum((f * y[c] for c, f in self.xmap[j]), ZERO)
            for j in range(self.n)
        )


def _pivot(T: list[list], pr: int, pc: int) -> None:
    prow = T[pr]
    inv = 1 / prow[pc]
    if inv != 1:
        prow = [v * inv for v in prow]
        T[pr] = prow
    nz = [j for j, v in enumerate(prow) if v != 0]
    for i, row in enumerate(T):
        if i == pr:
            continue
        f = row[pc]
        if f != 0:
            for j in nz:
                row[j] -= f * prow[j]


def _simplex(T: list[list], basis: list[int], allowed: int) -> bool:
    """Bland's-rule primal simplex on tableau ``T`` (last row = reduced costs).

    Only columns ``< allowed`` may enter.  Returns False when unbounded.
    """
    m = len(basis)
    obj = T[-1]
    while True:
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        leave = -1
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave < 0:
            return False
        _pivot(T, leave, enter)
        basis[leave] = enter
        obj = T[-1]


def lp_solve(lp: LinearProgram, duals: bool = False) -> LPResult:
    """Solve ``lp`` exactly.  Deterministic: identical inputs give identical bases."""
    S = lp.constraints
    for j in range(S.dim):
        lb, ub = S.var_lb[j], S.var_ub[j]
        if lb is not None and ub is not None and lb > ub:
            return LPResult(INFEASIBLE)
    for i in range(S.A.rows):
        lb, ub = S.row_lb[i], S.row_ub[i]
        if lb is not None and ub is not None and lb > ub:
            return LPResult(INFEASIBLE)

    sign = ONE if lp.sense == "min" else -ONE
    c = [sign * Q(v) for v in lp.objective]
    sf = _StdForm(S)
    m, N = len(sf.rows), sf.ncols

    # Tableau columns: structural [0, N), artificials [N, N + m), rhs.
    T: list[list] = []
    basis: list[int] = []
    flip = []
    n_art = 0
    art_col = {}
    for i in range(m):
        coeffs, rhs = sf.rows[i], sf.rhs[i]
        f = ONE if rhs >= 0 else -ONE
        flip.append(f)
        s = sf.slack_of[i]
        if s is not None and coeffs[s] * f == 1:
            basis.append(s)
        else:
            art_col[i] = N + n_art
            basis.append(N + n_art)
            n_art += 1
    width = N + n_art + 1
    for i in range(m):
        row = [ZERO] * width
        for col, v in sf.rows[i].items():
            row[col] = v * flip[i]
        if i in art_col:
            row[art_col[i]] = ONE
        row[-1] = sf.rhs[i] * flip[i]
        T.append(row)

    if n_art:
        phase1 = [ZERO] * width
        for i in art_col:
            for j in range(width):
                phase1[j] -= T[i][j]
        for col in art_col.values():
            phase1[col] = ZERO
        T.append(phase1)
        _simplex(T, basis, N + n_art)
        if T[-1][-1] != 0:
            return LPResult(INFEASIBLE)
        T.pop()
        # Drive remaining (zero-level) artificials out of the basis.
        keep = []
        for i in range(m):
            if basis[i] >= N:
                enter = next((j for j in range(N) if T[i][j] != 0), None)
                if enter is None:
                    continue  # redundant equality row
                _pivot(T, i, enter)
                basis[i] = enter
            keep.append(i)
        if len(keep) < m:
            T = [T[i] for i in keep]
            basis = [basis[i] for i in keep]
        T = [row[:N] + [row[-1]] for row in T]
    cy, off = sf.cost(c)
    z = cy + [ZERO]
    for i, b in enumerate(basis):
        cb = cy[b]
        if cb != 0:
            row = T[i]
            for j in range(N + 1):
                z[j] -= cb * row[j]
    T.append(z)
    if not _simplex(T, basis, N):
        return LPResult(UNBOUNDED)

    y = [ZERO] * N
    for i, b in enumerate(basis):
        y[b] = T[i][-1]
    x = sf.recover(y)
    value = sum((Q(v) * xi for v, xi in zip(lp.objective, x)), ZERO)
    res = LPResult(OPTIMAL, value=value, x=x, basis=tuple(basis))
    if duals:
        res.duals = _row_duals(sf, basis, cy, len(lp.objective), sign, S.A.rows)
    return res


def _row_duals(sf: _StdForm, basis, cy, n, sign, nrows) -> tuple:
    # Solve B^T y = c_B on the original standard-form rows.  Rows dropped as
    # redundant in phase 1 get a zero multiplier.
    m = len(sf.rows)
    cols = list(basis)
    Bmat = [[sf.rows[r].get(c, ZERO) for c in cols] for r in range(m)]
    rows_used = list(range(m))
    if len(cols) < m:
        rows_used = sorted(_bareiss_pivots(Bmat)[0])
    Bt = [[Bmat[r][t] for r in rows_used] for t in range(len(cols))]
    ysub = solve_square(Bt, [[cy[c]] for c in cols])
    yd = [ZERO] * m
    for r, v in zip(rows_used, ysub):
        yd[r] = v[0]
    out = [ZERO] * nrows
    for r in range(m):
        i, s = sf.origin[r]
        if i >= 0:
            out[i] += s * yd[r] * sign
    return tuple(out)
