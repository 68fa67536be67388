"""Vector linear programs, their text format, and validation.

File grammar (UTF-8, line oriented, ``#`` starts a comment)::

    vlp <min|max> q n [generalized]
    obj i v1 ... vn            # q lines, i = 0 .. q-1
    rows m
    row lb v1 ... vn ub        # m lines, bounds may be -inf / inf
    vars
    var lb1 ub1 ... lbn ubn
    cone r                     # optional; absent means the natural cone
    b1 ... bq                  # r lines, rows of B in {z | B z >= 0}

Result files hold ``status <s>`` followed by ``eff x1 .. xn`` and
``min z1 .. zq`` lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from gmpy2 import mpq

from .errors import DimensionMismatch, ParseError
from .linalg import Q, RationalMatrix, fmt
from .polyhedra import (
    DoubleDescription,
    HPolyhedron,
    PolyhedralCone,
    cones_equal,
    natural_cone,
    primitive,
)


@dataclass(frozen=True)
class VectorProblem:
    P: RationalMatrix
    S: HPolyhedron
    C: PolyhedralCone
    sense: str = "min"
    generalized: bool = False

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise ValueError(f"sense must be 'min' or 'max', got {self.sense!r}")
        if not isinstance(self.P, RationalMatrix):
            object.__setattr__(self, "P", RationalMatrix.from_rows(self.P))
        if self.C.dim != self.P.rows:
            raise DimensionMismatch(f"cone lives in R^{self.C.dim} but q = {self.P.rows}")
        if self.P.cols != self.S.dim:
            raise DimensionMismatch(f"objective has {self.P.cols} columns but S is in R^{self.S.dim}")

    @classmethod
    def molp(cls, P, S: HPolyhedron, sense: str = "min") -> "VectorProblem":
        P = P if isinstance(P, RationalMatrix) else RationalMatrix.from_rows(P)
        return cls(P, S, natural_cone(P.rows), sense)

    @property
    def q(self) -> int:
        return self.P.rows

    @property
    def n(self) -> int:
        return self.P.cols

    def objective(self) -> RationalMatrix:
        """Objective of the equivalent minimization problem (``-P`` for max)."""
        return self.P if self.sense == "min" else -self.P

    def has_natural_cone(self) -> bool:
        return self.C.B.is_identity() or cones_equal(self.C, natural_cone(self.q))

    def is_molp(self) -> bool:
        return self.has_natural_cone() and not self.generalized

    def replace(self, **changes) -> "VectorProblem":
        data = dict(P=self.P, S=self.S, C=self.C, sense=self.sense, generalized=self.generalized)
        data.update(changes)
        return VectorProblem(**data)


OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED_IMAGE = "unbounded-image"


@dataclass
class SolveResult:
    status: str
    efficient_vertices: list = field(default_factory=list)
    minimal_points: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def vertex_set(self) -> frozenset:
        return frozenset(self.efficient_vertices)

    def point_set(self) -> frozenset:
        return frozenset(self.minimal_points)


def make_result(status: str, efficient, P: RationalMatrix, **info) -> SolveResult:
    verts = sorted(set(tuple(v) for v in efficient))
    points = sorted({P @ v for v in verts})
    return SolveResult(status, verts, points, dict(info))


# -- text format -------------------------------------------------------------

def _fmt_bound(v: Optional[mpq], lower: bool) -> str:
    if v is None:
        return "-inf" if lower else "inf"
    return fmt(v)


class _Lines:
    def __init__(self, text: str):
        self.items = []
        for no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0]
            if line.strip():
                toks, col = [], 0
                for tok in line.split():
                    col = line.index(tok, col)
                    toks.append((tok, col + 1))
                    col += len(tok)
                self.items.append((no, toks))
        self.pos = 0
        self.last = len(text.splitlines()) or 1

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else None

    def next(self, what: str):
        if self.pos >= len(self.items):
            raise ParseError(f"unexpected end of input, expected {what}", self.last)
        item = self.items[self.pos]
        self.pos += 1
        return item


def _rational(tok, line) -> mpq:
    text, col = tok
    try:
        return Q(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"invalid rational {text!r}", line, col) from None


def _bound(tok, line, lower: bool) -> Optional[mpq]:
    text, col = tok
    if text == ("-inf" if lower else "inf") or text in ("+inf",) and not lower:
        return None
    if text in ("inf", "-inf", "+inf"):
        raise ParseError(f"infinite bound {text!r} on the wrong side", line, col)
    return _rational(tok, line)


def _int(tok, line) -> int:
    text, col = tok
    try:
        v = int(text)
    except ValueError:
        raise ParseError(f"expected an integer, got {text!r}", line, col) from None
    if v < 0:
        raise ParseError(f"expected a nonnegative integer, got {v}", line, col)
    return v


def _expect(toks, line, word):
    if toks[0][0] != word:
        raise ParseError(f"expected {word!r}, got {toks[0][0]!r}", line, toks[0][1])


def _count(toks, line, expected):
    if len(toks) != expected:
        col = toks[min(len(toks), expected) - 1][1] if toks else 1
        raise ParseError(f"expected {expected - 1} values after {toks[0][0]!r}, got {len(toks) - 1}", line, col)


def parse_problem(text: str) -> VectorProblem:
    lines = _Lines(text)
    line, toks = lines.next("header")
    _expect(toks, line, "vlp")
    if len(toks) not in (4, 5):
        raise ParseError("header must be 'vlp <min|max> q n [generalized]'", line, 1)
    sense = toks[1][0]
    if sense not in ("min", "max"):
        raise ParseError(f"sense must be min or max, got {sense!r}", line, toks[1][1])
    q, n = _int(toks[2], line), _int(toks[3], line)
    generalized = False
    if len(toks) == 5:
        if toks[4][0] != "generalized":
            raise ParseError(f"unknown header flag {toks[4][0]!r}", line, toks[4][1])
        generalized = True

    P = []
    for i in range(q):
        line, toks = lines.next(f"obj {i}")
        _expect(toks, line, "obj")
        _count(toks, line, n + 2)
        if _int(toks[1], line) != i:
            raise ParseError(f"objective rows must be numbered in order, expected {i}", line, toks[1][1])
        P.append([_rational(t, line) for t in toks[2:]])

    line, toks = lines.next("rows")
    _expect(toks, line, "rows")
    _count(toks, line, 2)
    m = _int(toks[1], line)
    A, rlb, rub = [], [], []
    for _ in range(m):
        line, toks = lines.next("row")
        _expect(toks, line, "row")
        _count(toks, line, n + 3)
        rlb.append(_bound(toks[1], line, True))
        A.append([_rational(t, line) for t in toks[2:-1]])
        rub.append(_bound(toks[-1], line, False))
        if rlb[-1] is not None and rub[-1] is not None and rlb[-1] > rub[-1]:
            pass  # kept verbatim; validate() reports the infeasibility

    line, toks = lines.next("vars")
    if toks[0][0] == "vars":
        _count(toks, line, 1)
        line, toks = lines.next("var")
    _expect(toks, line, "var")
    _count(toks, line, 2 * n + 1)
    vlb = [_bound(toks[1 + 2 * j], line, True) for j in range(n)]
    vub = [_bound(toks[2 + 2 * j], line, False) for j in range(n)]

    C = natural_cone(q)
    item = lines.peek()
    if item is not None:
        line, toks = lines.next("cone")
        _expect(toks, line, "cone")
        _count(toks, line, 2)
        r = _int(toks[1], line)
        B = []
        for _ in range(r):
            line, toks = lines.next("cone row")
            if len(toks) != q:
                raise ParseError(f"cone row needs {q} values, got {len(toks)}", line, toks[0][1])
            B.append([_rational(t, line) for t in toks])
        C = PolyhedralCone(RationalMatrix.from_rows(B, cols=q))
    if lines.peek() is not None:
        line, toks = lines.peek()
        raise ParseError(f"trailing content {toks[0][0]!r}", line, toks[0][1])

    S = HPolyhedron.build(RationalMatrix.from_rows(A, cols=n), rlb, rub, vlb, vub)
    return VectorProblem(RationalMatrix.from_rows(P, cols=n), S, C, sense, generalized)


def serialize_problem(p: VectorProblem) -> str:
    out = [f"vlp {p.sense} {p.q} {p.n}" + (" generalized" if p.generalized else "")]
    for i in range(p.q):
        out.append(" ".join([f"obj {i}"] + [fmt(x) for x in p.P.row(i)]))
    S = p.S
    out.append(f"rows {S.A.rows}")
    for i in range(S.A.rows):
        out.append(
            " ".join(
                ["row", _fmt_bound(S.row_lb[i], True)]
                + [fmt(x) for x in S.A.row(i)]
                + [_fmt_bound(S.row_ub[i], False)]
            )
        )
    out.append("vars")
    bounds = []
    for j in range(S.dim):
        bounds += [_fmt_bound(S.var_lb[j], True), _fmt_bound(S.var_ub[j], False)]
    out.append(" ".join(["var"] + bounds))
    if not p.C.B.is_identity():
        out.append(f"cone {p.C.B.rows}")
        for r in p.C.B.row_list():
            out.append(" ".join(fmt(x) for x in r))
    return "\n".join(out) + "\n"


def serialize_result(res: SolveResult) -> str:
    out = [f"status {res.status}"]
    for v in sorted(res.efficient_vertices):
        out.append(" ".join(["eff"] + [fmt(x) for x in v]))
    for z in sorted(res.minimal_points):
        out.append(" ".join(["min"] + [fmt(x) for x in z]))
    return "\n".join(out) + "\n"


def parse_result(text: str) -> SolveResult:
    lines = _Lines(text)
    line, toks = lines.next("status")
    _expect(toks, line, "status")
    res = SolveResult(toks[1][0])
    while lines.peek() is not None:
        line, toks = lines.next("eff/min")
        vals = tuple(_rational(t, line) for t in toks[1:])
        if toks[0][0] == "eff":
            res.efficient_vertices.append(vals)
        elif toks[0][0] == "min":
            res.minimal_points.append(vals)
        else:
            raise ParseError(f"unknown record {toks[0][0]!r}", line, toks[0][1])
    return res


# -- validation ----------------------------------------------------------------

@dataclass(frozen=True)
class Diagnostic:
    level: str  # "error" | "warning" | "info"
    message: str

    def __str__(self) -> str:
        return f"{self.level}: {self.message}"


def recession_cone_trivial(S: HPolyhedron) -> bool:
    """True when ``{d | A d within the homogeneous bounds}`` is ``{0}``."""
    dd = DoubleDescription(S.dim)
    for a, _ in S.inequalities():
        dd.add(primitive(a))
    return not dd.rays and not dd.lin


def validate(p: VectorProblem) -> list[Diagnostic]:
    """Diagnostics for ``p``; the problem is usable iff none has level ``error``."""
    from .lp import LinearProgram, lp_solve

    diags: list[Diagnostic] = []
    if p.C.dim != p.q or p.P.cols != p.S.dim:
        diags.append(Diagnostic("error", "dimension mismatch"))
        return diags
    feas = lp_solve(LinearProgram(tuple([0] * p.n), p.S))
    if feas.status == "infeasible":
        diags.append(Diagnostic("error", "infeasible: the feasible set is empty"))
    if not recession_cone_trivial(p.S):
        diags.append(Diagnostic("warning", "unbounded feasible set"))
    g = p.C.generators
    if not g.rays and not g.lineality:
        diags.append(Diagnostic("warning", "trivial ordering cone: every image point is minimal"))
    elif not p.C.is_solid():
        diags.append(Diagnostic("warning", "ordering cone has empty interior"))
    if g.lineality and (g.rays or g.lineality):
        diags.append(Diagnostic("info", "ordering cone is not pointed"))
    return diags


def is_ok(diags: Sequence[Diagnostic]) -> bool:
    return not any(d.level == "error" for d in diags)


# -- factorization sidecar -----------------------------------------------------

def serialize_factorization(f) -> str:
    out = [f"k {f.k}"]
    out += [" ".join(["L"] + [fmt(x) for x in r]) for r in f.L.row_list()]
    out += [" ".join(["R"] + [fmt(x) for x in r]) for r in f.R.row_list()]
    return "\n".join(out) + "\n"


def parse_factorization(text: str):
    from .linalg import Factorization, rank

    lines = _Lines(text)
    line, toks = lines.next("k")
    _expect(toks, line, "k")
    _count(toks, line, 2)
    k = _int(toks[1], line)
    L, R = [], []
    while lines.peek() is not None:
        line, toks = lines.next("L/R row")
        vals = [_rational(t, line) for t in toks[1:]]
        if toks[0][0] == "L":
            if R:
                raise ParseError("L rows must precede R rows", line, toks[0][1])
            if len(vals) != k:
                raise ParseError(f"L row needs {k} values", line, toks[0][1])
            L.append(vals)
        elif toks[0][0] == "R":
            R.append(vals)
        else:
            raise ParseError(f"unknown record {toks[0][0]!r}", line, toks[0][1])
    if len(R) != k:
        raise ParseError(f"expected {k} R rows, got {len(R)}", lines.last)
    Lm = RationalMatrix.from_rows(L, cols=k)
    Rm = RationalMatrix.from_rows(R)
    return Factorization(Lm, Rm, k, rank_minimal=(rank(Lm) == k == rank(Rm)))
