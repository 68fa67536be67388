"""Exact rational matrices and rank-revealing factorization.

Scalars are ``gmpy2.mpq`` values (exported as :data:`Rational`); they are
always kept in lowest terms with a positive denominator.  All elimination is
done fraction-free (Bareiss) on integer-scaled copies so intermediate
coefficients stay bounded by determinants of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import DimensionMismatch, ZeroMatrix

Rational = mpq

ZERO = mpq(0)
ONE = mpq(1)


def Q(value) -> mpq:
    """Coerce an int, str (``"3"``, ``"-2/7"``), Fraction or mpq to a Rational."""
    if isinstance(value, mpq):
        return value
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"cannot convert {value!r} to a rational")
        return mpq(Fraction(value))
    if isinstance(value, str):
        return mpq(value.strip())
    return mpq(value)


def fmt(value: mpq) -> str:
    """``num/den`` text form, or a bare integer when the denominator is one."""
    return str(mpq(value))


Vector = tuple


def vec(values: Iterable) -> tuple:
    return tuple(Q(v) for v in values)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), ZERO)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, preserving direction."""
    qs = [Q(x) for x in v]
    den = reduce(lcm, (int(x.denominator) for x in qs), 1)
    ints = [int(x * den) for x in qs]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(i // g for i in ints)


def canonical_direction(v: Sequence) -> tuple[int, ...]:
    """Primitive integer vector with positive leading nonzero entry.

    Use for lines (lineality directions); rays keep their orientation via
    :func:`primitive`.
    """
    p = primitive(v)
    for x in p:
        if x:
            return p if x > 0 else tuple(-y for y in p)
    return p


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable dense matrix of rationals, stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> "RationalMatrix":
        data = [vec(r) for r in rows]
        if not data:
            if cols is None:
                raise DimensionMismatch("column count required for an empty matrix")
            return cls(0, cols, ())
        width = len(data[0])
        if cols is not None and cols != width:
            raise DimensionMismatch(f"expected {cols} columns, got {width}")
        for r in data:
            if len(r) != width:
                raise DimensionMismatch("ragged rows")
        return cls(len(data), width, tuple(x for r in data for x in r))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows(
            [[ONE if i == j else ZERO for j in range(n)] for i in range(n)], cols=n
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.rows else ()

    def row_list(self) -> list[tuple]:
        return [self.row(i) for i in range(self.rows)]

    def to_lists(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix.from_rows([self.col(j) for j in range(self.cols)], cols=self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            ocols = [other.col(j) for j in range(other.cols)]
            return RationalMatrix.from_rows(
                [[dot(self.row(i), c) for c in ocols] for i in range(self.rows)],
                cols=other.cols,
            )
        v = tuple(other)
        if len(v) != self.cols:
            raise DimensionMismatch(f"{self.shape} @ vector of length {len(v)}")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def select_rows(self, idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix.from_rows([self.row(i) for i in idx], cols=self.cols)

    def select_cols(self, idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix.from_rows(
            [[r[j] for j in idx] for r in self.row_list()], cols=len(idx)
        )

    def vstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.cols:
            raise DimensionMismatch("vstack column mismatch")
        return RationalMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == RationalMatrix.identity(self.rows)

    def __str__(self) -> str:
        return "\n".join(" ".join(fmt(x) for x in r) for r in self.row_list())


def as_matrix(m) -> RationalMatrix:
    if isinstance(m, RationalMatrix):
        return m
    return RationalMatrix.from_rows(m)


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for r in rows:
        qs = [Q(x) for x in r]
        den = reduce(lcm, (int(x.denominator) for x in qs), 1)
        out.append([int(x * den) for x in qs])
    return out


def _bareiss_pivots(rows: Sequence[Sequence]) -> tuple[list[int], list[int]]:
    """Fraction-free elimination with full pivoting.

    Returns the pivot row and column indices in elimination order.  The
    pivot is the entry of largest absolute value in the remaining working
    matrix; ties go to the lowest row, then the lowest column index.
    """
    a = _integer_rows(rows)
    if not a:
        return [], []
    n = len(a[0])
    free_rows = list(range(len(a)))
    free_cols = list(range(n))
    prev = 1
    prow, pcol = [], []
    while free_rows and free_cols:
        best = 0
        br = bc = -1
        for i in free_rows:
            ai = a[i]
            for j in free_cols:
                v = abs(ai[j])
                if v > best:
                    best, br, bc = v, i, j
        if best == 0:
            break
        p = a[br][bc]
        free_rows.remove(br)
        free_cols.remove(bc)
        pr = a[br]
        for i in free_rows:
            ai = a[i]
            f = ai[bc]
            for j in free_cols:
                ai[j] = (ai[j] * p - f * pr[j]) // prev
            ai[bc] = 0
        prev = p
        prow.append(br)
        pcol.append(bc)
    return prow, pcol


def rank(m) -> int:
    """Exact rank by fraction-free elimination with full pivoting."""
    m = as_matrix(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_bareiss_pivots(m.row_list())[0])


def solve_square(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    """Solve ``a @ X = b`` for nonsingular square ``a`` (columns of ``b`` as RHS)."""
    n = len(a)
    m = [[Q(x) for x in a[i]] + [Q(x) for x in b[i]] for i in range(n)]
    width = len(m[0]) if m else 0
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular system")
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        rowc = [x * inv for x in m[c]]
        m[c] = rowc
        nz = [j for j in range(width) if rowc[j] != 0]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                mr = m[r]
                for j in nz:
                    mr[j] -= f * rowc[j]
    return [row[n:] for row in m]


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    m = [[Q(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(m) -> list[tuple[int, ...]]:
    """Integer basis of ``{z | M z = 0}``, one primitive vector per free column."""
    m = as_matrix(m)
    n = m.cols
    red, piv = rref(m.row_list()) if m.rows else ([], [])
    free = [j for j in range(n) if j not in piv]
    basis = []
    for f in free:
        z = [ZERO] * n
        z[f] = ONE
        for row, pc in zip(red, piv):
            z[pc] = -row[f]
        basis.append(primitive(z))
    return basis


@dataclass(frozen=True)
class Factorization:
    """``M = L @ R`` with inner dimension ``k``."""

    L: RationalMatrix
    R: RationalMatrix
    k: int
    rank_minimal: bool

    def product(self) -> RationalMatrix:
        return self.L @ self.R

    def factors(self, m) -> bool:
        return self.product() == as_matrix(m)


def rank_factorize(m) -> Factorization:
    """Rank-minimal factorization with ``L`` = pivot columns of ``M``.

    ``R`` solves ``M[I, J] R = M[I, :]`` for the pivot rows ``I`` and pivot
    columns ``J`` chosen by :func:`_bareiss_pivots`, so ``R[:, J]`` is the
    identity and integral input keeps ``L`` integral.
    """
    m = as_matrix(m)
    prow, pcol = _bareiss_pivots(m.row_list()) if m.rows and m.cols else ([], [])
    if not prow:
        raise ZeroMatrix("cannot factorize the zero matrix")
    order = sorted(range(len(pcol)), key=lambda t: pcol[t])
    I = [prow[t] for t in order]
    J = [pcol[t] for t in order]
    k = len(J)
    core = [[m[i, j] for j in J] for i in I]
    rhs = [list(m.row(i)) for i in I]
    R = RationalMatrix.from_rows(solve_square(core, rhs), cols=m.cols)
    L = m.select_cols(J)
    return Factorization(L=L, R=R, k=k, rank_minimal=True)


def trivial_factorize(m, side: str = "left") -> Factorization:
    """``side='left'``: ``L = M, R = I_n``; ``side='right'``: ``L = I_q, R = M``."""
    m = as_matrix(m)
    r = rank(m)
    if side == "left":
        return Factorization(m, RationalMatrix.identity(m.cols), m.cols, rank_minimal=(r == m.cols))
    if side == "right":
        return Factorization(RationalMatrix.identity(m.rows), m, m.rows, rank_minimal=(r == m.rows))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")
