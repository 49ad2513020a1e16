"""Exact rational rectangular matrices: rank, kernel, unique-solution solving.

Everything here runs over `fractions.Fraction` with first-nonzero pivoting, so
intermediate states are deterministic and results are exact.  `Elimination`
keeps an incremental column-echelon state that searches can checkpoint and
clone while adding support columns one plane at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .tensor import ShapeError


class RankDeficientError(RuntimeError):
    """solve_consistent was called on a matrix whose rank is below its column count."""


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"entry count {len(self.entries)} != {self.rows}x{self.cols}"
            )

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def mul_vector(self, x: Sequence[Fraction]) -> list[Fraction]:
        if len(x) != self.cols:
            raise ShapeError("vector length != column count")
        out = []
        for i in range(self.rows):
            base = i * self.cols
            out.append(sum((self.entries[base + j] * x[j] for j in range(self.cols)), Fraction(0)))
        return out


def matrix_from_rows(rows: Sequence[Sequence[Fraction | int]]) -> RationalMatrix:
    r = len(rows)
    c = len(rows[0]) if r else 0
    flat = tuple(Fraction(x) for row in rows for x in row)
    return RationalMatrix(r, c, flat)


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                ri, rr = rows[i], rows[r]
                rows[i] = [a - f * b for a, b in zip(ri, rr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: RationalMatrix) -> int:
    """Exact rank over the rationals."""
    work = [list(m.row(i)) for i in range(m.rows)]
    _, pivots = _rref(work)
    return len(pivots)


def kernel_basis(m: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel {x : m x = 0}; empty iff rank = cols."""
    work = [list(m.row(i)) for i in range(m.rows)]
    work, pivots = _rref(work)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * m.cols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -work[r][fc]
        basis.append(tuple(vec))
    return basis


def solve_consistent(
    m: RationalMatrix, b: Sequence[Fraction | int]
) -> tuple[Fraction, ...] | None:
    """Unique x with m x = b for a full-column-rank m; None when inconsistent.

    Raises RankDeficientError when rank < cols (a contract violation distinct
    from inconsistency of the overdetermined system).
    """
    if len(b) != m.rows:
        raise ShapeError("right-hand side length != row count")
    work = [list(m.row(i)) + [Fraction(x)] for i, x in zip(range(m.rows), b)]
    work, pivots = _rref(work)
    pivots_in_m = [c for c in pivots if c < m.cols]
    if len(pivots_in_m) < m.cols:
        raise RankDeficientError(f"rank {len(pivots_in_m)} < cols {m.cols}")
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for r, pc in enumerate(pivots_in_m):
        x[pc] = work[r][m.cols]
    assert m.mul_vector(x) == [Fraction(v) for v in b]
    return tuple(x)


class Elimination:
    """Incremental column-echelon state over the rationals.

    Columns are added one at a time; each independent column is stored fully
    reduced against the previous ones, with its pivot row recorded.  States
    are single-owner mutable values; `clone()` supports branching searches.
    """

    def __init__(self, nrows: int):
        self.nrows = nrows
        self.pivot_rows: list[int] = []
        self.basis: list[list[Fraction]] = []

    @property
    def rank(self) -> int:
        return len(self.basis)

    def clone(self) -> "Elimination":
        other = Elimination(self.nrows)
        other.pivot_rows = list(self.pivot_rows)
        other.basis = [list(col) for col in self.basis]
        return other

    def reduce(self, column: Sequence[Fraction | int]) -> list[Fraction]:
        vec = [Fraction(x) for x in column]
        if len(vec) != self.nrows:
            raise ShapeError("column length != row count")
        for pr, col in zip(self.pivot_rows, self.basis):
            f = vec[pr]
            if f != 0:
                for i, cv in enumerate(col):
                    if cv != 0:
                        vec[i] -= f * cv
        return vec

    def add_column(self, column: Sequence[Fraction | int]) -> bool:
        """Reduce and keep the column; False when it was already in the span."""
        vec = self.reduce(column)
        for i, v in enumerate(vec):
            if v != 0:
                if v != 1:
                    vec = [x / v for x in vec]
                self.pivot_rows.append(i)
                self.basis.append(vec)
                return True
        return False

    def add_sparse_column(self, one_rows: Iterable[int]) -> bool:
        """add_column for a 0/1 column given by its nonzero row positions."""
        vec = [Fraction(0)] * self.nrows
        for r in one_rows:
            vec[r] = Fraction(1)
        return self.add_column(vec)
