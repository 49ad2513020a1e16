"""Mod-prime elimination prescreen for large exact solves.

Used only as a search for candidate answers: full-rank observations mod p are
one-sided sound (a nonzero minor mod p is nonzero over Q), while candidate
kernel vectors and solutions are rationally reconstructed and must then be
re-verified in exact arithmetic by the caller.  No verdict rests on modular
arithmetic alone.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

PRIME = 2_147_483_647  # fits int64 arithmetic: (p-1)^2 < 2^63
_RECON_BOUND = 32_767  # floor(sqrt((p-1)/2)); numerator/denominator cap


def rational_reconstruct(a: int, p: int = PRIME) -> Fraction | None:
    """num/den with |num|, den <= bound and num = den*a (mod p), if one exists."""
    a %= p
    if a == 0:
        return Fraction(0)
    r0, r1 = p, a
    s0, s1 = 0, 1
    while r1 > _RECON_BOUND:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    num, den = r1, s1
    if den == 0:
        return None
    if den < 0:
        num, den = -num, -den
    if abs(num) > _RECON_BOUND or den > _RECON_BOUND:
        return None
    return Fraction(num, den)


def echelon_mod_p(matrix: np.ndarray, p: int = PRIME) -> tuple[np.ndarray, list[int]]:
    """Row echelon form mod p (pivots normalized to 1); returns (rows, pivot cols)."""
    m = np.asarray(matrix, dtype=np.int64) % p
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        rows_nz = np.nonzero(col)[0]
        if rows_nz.size:
            m[rows_nz] = (m[rows_nz] - np.outer(col[rows_nz], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def nullspace_vector_mod_p(
    matrix: np.ndarray, p: int = PRIME
) -> tuple[list[int], int] | None:
    """One nullspace vector mod p as (entries, free column), or None if full rank."""
    m, pivots = echelon_mod_p(matrix, p)
    ncols = m.shape[1]
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    if not free:
        return None
    fc = free[0]
    vec = [0] * ncols
    vec[fc] = 1
    for r, pc in enumerate(pivots):
        vec[pc] = (-int(m[r, fc])) % p
    return vec, fc


def solve_mod_p(
    matrix: np.ndarray, rhs: np.ndarray, p: int = PRIME
) -> list[int] | str:
    """Solve mod p assuming full column rank; "deficient"/"inconsistent" sentinels."""
    aug = np.concatenate([np.asarray(matrix, dtype=np.int64) % p,
                          (np.asarray(rhs, dtype=np.int64) % p)[:, None]], axis=1)
    m, pivots = echelon_mod_p(aug, p)
    ncols = matrix.shape[1]
    pivots_in_m = [c for c in pivots if c < ncols]
    if ncols in pivots:
        return "inconsistent"
    if len(pivots_in_m) < ncols:
        return "deficient"
    # echelon_mod_p fully reduces pivot columns, so solutions read off directly
    x = [0] * ncols
    for r, pc in enumerate(pivots_in_m):
        x[pc] = int(m[r, ncols])
    return x


def reconstruct_vector(entries: list[int], p: int = PRIME) -> list[Fraction] | None:
    out = []
    for a in entries:
        f = rational_reconstruct(a, p)
        if f is None:
            return None
        out.append(f)
    return out


class IncrementalModp:
    """Incremental column-echelon state mod p for fast rank growth checks.

    A column reported dependent mod p may still be independent over Q (with
    probability ~rank/p per column), so callers must confirm dependence with
    exact arithmetic before acting on it.  Independence mod p is proof of
    independence over Q.
    """

    __slots__ = ("nrows", "p", "pivot_rows", "basis")

    def __init__(self, nrows: int, p: int = PRIME):
        self.nrows = nrows
        self.p = p
        self.pivot_rows: list[int] = []
        self.basis: list[list[int]] = []

    def clone(self) -> "IncrementalModp":
        other = IncrementalModp.__new__(IncrementalModp)
        other.nrows = self.nrows
        other.p = self.p
        other.pivot_rows = list(self.pivot_rows)
        other.basis = [list(col) for col in self.basis]
        return other

    def add_sparse_column(self, one_rows) -> bool:
        """Add a 0/1 column (by nonzero row ids); False = dependent mod p."""
        p = self.p
        vec = [0] * self.nrows
        for r in one_rows:
            vec[r] = 1
        for pr, col in zip(self.pivot_rows, self.basis):
            f = vec[pr]
            if f:
                vec = [(a - f * b) % p for a, b in zip(vec, col)]
        for i, v in enumerate(vec):
            if v:
                inv = pow(v, p - 2, p)
                vec = [(x * inv) % p for x in vec]
                self.pivot_rows.append(i)
                self.basis.append(vec)
                return True
        return False
