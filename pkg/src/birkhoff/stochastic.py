"""Polystochastic predicates, supports, permanents, and entry statistics.

A nonnegative tensor is polystochastic when every line sums to 1; its
dimension-2 case is the doubly stochastic matrix, and 0/1 polystochastic
tensors are multidimensional permutations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .tensor import Index, ShapeError, Tensor, all_lines_flat


@dataclass(frozen=True)
class SupportSet:
    """Ordered support of a tensor shape: indices with nonzero entries.

    Members are strictly increasing in row-major order; `n_support` is the
    size N used throughout certification.
    """

    dim: int
    order: int
    members: tuple[Index, ...]

    def __post_init__(self) -> None:
        flats = self.flats()
        if list(flats) != sorted(set(flats)):
            raise ShapeError("support members must be strictly increasing, no duplicates")

    @property
    def n_support(self) -> int:
        return len(self.members)

    def flats(self) -> tuple[int, ...]:
        strides = [self.order ** (self.dim - 1 - i) for i in range(self.dim)]
        return tuple(sum(c * s for c, s in zip(idx, strides)) for idx in self.members)

    @staticmethod
    def from_flats(dim: int, order: int, flats) -> "SupportSet":
        strides = [order ** (dim - 1 - i) for i in range(dim)]
        members = tuple(
            tuple((f // s) % order for s in strides) for f in sorted(set(flats))
        )
        return SupportSet(dim, order, members)


@dataclass(frozen=True)
class Diagonal:
    """n indices no two of which share a hyperplane."""

    indices: tuple[Index, ...]

    def __post_init__(self) -> None:
        if not self.indices:
            raise ShapeError("empty diagonal")
        d = len(self.indices[0])
        n = len(self.indices)
        for ax in range(d):
            if sorted(idx[ax] for idx in self.indices) != list(range(n)):
                raise ShapeError(f"coordinates on axis {ax + 1} are not a permutation")


def support(t: Tensor) -> SupportSet:
    members = tuple(idx for idx, v in zip(t.indices(), t.entries) if v != 0)
    return SupportSet(t.dim, t.order, members)


def is_polystochastic(t: Tensor) -> bool:
    """Every entry >= 0 and every one of the d*n^(d-1) line sums equals 1."""
    if any(v < 0 for v in t.entries):
        return False
    one = Fraction(1)
    for line in all_lines_flat(t.dim, t.order):
        if sum((t.entries[i] for i in line), Fraction(0)) != one:
            return False
    return True


def is_permutation_tensor(t: Tensor) -> bool:
    zero, one = Fraction(0), Fraction(1)
    if any(v != zero and v != one for v in t.entries):
        return False
    return is_polystochastic(t)


def permanent(t: Tensor) -> Fraction:
    """Sum over all diagonals of the product of entries.

    Diagonals are generated relative to axis 1: every (d-1)-tuple of
    permutations (s_2, ..., s_d) gives the diagonal {(i, s_2(i), ..., s_d(i))}.
    Plain enumeration with early zero cutoff; n!^(d-1) terms.
    """
    n, d = t.order, t.dim
    if d == 1:
        return sum(t.entries, Fraction(0))
    perms = list(itertools.permutations(range(n)))
    strides = t.strides
    total = Fraction(0)
    for sigmas in itertools.product(perms, repeat=d - 1):
        prod = Fraction(1)
        for i in range(n):
            pos = i * strides[0]
            for ax, sigma in enumerate(sigmas):
                pos += sigma[i] * strides[ax + 1]
            v = t.entries[pos]
            if v == 0:
                prod = Fraction(0)
                break
            prod *= v
        total += prod
    return total


def permanent_2d_bruteforce(t: Tensor) -> Fraction:
    """Independent n!-term expansion for dim-2 oracles."""
    if t.dim != 2:
        raise ShapeError("dim-2 only")
    n = t.order
    total = Fraction(0)
    for sigma in itertools.permutations(range(n)):
        prod = Fraction(1)
        for i in range(n):
            prod *= t[(i, sigma[i])]
        total += prod
    return total


def total_support_2d(t: Tensor) -> bool:
    """Whether a 0/1 dim-2 pattern supports some doubly stochastic matrix.

    Criterion: for every 1-cell, the permanent of the complementary minor is
    positive.
    """
    if t.dim != 2:
        raise ShapeError("total_support_2d needs a 2-dimensional tensor")
    zero, one = Fraction(0), Fraction(1)
    if any(v != zero and v != one for v in t.entries):
        raise ShapeError("total_support_2d needs a (0,1) tensor")
    n = t.order
    rows = [[t[(i, j)] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if rows[i][j] == one and _minor_permanent(rows, i, j, n) == 0:
                return False
    return True


def _minor_permanent(rows: list[list[Fraction]], di: int, dj: int, n: int) -> Fraction:
    keep_r = [r for r in range(n) if r != di]
    keep_c = [c for c in range(n) if c != dj]
    total = Fraction(0)
    for sigma in itertools.permutations(range(n - 1)):
        prod = Fraction(1)
        for r, s in enumerate(sigma):
            v = rows[keep_r[r]][keep_c[s]]
            if v == 0:
                prod = Fraction(0)
                break
            prod *= v
        total += prod
    return total


def denominator_lcm(t: Tensor) -> int:
    """Least Delta >= 1 such that Delta * t is an integer tensor."""
    delta = 1
    for v in t.entries:
        delta = delta * v.denominator // math.gcd(delta, v.denominator)
    return delta


def check_c0_c1(s: SupportSet) -> bool:
    """Necessary support conditions for polystochastic tensors.

    C0: every line contains at least one support index.  C1: whenever a line
    meets the support in exactly one index a, every other line through a meets
    the support only in a.
    """
    cells = set(s.flats())
    lines = all_lines_flat(s.dim, s.order)
    lines_through: dict[int, list[int]] = {}
    line_hits: list[list[int]] = []
    for ln_idx, line in enumerate(lines):
        hits = [c for c in line if c in cells]
        line_hits.append(hits)
        for c in line:
            lines_through.setdefault(c, []).append(ln_idx)
    for hits in line_hits:
        if not hits:
            return False
        if len(hits) == 1:
            a = hits[0]
            for other in lines_through[a]:
                if line_hits[other] != [a]:
                    return False
    return True
