"""Exact d-dimensional matrices of order n over the rationals.

A d-dimensional matrix of order n is an array indexed by I_n^d, the set of
d-tuples with coordinates in 0..n-1.  Entries are stored row-major with axis 1
most significant, always as `fractions.Fraction` (lowest terms, positive
denominator), so equality of tensors is structural.

Axis positions are 1-based in every public signature (axis 1, ..., axis d);
coordinate values are 0-based.  Gridded text renderings read in row-major
order: for d = 4 the printed 9x9 layout has row = 3*a1 + a2 and column
= 3*a3 + a4.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Index = tuple[int, ...]

RationalLike = Fraction | int


class ShapeError(ValueError):
    """Construction or argument shape violates a tensor contract."""


def _as_fraction(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Tensor:
    """Dense d-dimensional rational matrix of order n (immutable)."""

    dim: int
    order: int
    entries: tuple[Fraction, ...]
    strides: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.dim < 1 or self.order < 1:
            raise ShapeError(f"need dim >= 1 and order >= 1, got d={self.dim} n={self.order}")
        if len(self.entries) != self.order**self.dim:
            raise ShapeError(
                f"entry count {len(self.entries)} != {self.order}^{self.dim}"
            )
        object.__setattr__(
            self,
            "strides",
            tuple(self.order ** (self.dim - 1 - i) for i in range(self.dim)),
        )

    # -- index arithmetic ---------------------------------------------------

    def flat(self, index: Index) -> int:
        if len(index) != self.dim:
            raise ShapeError(f"index {index} has wrong length for d={self.dim}")
        pos = 0
        for coord, stride in zip(index, self.strides):
            if not 0 <= coord < self.order:
                raise ShapeError(f"coordinate {coord} out of range 0..{self.order - 1}")
            pos += coord * stride
        return pos

    def unflat(self, pos: int) -> Index:
        return tuple((pos // s) % self.order for s in self.strides)

    def __getitem__(self, index: Index) -> Fraction:
        return self.entries[self.flat(index)]

    def indices(self) -> Iterator[Index]:
        return itertools.product(range(self.order), repeat=self.dim)

    def size(self) -> int:
        return self.order**self.dim


def tensor_new(dim: int, order: int, entries: Iterable[RationalLike]) -> Tensor:
    """Build a tensor from a row-major entry sequence (axis 1 most significant)."""
    return Tensor(dim, order, tuple(_as_fraction(x) for x in entries))


def hamming(a: Index, b: Index) -> int:
    """Number of positions in which two indices differ."""
    if len(a) != len(b):
        raise ShapeError(f"indices {a} and {b} have different dimensions")
    return sum(1 for x, y in zip(a, b) if x != y)


def line_indices(t: Tensor, free_axis: int, base: Index) -> list[Index]:
    """The n indices agreeing with `base` except at `free_axis` (1-based)."""
    if not 1 <= free_axis <= t.dim:
        raise ShapeError(f"axis {free_axis} out of range 1..{t.dim}")
    ax = free_axis - 1
    out = []
    for v in range(t.order):
        idx = list(base)
        idx[ax] = v
        out.append(tuple(idx))
    return out


def all_lines_flat(dim: int, order: int) -> list[list[int]]:
    """Flat-index cell lists for all d*n^(d-1) lines, axis-major then base row-major.

    This fixed ordering is the row order of incidence matrices.
    """
    strides = [order ** (dim - 1 - i) for i in range(dim)]
    lines: list[list[int]] = []
    for ax in range(dim):
        s = strides[ax]
        for pos in range(order**dim):
            if (pos // s) % order != 0:
                continue
            lines.append([pos + v * s for v in range(order)])
    return lines


@dataclass(frozen=True)
class PlaneSpec:
    """A k-dimensional plane: fixed axis positions (1-based) with their values."""

    fixed: tuple[tuple[int, int], ...]

    @staticmethod
    def of(fixed: dict[int, int] | Iterable[tuple[int, int]]) -> "PlaneSpec":
        items = fixed.items() if isinstance(fixed, dict) else fixed
        return PlaneSpec(tuple(sorted(items)))

    def validate(self, t: Tensor) -> None:
        axes = [a for a, _ in self.fixed]
        if len(set(axes)) != len(axes):
            raise ShapeError(f"repeated fixed axis in {self.fixed}")
        for a, v in self.fixed:
            if not 1 <= a <= t.dim:
                raise ShapeError(f"axis {a} out of range 1..{t.dim}")
            if not 0 <= v < t.order:
                raise ShapeError(f"value {v} out of range 0..{t.order - 1}")


def plane_extract(t: Tensor, spec: PlaneSpec) -> Tensor:
    """Extract the plane as a k-dimensional tensor, free axes in ascending order."""
    spec.validate(t)
    fixed = dict(spec.fixed)
    free_axes = [a for a in range(1, t.dim + 1) if a not in fixed]
    k = len(free_axes)
    if k == 0:
        return Tensor(1, 1, (t[tuple(fixed[a] for a in range(1, t.dim + 1))],))
    entries = []
    for combo in itertools.product(range(t.order), repeat=k):
        idx = [0] * t.dim
        for a, v in fixed.items():
            idx[a - 1] = v
        for a, v in zip(free_axes, combo):
            idx[a - 1] = v
        entries.append(t[tuple(idx)])
    return Tensor(k, t.order, tuple(entries))


def hyperplane(t: Tensor, axis: int, value: int) -> Tensor:
    """The (d-1)-dimensional hyperplane fixing one axis (1-based) at a value."""
    return plane_extract(t, PlaneSpec.of({axis: value}))


def delete_hyperplanes(t: Tensor, a: Index) -> Tensor:
    """Order n-1 tensor of all indices differing from `a` in every coordinate.

    Surviving coordinate values keep their ascending order on each axis.
    """
    if t.order < 2:
        raise ShapeError("cannot delete hyperplanes from an order-1 tensor")
    if len(a) != t.dim:
        raise ShapeError(f"index {a} has wrong length for d={t.dim}")
    keep = [[v for v in range(t.order) if v != a[i]] for i in range(t.dim)]
    entries = [t[idx] for idx in itertools.product(*keep)]
    return Tensor(t.dim, t.order - 1, tuple(entries))


def is_symmetric(t: Tensor) -> bool:
    """True iff invariant under every axis permutation.

    Checked on the d-1 adjacent transpositions, which generate S_d.
    """
    if t.dim == 1:
        return True
    for ax in range(t.dim - 1):
        for pos, idx in enumerate(t.indices()):
            swapped = list(idx)
            swapped[ax], swapped[ax + 1] = swapped[ax + 1], swapped[ax]
            if t.entries[pos] != t[tuple(swapped)]:
                return False
    return True


def from_grid_rows(order: int, dim: int, rows: Sequence[Sequence[RationalLike]]) -> Tensor:
    """Build a tensor from a printed grid read row by row (row-major order)."""
    flat = [x for row in rows for x in row]
    return tensor_new(dim, order, flat)
