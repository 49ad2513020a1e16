"""The relabeling group action on tensors and canonical forms.

Two tensors are equivalent when one arises from the other by permuting
hyperplanes of the same direction (one order-n permutation per axis) and/or
permuting the axes; the group is S_n^d semidirect S_d, of size n!^d * d!.

Convention (fixed here, exercised by composition tests): a transform g with
axis permutation sigma and per-axis permutations pi_1..pi_d maps the index
beta to alpha with alpha_i = pi_i(beta_sigma(i)) - axes first, then
hyperplane relabelings.  Tensors transform by apply(g, t)[alpha] =
t[g^-1(alpha)], a left action.

Canonical forms take the minimum of the whole orbit under lexicographic order
on the row-major entry sequence (rationals compared by value).  The orbit is
materialized through a cached index table and minimized with numpy, which is
exhaustive and fast at the group sizes supported here.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .tensor import Index, ShapeError, Tensor

_MAX_GROUP = 500_000  # table-based canonicalization guard


@dataclass(frozen=True)
class EquivalenceTransform:
    """Axis permutation plus one hyperplane permutation per axis (0-based)."""

    axis_perm: tuple[int, ...]
    hyperplane_perms: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        d = len(self.axis_perm)
        if sorted(self.axis_perm) != list(range(d)):
            raise ShapeError(f"axis_perm {self.axis_perm} is not a permutation")
        if len(self.hyperplane_perms) != d:
            raise ShapeError("need one hyperplane permutation per axis")
        n = len(self.hyperplane_perms[0]) if d else 0
        for p in self.hyperplane_perms:
            if sorted(p) != list(range(n)):
                raise ShapeError(f"hyperplane perm {p} is not a permutation")

    @property
    def dim(self) -> int:
        return len(self.axis_perm)

    @property
    def order(self) -> int:
        return len(self.hyperplane_perms[0])

    def map_index(self, beta: Index) -> Index:
        return tuple(
            self.hyperplane_perms[i][beta[self.axis_perm[i]]] for i in range(self.dim)
        )


def identity_transform(order: int, dim: int) -> EquivalenceTransform:
    e = tuple(range(order))
    return EquivalenceTransform(tuple(range(dim)), tuple(e for _ in range(dim)))


def compose(g: EquivalenceTransform, h: EquivalenceTransform) -> EquivalenceTransform:
    """The transform whose index map is g after h: (g*h)(beta) = g(h(beta))."""
    if (g.dim, g.order) != (h.dim, h.order):
        raise ShapeError("transform shapes differ")
    axis = tuple(h.axis_perm[g.axis_perm[i]] for i in range(g.dim))
    perms = tuple(
        tuple(g.hyperplane_perms[i][h.hyperplane_perms[g.axis_perm[i]][v]] for v in range(g.order))
        for i in range(g.dim)
    )
    return EquivalenceTransform(axis, perms)


def inverse(g: EquivalenceTransform) -> EquivalenceTransform:
    inv_axis = [0] * g.dim
    for i, a in enumerate(g.axis_perm):
        inv_axis[a] = i
    perms = []
    for j in range(g.dim):
        src = inv_axis[j]
        p = g.hyperplane_perms[src]
        q = [0] * g.order
        for v, w in enumerate(p):
            q[w] = v
        perms.append(tuple(q))
    return EquivalenceTransform(tuple(inv_axis), tuple(perms))


def apply(g: EquivalenceTransform, t: Tensor) -> Tensor:
    """Left group action: entry at alpha of the result is t at g^-1(alpha)."""
    if (g.dim, g.order) != (t.dim, t.order):
        raise ShapeError("transform does not fit tensor shape")
    entries = [Fraction(0)] * t.size()
    for pos, beta in enumerate(t.indices()):
        entries[t.flat(g.map_index(beta))] = t.entries[pos]
    return Tensor(t.dim, t.order, tuple(entries))


def random_transform(rng: random.Random, order: int, dim: int) -> EquivalenceTransform:
    axis = list(range(dim))
    rng.shuffle(axis)
    perms = []
    for _ in range(dim):
        p = list(range(order))
        rng.shuffle(p)
        perms.append(tuple(p))
    return EquivalenceTransform(tuple(axis), tuple(perms))


def group_order(order: int, dim: int) -> int:
    return math.factorial(order) ** dim * math.factorial(dim)


def all_transforms(order: int, dim: int):
    axis_perms = list(itertools.permutations(range(dim)))
    value_perms = list(itertools.permutations(range(order)))
    for sigma in axis_perms:
        for pis in itertools.product(value_perms, repeat=dim):
            yield EquivalenceTransform(sigma, pis)


@lru_cache(maxsize=8)
def _group_table(order: int, dim: int) -> tuple[np.ndarray, list[EquivalenceTransform]]:
    """source-index table: permuted_entries[i] = entries[table[e, i]] for element e."""
    size = group_order(order, dim)
    if size > _MAX_GROUP:
        raise ShapeError(
            f"group of size {size} too large for table canonicalization (n={order}, d={dim})"
        )
    ncells = order**dim
    strides = np.array([order ** (dim - 1 - i) for i in range(dim)], dtype=np.int64)
    digits = np.empty((ncells, dim), dtype=np.int64)
    fl = np.arange(ncells, dtype=np.int64)
    for i in range(dim):
        digits[:, i] = (fl // strides[i]) % order
    elements = list(all_transforms(order, dim))
    table = np.empty((size, ncells), dtype=np.int16)
    row = np.empty(ncells, dtype=np.int16)
    for e, g in enumerate(elements):
        perm_arrays = [np.array(p, dtype=np.int64) for p in g.hyperplane_perms]
        target = np.zeros(ncells, dtype=np.int64)
        for i in range(dim):
            target += perm_arrays[i][digits[:, g.axis_perm[i]]] * strides[i]
        row[target] = fl
        table[e] = row
    return table, elements


def _value_ranks(t: Tensor) -> np.ndarray:
    values = sorted(set(t.entries))
    rank_of = {v: r for r, v in enumerate(values)}
    dtype = np.int16 if len(values) > 127 else np.int8
    return np.array([rank_of[v] for v in t.entries], dtype=dtype)


def canonical_form(t: Tensor) -> Tensor:
    """Minimum of the orbit under lexicographic order on the entry sequence."""
    table, _ = _group_table(t.order, t.dim)
    ranks = _value_ranks(t)
    orbit = ranks[table]
    best = int(np.lexsort(orbit.T[::-1])[0])
    src = table[best]
    return Tensor(t.dim, t.order, tuple(t.entries[int(j)] for j in src))


def are_equivalent(a: Tensor, b: Tensor) -> bool:
    if (a.dim, a.order) != (b.dim, b.order):
        raise ShapeError("tensors have different shapes")
    if sorted(a.entries) != sorted(b.entries):
        return False
    return canonical_form(a).entries == canonical_form(b).entries


def automorphism_order(t: Tensor) -> int:
    """Number of group elements fixing t; divides n!^d * d!."""
    table, _ = _group_table(t.order, t.dim)
    ranks = _value_ranks(t)
    orbit = ranks[table]
    return int(np.count_nonzero(np.all(orbit == ranks[None, :], axis=1)))


def axis_automorphisms(t: Tensor) -> int:
    """Automorphisms with identity hyperplane parts (pure axis permutations)."""
    count = 0
    e = tuple(range(t.order))
    for sigma in itertools.permutations(range(t.dim)):
        g = EquivalenceTransform(sigma, tuple(e for _ in range(t.dim)))
        if apply(g, t) == t:
            count += 1
    return count
