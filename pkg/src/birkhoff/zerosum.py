"""Zero-sum tensors and the order-(n-1) submatrix parameterization.

A zero-sum tensor (every line sums to 0) is uniquely determined by its
restriction to the box of indices avoiding one anchor value per axis: each
axis extension fills the anchor slab with minus the sum of the others.  The
same machinery parameterizes tensors with all line sums 1 (shift by the
uniform tensor), which turns "is this support a vertex support?" into a small
exact linear system over the (n-1)^d box instead of eliminating the full
line/support incidence matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _modp
from .linalg import kernel_basis, matrix_from_rows, solve_consistent
from .tensor import Index, ShapeError

_MODP_COST_THRESHOLD = 4_000_000  # approx Fraction ops above which mod-p prescreen pays


def zero_sum_extend_entries(
    dim: int, order: int, sub_entries: Sequence[Fraction], anchor: Index
) -> tuple[Fraction, ...]:
    """Entries of the unique order-n zero-sum tensor restricting to `sub_entries`.

    `sub_entries` is row-major over the order-(n-1) box of indices that differ
    from `anchor` in every coordinate (surviving values in ascending order).
    """
    if len(anchor) != dim:
        raise ShapeError(f"anchor {anchor} has wrong length for d={dim}")
    if len(sub_entries) != (order - 1) ** dim:
        raise ShapeError("submatrix entry count != (n-1)^d")
    values = list(sub_entries)
    size = order - 1
    # extend one axis at a time: the anchor-value slab becomes minus the sum
    # of the surviving slabs, spliced back at its original coordinate
    for ax in range(dim):
        done = order**ax  # leading axes already have extent n
        rest = size ** (dim - ax - 1)
        new_values: list[Fraction] = []
        for lead in range(done):
            base = lead * size * rest
            slabs = [values[base + v * rest : base + (v + 1) * rest] for v in range(size)]
            anchor_slab = [Fraction(0)] * rest
            for slab in slabs:
                for i, x in enumerate(slab):
                    anchor_slab[i] -= x
            slabs.insert(anchor[ax], anchor_slab)
            for slab in slabs:
                new_values.extend(slab)
        values = new_values
    return tuple(values)


def box_coefficient_row(dim: int, order: int, alpha: Index) -> list[tuple[int, int]]:
    """Sparse extension-operator row at `alpha` for the anchor (n-1, ..., n-1).

    The extension value at alpha equals sum of coeff * box_value over the
    returned (box flat position, coeff) pairs; coeff is (-1)^k with k the
    number of anchor coordinates in alpha.
    """
    m = order - 1
    free_axes = [i for i, c in enumerate(alpha) if c == m]
    sign = -1 if len(free_axes) % 2 else 1
    strides = [m ** (dim - 1 - i) for i in range(dim)]
    base = sum(c * strides[i] for i, c in enumerate(alpha) if c != m)
    cells = [base]
    for ax in free_axes:
        s = strides[ax]
        cells = [c + v * s for c in cells for v in range(m)]
    return [(c, sign) for c in cells]


@dataclass(frozen=True)
class SupportAnalysis:
    """Outcome of the line-sum system restricted to a candidate support.

    kind is one of:
      "kernel"     - witness: nonzero zero-sum tensor entries supported inside S
      "infeasible" - no tensor with all line sums 1 vanishes outside S
      "unique"     - tensor: the unique all-line-sums-1 tensor vanishing outside S
    """

    kind: str
    tensor_entries: tuple[Fraction, ...] | None = None
    witness_entries: tuple[Fraction, ...] | None = None


def analyze_support(dim: int, order: int, support_flats: Sequence[int]) -> SupportAnalysis:
    """Classify a support via the box parameterization (exact)."""
    n, d = order, dim
    cells = set(support_flats)
    if n == 1:
        if 0 in cells:
            return SupportAnalysis("unique", tensor_entries=(Fraction(1),))
        return SupportAnalysis("infeasible")
    box_cols = (n - 1) ** d
    complement = [f for f in range(n**d) if f not in cells]
    strides = [n ** (d - 1 - i) for i in range(d)]
    rows = []
    for f in complement:
        alpha = tuple((f // s) % n for s in strides)
        rows.append(box_coefficient_row(d, n, alpha))

    est_cost = len(rows) * box_cols * min(len(rows), box_cols)
    if est_cost > _MODP_COST_THRESHOLD:
        result = _analyze_mod_p(d, n, rows, box_cols, complement)
        if result is not None:
            return result
    return _analyze_exact(d, n, rows, box_cols)


def _extension_from_box(
    dim: int, order: int, box_values: Sequence[Fraction]
) -> tuple[Fraction, ...]:
    anchor = tuple([order - 1] * dim)
    return zero_sum_extend_entries(dim, order, box_values, anchor)


def _line_sums_one_tensor(
    dim: int, order: int, shifted_box: Sequence[Fraction]
) -> tuple[Fraction, ...]:
    """Uniform tensor plus the zero-sum extension of `shifted_box`."""
    u = Fraction(1, order)
    ext = _extension_from_box(dim, order, shifted_box)
    return tuple(u + x for x in ext)


def _analyze_exact(
    dim: int, order: int, rows: list[list[tuple[int, int]]], box_cols: int
) -> SupportAnalysis:
    zero = Fraction(0)
    if not rows:
        if box_cols:
            w = [zero] * box_cols
            w[0] = Fraction(1)
            return SupportAnalysis(
                "kernel", witness_entries=_extension_from_box(dim, order, w)
            )
        return SupportAnalysis(
            "unique", tensor_entries=_line_sums_one_tensor(dim, order, [])
        )
    dense = []
    target = Fraction(-1, order)
    for sparse in rows:
        row = [zero] * box_cols
        for c, coef in sparse:
            row[c] = Fraction(coef)
        dense.append(row)
    m = matrix_from_rows(dense)
    kb = kernel_basis(m)
    if kb:
        return SupportAnalysis(
            "kernel", witness_entries=_extension_from_box(dim, order, list(kb[0]))
        )
    x = solve_consistent(m, [target] * len(dense))
    if x is None:
        return SupportAnalysis("infeasible")
    return SupportAnalysis(
        "unique", tensor_entries=_line_sums_one_tensor(dim, order, list(x))
    )


def _analyze_mod_p(
    dim: int,
    order: int,
    rows: list[list[tuple[int, int]]],
    box_cols: int,
    complement: list[int],
) -> SupportAnalysis | None:
    """Mod-p search for the answer; every outcome re-verified exactly.

    Returns None when reconstruction or exact verification fails, in which
    case the caller falls back to the exact elimination.
    """
    if not rows or not box_cols:
        return None
    p = _modp.PRIME
    mat = np.zeros((len(rows), box_cols), dtype=np.int64)
    for i, sparse in enumerate(rows):
        for c, coef in sparse:
            mat[i, c] = coef % p
    null = _modp.nullspace_vector_mod_p(mat, p)
    if null is not None:
        vec = _modp.reconstruct_vector(null[0], p)
        if vec is None:
            return None
        witness = _extension_from_box(dim, order, vec)
        if all(x == 0 for x in witness):
            return None
        if any(witness[f] != 0 for f in complement):
            return None  # not actually in the kernel; exact path decides
        return SupportAnalysis("kernel", witness_entries=witness)
    # full column rank mod p implies full rank over Q: the kernel is trivial
    rhs_p = np.full(len(rows), (-pow(order, p - 2, p)) % p, dtype=np.int64)
    sol = _modp.solve_mod_p(mat, rhs_p, p)
    if isinstance(sol, str):
        return None  # mod-p inconsistency is not proof; exact path decides
    vec = _modp.reconstruct_vector(sol, p)
    if vec is None:
        return None
    tensor = _line_sums_one_tensor(dim, order, vec)
    if any(tensor[f] != 0 for f in complement):
        return None
    return SupportAnalysis("unique", tensor_entries=tensor)
