"""Vertex enumeration for small order and dimension.

The generic pipeline lists candidate supports, runs the certification steps
(incidence rank, solve, strict positivity), and deduplicates up to
equivalence.  Candidates come either from a generic plane-decomposition
generator or from two specialized searches:

* order 3, dimension 4: the candidate support is a 3x3 grid of 2-dimensional
  planes over the first two axes; the minimum-size plane is normalized to a
  catalog representative, other planes range over the admitted pattern
  classes, and partial grids are pruned by a budget of 65 cells, by the
  line-cover/line-singleton conditions as grid rows and columns complete, and
  by the forced-one-entry distance rule.  The permutation class and the one
  exceptional fractional class that the pruning rules exclude by design are
  seeded explicitly (and re-found organically when the rules are relaxed).

* order 4, dimension 3: the support is 4 parallel hyperplanes with
  non-decreasing sizes; the first comes from the nine admissible
  small-pattern representatives, the rest from the full total-support
  catalog (7443 patterns), pruned by the support budget, incremental
  line-singleton propagation, and an incremental rank check of the
  line/support incidence (mod-p prescreened, exactly confirmed on every
  dependence signal).  The run is checkpointed per (first, second) plane
  pair and can be spread over worker processes; the merged class set is
  independent of scheduling.
"""

from __future__ import annotations

import itertools
import json
import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Iterator

from . import _modp
from .certify import Verdict, certify, support_bound
from .equivalence import automorphism_order, canonical_form
from .linalg import Elimination
from .stochastic import (
    SupportSet,
    denominator_lcm,
    permanent,
    support,
)
from .tensor import ShapeError, Tensor, all_lines_flat, is_symmetric


# ---------------------------------------------------------------------------
# 2-dimensional total-support pattern catalogs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanePattern:
    """A 2-dim 0/1 pattern admissible as the support of a doubly stochastic matrix."""

    order: int
    mask: int  # bit r*n + c
    n_ones: int
    cells: tuple[int, ...]
    forced: tuple[int, ...]  # cells alone in their row (equivalently column)
    class_rep: int  # canonical mask of the row/column/transpose class


@dataclass(frozen=True, eq=False)
class PlaneCatalog:
    """All total-support patterns of one order, with class multiplicities."""

    order: int
    patterns: tuple[PlanePattern, ...]
    class_sizes: dict[int, int]
    mask_index: dict[int, PlanePattern]

    def by_mask(self, mask: int) -> PlanePattern:
        return self.mask_index[mask]

    def class_reps(self) -> list[PlanePattern]:
        return sorted(
            (self.mask_index[m] for m in self.class_sizes),
            key=lambda p: (p.n_ones, p.mask),
        )


def _perm_masks(n: int) -> list[int]:
    out = []
    for sigma in itertools.permutations(range(n)):
        m = 0
        for r, c in enumerate(sigma):
            m |= 1 << (r * n + c)
        out.append(m)
    return out


@lru_cache(maxsize=4)
def _col_perm_tables(n: int) -> list[list[int]]:
    """Per column permutation, a lookup from row bitmask to permuted bitmask."""
    tables = []
    for cp in itertools.permutations(range(n)):
        table = [0] * (1 << n)
        for bits in range(1 << n):
            m = 0
            for c in range(n):
                if bits >> c & 1:
                    m |= 1 << cp[c]
            table[bits] = m
        tables.append(table)
    return tables


def _mask_rows(mask: int, n: int) -> list[int]:
    full = (1 << n) - 1
    return [(mask >> (r * n)) & full for r in range(n)]


def _rows_to_mask(rows: list[int], n: int) -> int:
    m = 0
    for r, bits in enumerate(rows):
        m |= bits << (r * n)
    return m


def _transpose_rows(rows: list[int], n: int) -> list[int]:
    out = [0] * n
    for r, bits in enumerate(rows):
        for c in range(n):
            if bits >> c & 1:
                out[c] |= 1 << r
    return out


def _pattern_class_rep(mask: int, n: int) -> int:
    """Minimum mask over row/column permutations and transpose.

    Row permutations are free, so after a column relabeling the minimum
    assembly sorts row bitmasks ascending into the most significant rows.
    """
    tables = _col_perm_tables(n)
    variants = [_mask_rows(mask, n)]
    variants.append(_transpose_rows(variants[0], n))
    best = None
    for rows in variants:
        for table in tables:
            mapped = sorted(table[bits] for bits in rows)
            m = 0
            for i, bits in enumerate(mapped):
                m |= bits << ((n - 1 - i) * n)
            if best is None or m < best:
                best = m
    return best


@lru_cache(maxsize=4)
def plane_catalog(order: int, classify_max: int | None = None) -> PlaneCatalog:
    """Every n x n (0,1) pattern carrying a doubly stochastic matrix.

    A pattern qualifies iff it is a union of permutation diagonals.  Counts
    are asserted by callers (49 for order 3, 7443 for order 4).  When
    `classify_max` is given, equivalence classes are computed only for
    patterns of at most that many cells (class orbits never mix cell counts).
    """
    n = order
    perms = _perm_masks(n)
    masks = []
    for mask in range(1, 1 << (n * n)):
        covered = 0
        for pm in perms:
            if pm & mask == pm:
                covered |= pm
                if covered == mask:
                    break
        if covered == mask:
            masks.append(mask)
    patterns = []
    class_sizes: Counter[int] = Counter()
    index: dict[int, PlanePattern] = {}
    row_full = (1 << n) - 1
    for mask in masks:
        cells = tuple(i for i in range(n * n) if mask >> i & 1)
        forced = tuple(
            cell
            for cell in cells
            if bin(mask >> ((cell // n) * n) & row_full).count("1") == 1
        )
        if classify_max is None or len(cells) <= classify_max:
            rep = _pattern_class_rep(mask, n)
            class_sizes[rep] += 1
        else:
            rep = -1
        pat = PlanePattern(n, mask, len(cells), cells, forced, rep)
        patterns.append(pat)
        index[mask] = pat
    return PlaneCatalog(n, tuple(patterns), dict(class_sizes), index)


def pattern_tensor(p: PlanePattern) -> Tensor:
    n = p.order
    return Tensor(
        2, n, tuple(Fraction(p.mask >> i & 1) for i in range(n * n))
    )


# ---------------------------------------------------------------------------
# classified vertices and distributions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassifiedVertex:
    """A canonical vertex representative with its recomputable statistics."""

    tensor: Tensor
    n_support: int
    permanent: Fraction
    delta: int
    symmetric: bool
    automorphism_order: int

    def sort_key(self):
        return (self.n_support, self.tensor.entries)


def classify_vertex(canonical: Tensor) -> ClassifiedVertex:
    return ClassifiedVertex(
        tensor=canonical,
        n_support=support(canonical).n_support,
        permanent=permanent(canonical),
        delta=denominator_lcm(canonical),
        symmetric=is_symmetric(canonical),
        automorphism_order=automorphism_order(canonical),
    )


def distribution(classes: Iterable[ClassifiedVertex], key: str) -> dict[int, int]:
    """Histogram over support size or denominator LCM; totals equal class count."""
    if key == "support_size":
        values = [c.n_support for c in classes]
    elif key == "denominator_lcm":
        values = [c.delta for c in classes]
    else:
        raise ValueError("key must be 'support_size' or 'denominator_lcm'")
    return dict(sorted(Counter(values).items()))


@dataclass
class EnumerationResult:
    order: int
    dim: int
    classes: tuple[ClassifiedVertex, ...]
    candidates_tested: int = 0
    vertices_found: int = 0
    rejected_out_of_bounds: int = 0
    rejected_conditions: int = 0

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def support_histogram(self) -> dict[int, int]:
        return distribution(self.classes, "support_size")

    def delta_histogram(self) -> dict[int, int]:
        return distribution(self.classes, "denominator_lcm")


def _finalize(order: int, dim: int, canon: dict, stats: dict) -> EnumerationResult:
    classes = tuple(
        sorted((classify_vertex(t) for t in canon.values()), key=ClassifiedVertex.sort_key)
    )
    return EnumerationResult(
        order=order,
        dim=dim,
        classes=classes,
        candidates_tested=stats.get("tested", 0),
        vertices_found=stats.get("vertices", 0),
        rejected_out_of_bounds=stats.get("out_of_bounds", 0),
        rejected_conditions=stats.get("conditions", 0),
    )


# ---------------------------------------------------------------------------
# generic Algorithm-1 pipeline
# ---------------------------------------------------------------------------


@lru_cache(maxsize=16)
def _mask_lines_cached(dim: int, order: int):
    lines = all_lines_flat(dim, order)
    masks = []
    through: list[list[int]] = [[] for _ in range(order**dim)]
    for li, line in enumerate(lines):
        m = 0
        for f in line:
            m |= 1 << f
            through[f].append(li)
        masks.append(m)
    return tuple(masks), tuple(tuple(x) for x in through)


def _check_c0_c1_mask(dim: int, order: int, mask: int) -> bool:
    line_masks, through = _mask_lines_cached(dim, order)
    hit_counts = [bin(lm & mask).count("1") for lm in line_masks]
    for li, h in enumerate(hit_counts):
        if h == 0:
            return False
        if h == 1:
            a = (line_masks[li] & mask).bit_length() - 1
            for other in through[a]:
                if hit_counts[other] != 1:
                    return False
    return True


def algorithm1(
    order: int, dim: int, support_source: Iterable[SupportSet]
) -> EnumerationResult:
    """Certify every candidate support and deduplicate up to equivalence.

    Candidates outside the size bounds or failing the line conditions are
    rejected and counted, not fatal.
    """
    lo, hi = order ** (dim - 1), support_bound(dim, order)
    canon: dict[tuple, Tensor] = {}
    stats = {"tested": 0, "vertices": 0, "out_of_bounds": 0, "conditions": 0}
    for s in support_source:
        stats["tested"] += 1
        if not lo <= s.n_support <= hi:
            stats["out_of_bounds"] += 1
            continue
        mask = 0
        for f in s.flats():
            mask |= 1 << f
        if not _check_c0_c1_mask(dim, order, mask):
            stats["conditions"] += 1
            continue
        cert = certify(s)
        if cert.verdict is Verdict.VERTEX:
            stats["vertices"] += 1
            ct = canonical_form(cert.tensor)
            canon[ct.entries] = ct
    return _finalize(order, dim, canon, stats)


def plane_decomposition_supports(
    order: int, dim: int, max_support: int | None = None
) -> Iterator[SupportSet]:
    """Candidate supports assembled from total-support planes.

    The support splits into n^(d-2) parallel 2-dimensional planes over the
    last two axes (grid over the leading d-2 axes); every 2-dim plane of a
    polystochastic tensor carries a doubly stochastic matrix, so this source
    is exhaustive for vertex supports.
    """
    if dim < 2:
        raise ShapeError("plane decomposition needs dimension >= 2")
    n = order
    budget = max_support if max_support is not None else support_bound(dim, order)
    pats = sorted(plane_catalog(n).patterns, key=lambda p: (p.n_ones, p.mask))
    slots = n ** (dim - 2)
    min_n = pats[0].n_ones
    chosen: list[PlanePattern] = []

    def rec(slot: int, used: int):
        if slot == slots:
            flats = []
            for si, p in enumerate(chosen):
                base = si * n * n
                flats.extend(base + c for c in p.cells)
            yield SupportSet.from_flats(dim, n, flats)
            return
        for p in pats:
            if used + p.n_ones + (slots - slot - 1) * min_n > budget:
                break
            chosen.append(p)
            yield from rec(slot + 1, used + p.n_ones)
            chosen.pop()

    yield from rec(0, 0)


def subset_supports(order: int, dim: int) -> Iterator[SupportSet]:
    """Brute-force subsets within the size bounds (tiny index sets only)."""
    cells = order**dim
    if cells > 16:
        raise ShapeError("subset enumeration is only for n^d <= 16")
    lo, hi = order ** (dim - 1), support_bound(dim, order)
    for size in range(lo, hi + 1):
        for combo in itertools.combinations(range(cells), size):
            yield SupportSet.from_flats(dim, order, combo)


# ---------------------------------------------------------------------------
# specialized search: order 3, dimension 4
# ---------------------------------------------------------------------------


@dataclass
class SearchState:
    """Partial plane-by-plane candidate during a specialized search.

    `placed_masks` holds the in-plane pattern masks of the filled slots in
    placement order; `elimination` is the checkpointable rank state when the
    search maintains one.
    """

    dim: int
    order: int
    placed_masks: tuple[int, ...]
    support_mask: int
    n_support: int
    elimination: object | None = None

    @property
    def slots_total(self) -> int:
        return self.order ** (self.dim - 2)


@lru_cache(maxsize=1)
def _dist3_masks_3_4() -> tuple[int, ...]:
    idx = list(itertools.product(range(3), repeat=4))
    out = []
    for a in idx:
        m = 0
        for fb, b in enumerate(idx):
            if sum(1 for x, y in zip(a, b) if x != y) == 3:
                m |= 1 << fb
        out.append(m)
    return tuple(out)


def _placed_region(state: SearchState) -> int:
    n = state.order
    cells = n * n
    region = 0
    for si in range(len(state.placed_masks)):
        region |= ((1 << cells) - 1) << (si * cells)
    return region


def forced_one_cells(state: SearchState) -> list[int]:
    """Support cells alone on some line that is already complete.

    A line with a single support index forces the entry 1 there, so these are
    exactly the provable 1-entries of any tensor completing the candidate.
    """
    line_masks, _ = _mask_lines_cached(state.dim, state.order)
    region = _placed_region(state)
    forced = set()
    for lm in line_masks:
        if lm & ~region:
            continue
        hit = lm & state.support_mask
        if hit and hit & (hit - 1) == 0:
            forced.add(hit.bit_length() - 1)
    return sorted(forced)


def claims_filter_3_4(state: SearchState) -> bool:
    """Support-level necessary conditions for order-3 dim-4 vertex candidates.

    Applies to candidates other than the multidimensional permutation and the
    exceptional fractional class with an entry 1 on two crossing 0/1 planes
    (both are seeded by the search).  False means the partial candidate is
    doomed: two forced 1-entries at Hamming distance 3, or a complete
    0/1 hyperplane (every line inside it a singleton).
    """
    if (state.order, state.dim) != (3, 4):
        raise ShapeError("this filter is specific to order 3, dimension 4")
    forced = forced_one_cells(state)
    dist3 = _dist3_masks_3_4()
    fmask = 0
    for f in forced:
        if dist3[f] & fmask:
            return False
        fmask |= 1 << f
    line_masks, _ = _mask_lines_cached(4, 3)
    region = _placed_region(state)
    idx = list(itertools.product(range(3), repeat=4))
    for axis in range(4):
        for value in range(3):
            hyper = 0
            for fpos, a in enumerate(idx):
                if a[axis] == value:
                    hyper |= 1 << fpos
            if hyper & ~region:
                continue
            all_singleton = True
            for lm in line_masks:
                if lm & ~hyper:
                    continue
                hit = lm & state.support_mask
                if not (hit and hit & (hit - 1) == 0):
                    all_singleton = False
                    break
            if all_singleton:
                return False
    return True


def _class_rep_by(catalog: PlaneCatalog, n_ones: int, size: int) -> int:
    reps = [
        m
        for m, sz in catalog.class_sizes.items()
        if sz == size and bin(m).count("1") == n_ones
    ]
    if len(reps) != 1:
        raise AssertionError(f"expected one class with N={n_ones}, size={size}: {reps}")
    return reps[0]


@lru_cache(maxsize=1)
def _setup_3_4():
    catalog = plane_catalog(3)
    if len(catalog.patterns) != 49:
        raise AssertionError(
            f"order-3 total-support catalog has {len(catalog.patterns)} patterns, not 49"
        )
    cls = {
        "perm": _class_rep_by(catalog, 3, 6),
        "p2": _class_rep_by(catalog, 5, 9),
        "p3": _class_rep_by(catalog, 6, 6),
        "p4": _class_rep_by(catalog, 7, 18),
        "p5": _class_rep_by(catalog, 8, 9),
        "p6": _class_rep_by(catalog, 9, 1),
    }
    return catalog, cls


def _exceptional_classes_3_4() -> list[Tensor]:
    from . import data as _data
    from .constructions import cyclic_permutation_tensor

    out = []
    for t in (cyclic_permutation_tensor(3, 4), _data.load_known_vertex_3_4(2)):
        cert = certify(support(t))
        if cert.verdict is not Verdict.VERTEX or cert.tensor != t:
            raise AssertionError("seeded exceptional class failed certification")
        out.append(canonical_form(t))
    return out


def enumerate_omega_3_4(
    budget: int = 65,
    exclusion_rules: bool = True,
    distance_filter: bool = True,
    seed_exceptional: bool = True,
    progress: Callable[[str], None] | None = None,
) -> EnumerationResult:
    """All vertex classes of the order-3 dimension-4 polytope.

    The relaxation flags exist for cross-checks: with `exclusion_rules` or
    `distance_filter` off the search explores more partial grids and must
    produce the identical class set; with `seed_exceptional` off it must
    re-find organically whatever the active rules no longer exclude.
    """
    catalog, cls = _setup_3_4()
    # slot s = (i, j) row-major; plane cell (k, l) sits at flat 27 i + 9 j + 3 k + l
    slot_offset = [27 * (s // 3) + 9 * (s % 3) for s in range(9)]
    row_slots = [(3 * i, 3 * i + 1, 3 * i + 2) for i in range(3)]
    col_slots = [(j, j + 3, j + 6) for j in range(3)]
    partners = {
        s: tuple(x for x in row_slots[s // 3] + col_slots[s % 3] if x != s)
        for s in range(9)
    }
    dist3 = _dist3_masks_3_4()
    pats = sorted(catalog.patterns, key=lambda p: (p.n_ones, p.mask))
    p1_reps = [catalog.by_mask(cls[k]) for k in ("perm", "p2", "p3", "p4")]

    stats = {"tested": 0, "vertices": 0, "out_of_bounds": 0, "conditions": 0}
    canon: dict[tuple, Tensor] = {}

    def leaf(support_mask: int, n_support: int) -> None:
        stats["tested"] += 1
        if not 27 <= n_support <= budget:
            stats["out_of_bounds"] += 1
            return
        if not _check_c0_c1_mask(4, 3, support_mask):
            stats["conditions"] += 1
            return
        s = SupportSet.from_flats(4, 3, [f for f in range(81) if support_mask >> f & 1])
        cert = certify(s)
        if cert.verdict is Verdict.VERTEX:
            stats["vertices"] += 1
            ct = canonical_form(cert.tensor)
            canon[ct.entries] = ct

    def search(p1: PlanePattern) -> None:
        banned_everywhere: set[int] = set()
        banned_first_cross: set[int] = set()
        if exclusion_rules:
            banned_everywhere.add(cls["perm"])
            if p1.class_rep == cls["perm"]:
                banned_everywhere.add(cls["p2"])
            if p1.class_rep == cls["p2"]:
                banned_first_cross.add(cls["p2"])
        cand: list[list[PlanePattern]] = [[p1]]
        for s in range(1, 9):
            cand.append(
                [
                    p
                    for p in pats
                    if p.n_ones >= p1.n_ones
                    and p.class_rep not in banned_everywhere
                    and not (s in (1, 2, 3, 6) and p.class_rep in banned_first_cross)
                ]
            )
        min_tail = [0] * 10
        for s in range(8, -1, -1):
            min_tail[s] = min_tail[s + 1] + min(p.n_ones for p in cand[s])

        chosen: list[PlanePattern] = []

        def place(s: int, support_mask: int, n_support: int, forbidden: int, forced: int):
            if s == 9:
                leaf(support_mask, n_support)
                return
            for p in cand[s]:
                if n_support + p.n_ones + min_tail[s + 1] > budget:
                    break  # candidates are sorted by size
                base = slot_offset[s]
                m81 = 0
                for c in p.cells:
                    m81 |= 1 << (base + c)
                if m81 & forbidden:
                    continue
                new_support = support_mask | m81
                new_n = n_support + p.n_ones
                ctx = [forbidden, forced]
                ok = True

                def force(cell: int, slot: int) -> bool:
                    bit = 1 << cell
                    if ctx[1] & bit:
                        return True
                    if distance_filter and dist3[cell] & ctx[1]:
                        return False
                    ctx[1] |= bit
                    inplane = cell - slot_offset[slot]
                    for s2 in partners[slot]:
                        b2 = 1 << (slot_offset[s2] + inplane)
                        if new_support & b2:
                            return False
                        ctx[0] |= b2
                    return True

                for c in p.forced:
                    if not force(base + c, s):
                        ok = False
                        break

                if ok:
                    chosen.append(p)

                    def complete_group(group: tuple[int, int, int]) -> bool:
                        for inplane in range(9):
                            hits = [
                                s2
                                for s2 in group
                                if new_support >> (slot_offset[s2] + inplane) & 1
                            ]
                            if not hits:
                                return False
                            if len(hits) == 1:
                                s2 = hits[0]
                                if inplane not in chosen[s2].forced:
                                    return False
                                if not force(slot_offset[s2] + inplane, s2):
                                    return False
                        return True

                    if s % 3 == 2:
                        ok = complete_group(row_slots[s // 3])
                    if ok and s >= 6:
                        ok = complete_group(col_slots[s % 3])
                    if ok:
                        place(s + 1, new_support, new_n, ctx[0], ctx[1])
                    chosen.pop()

        place(0, 0, 0, 0, 0)

    for p1 in p1_reps:
        if progress:
            progress(f"first plane: {p1.n_ones} cells")
        search(p1)

    if seed_exceptional:
        for ct in _exceptional_classes_3_4():
            canon[ct.entries] = ct

    return _finalize(3, 4, canon, stats)


# ---------------------------------------------------------------------------
# specialized search: order 4, dimension 3
# ---------------------------------------------------------------------------

# line ids in the all_lines_flat order for d=3, n=4:
#   axis-1 line through (., k, l) -> 4 k + l
#   axis-2 line through (i, ., l) -> 16 + 4 i + l
#   axis-3 line through (i, k, .) -> 32 + 4 i + k


def _cell_lines_4_3(i: int, k: int, l: int) -> tuple[int, int, int]:
    return (4 * k + l, 16 + 4 * i + l, 32 + 4 * i + k)


@lru_cache(maxsize=1)
def _setup_4_3():
    catalog = plane_catalog(4, classify_max=9)
    if len(catalog.patterns) != 7443:
        raise AssertionError(
            f"order-4 total-support catalog has {len(catalog.patterns)} patterns, not 7443"
        )
    reps = [p for p in catalog.class_reps() if p.n_ones <= 9]
    if len(reps) != 9:
        raise AssertionError(f"expected nine admissible first-plane classes, got {len(reps)}")
    pats = sorted(catalog.patterns, key=lambda p: (p.n_ones, p.mask))
    mask_set = frozenset(p.mask for p in catalog.patterns)
    return catalog, reps, pats, mask_set


def _other_direction_planes_ok(support_mask: int, mask_set: frozenset[int]) -> bool:
    """Axis-2 and axis-3 hyperplanes must carry doubly stochastic supports."""
    for k in range(4):
        m = 0
        for i in range(4):
            for l in range(4):
                if support_mask >> (16 * i + 4 * k + l) & 1:
                    m |= 1 << (4 * i + l)
        if m not in mask_set:
            return False
    for l in range(4):
        m = 0
        for i in range(4):
            for k in range(4):
                if support_mask >> (16 * i + 4 * k + l) & 1:
                    m |= 1 << (4 * i + k)
        if m not in mask_set:
            return False
    return True


class _RankState:
    """Incremental full-column-rank tracker for the 48-line incidence.

    Uses mod-p elimination as the primary filter; a dependence signal is
    confirmed with exact rational elimination over the recorded column set
    before any branch is pruned (spurious signals switch the state to exact
    mode instead).
    """

    __slots__ = ("modp", "exact", "columns")

    def __init__(self):
        self.modp = _modp.IncrementalModp(48)
        self.exact: Elimination | None = None
        self.columns: list[tuple[int, int, int]] = []

    def clone(self) -> "_RankState":
        other = _RankState.__new__(_RankState)
        other.modp = self.modp.clone()
        other.exact = self.exact.clone() if self.exact is not None else None
        other.columns = list(self.columns)
        return other

    def add_cell(self, lines: tuple[int, int, int]) -> bool:
        self.columns.append(lines)
        if self.exact is not None:
            return self.exact.add_sparse_column(lines)
        if self.modp.add_sparse_column(lines):
            return True
        # confirm exactly; a false dependence signal flips this state to exact
        exact = Elimination(48)
        for col in self.columns[:-1]:
            exact.add_sparse_column(col)
        if exact.add_sparse_column(self.columns[-1]):
            self.exact = exact
            return True
        return False


def _iter_4_3_units(max_support: int):
    """(p1 index, p2 index) work units consistent with the sorted-size rule."""
    _, reps, pats, _ = _setup_4_3()
    for i1, p1 in enumerate(reps):
        if 4 * p1.n_ones > max_support:
            continue
        for i2, p2 in enumerate(pats):
            if p2.n_ones < p1.n_ones:
                continue
            if p1.n_ones + 3 * p2.n_ones > max_support:
                break
            yield i1, i2


def _run_unit_4_3(i1: int, i2: int, max_support: int) -> list[str]:
    """Search all completions of a (first, second) plane pair; returns inline tensors."""
    from .formats import tensor_inline

    _, reps, pats, mask_set = _setup_4_3()
    p1, p2 = reps[i1], pats[i2]

    found: dict[tuple, Tensor] = {}

    def leaf(support_mask: int) -> None:
        if not _other_direction_planes_ok(support_mask, mask_set):
            return
        if not _check_c0_c1_mask(3, 4, support_mask):
            return
        s = SupportSet.from_flats(3, 4, [f for f in range(64) if support_mask >> f & 1])
        cert = certify(s)
        if cert.verdict is Verdict.VERTEX:
            ct = canonical_form(cert.tensor)
            found[ct.entries] = ct

    def try_place(
        slot: int,
        p: PlanePattern,
        support_mask: int,
        forbidden: int,
        forced: int,
        rank_state: _RankState | None,
    ):
        """Returns updated (support, forbidden, forced, rank_state) or None."""
        base = 16 * slot
        m64 = 0
        for c in p.cells:
            m64 |= 1 << (base + c)
        if m64 & forbidden:
            return None
        support2 = support_mask | m64
        forced2 = forced
        forbidden2 = forbidden
        for c in p.forced:
            cell = base + c
            bit = 1 << cell
            if forced2 & bit:
                continue
            forced2 |= bit
            for i2_ in range(4):
                if i2_ == slot:
                    continue
                b2 = 1 << (16 * i2_ + c)
                if support2 & b2:
                    return None
                forbidden2 |= b2
        rk = rank_state.clone() if rank_state is not None else _RankState()
        for c in p.cells:
            if not rk.add_cell(_cell_lines_4_3(slot, c // 4, c % 4)):
                return None
        return support2, forbidden2, forced2, rk

    st = try_place(0, p1, 0, 0, 0, None)
    if st is None:
        return []
    st = try_place(1, p2, *st)
    if st is None:
        return []
    support2, forbidden2, forced2, rk2 = st
    used2 = p1.n_ones + p2.n_ones

    start3 = 0
    while pats[start3].n_ones < p2.n_ones:
        start3 += 1
    for i3 in range(start3, len(pats)):
        p3 = pats[i3]
        if used2 + 2 * p3.n_ones > max_support:
            break
        st3 = try_place(2, p3, support2, forbidden2, forced2, rk2)
        if st3 is None:
            continue
        support3, forbidden3, forced3, rk3 = st3
        used3 = used2 + p3.n_ones
        for i4 in range(i3, len(pats)):
            p4 = pats[i4]
            if used3 + p4.n_ones > max_support:
                break
            st4 = try_place(3, p4, support3, forbidden3, forced3, rk3)
            if st4 is None:
                continue
            leaf(st4[0])

    return [tensor_inline(t) for t in found.values()]


def enumerate_omega_4_3(
    max_support: int = 37,
    checkpoint_dir: str | os.PathLike | None = None,
    workers: int = 1,
    progress: Callable[[str], None] | None = None,
) -> EnumerationResult:
    """Vertex classes of the order-4 dimension-3 polytope.

    The full run (max_support=37) takes hours; `checkpoint_dir` makes it
    resumable per work unit and `workers` spreads units over processes.
    Bounded runs (say max_support=29) enumerate exactly the classes with
    support at most the bound.
    """
    from .formats import parse_tensor_inline

    units = list(_iter_4_3_units(max_support))
    ckpt = Path(checkpoint_dir) if checkpoint_dir is not None else None
    if ckpt is not None:
        ckpt.mkdir(parents=True, exist_ok=True)
        meta_path = ckpt / "meta.json"
        meta = {"order": 4, "dim": 3, "max_support": max_support, "format": 1}
        if meta_path.exists():
            existing = json.loads(meta_path.read_text())
            if existing != meta:
                raise ValueError(
                    f"checkpoint directory {ckpt} was created with parameters {existing}"
                )
        else:
            meta_path.write_text(json.dumps(meta) + "\n")

    def unit_path(i1: int, i2: int) -> Path:
        return ckpt / f"unit_{i1:02d}_{i2:05d}.txt"

    pending = []
    done_lines: list[str] = []
    for i1, i2 in units:
        if ckpt is not None and unit_path(i1, i2).exists():
            done_lines.extend(
                ln for ln in unit_path(i1, i2).read_text().splitlines() if ln
            )
        else:
            pending.append((i1, i2))

    results: list[str] = list(done_lines)
    total = len(units)

    def record(i1: int, i2: int, lines: list[str]) -> None:
        if ckpt is not None:
            tmp = unit_path(i1, i2).with_suffix(".tmp")
            tmp.write_text("".join(ln + "\n" for ln in lines))
            tmp.replace(unit_path(i1, i2))
        results.extend(lines)

    if workers <= 1:
        for count, (i1, i2) in enumerate(pending, start=1):
            lines = _run_unit_4_3(i1, i2, max_support)
            record(i1, i2, lines)
            if progress and (count % 50 == 0 or lines):
                progress(
                    f"unit {count}/{len(pending)} (of {total}) done, classes so far "
                    f"{len(set(results))}"
                )
    else:
        import concurrent.futures as cf

        with cf.ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {
                pool.submit(_run_unit_4_3, i1, i2, max_support): (i1, i2)
                for i1, i2 in pending
            }
            count = 0
            for fut in cf.as_completed(futures):
                i1, i2 = futures[fut]
                record(i1, i2, fut.result())
                count += 1
                if progress and count % 50 == 0:
                    progress(f"unit {count}/{len(pending)} done")

    canon: dict[tuple, Tensor] = {}
    for line in sorted(set(results)):
        t = parse_tensor_inline(line)
        canon[t.entries] = t
    stats = {"tested": 0, "vertices": len(results), "out_of_bounds": 0, "conditions": 0}
    return _finalize(4, 3, canon, stats)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def enumerate_omega(
    order: int,
    dim: int,
    max_support: int | None = None,
    checkpoint_dir: str | os.PathLike | None = None,
    workers: int = 1,
    progress: Callable[[str], None] | None = None,
) -> EnumerationResult:
    """Enumerate vertex classes of the (order, dim) polytope.

    Supported: (3,4) and (4,3) via the specialized searches; order 2 in any
    dimension up to 5, (3,3), and any order in dimension 2 via the generic
    plane-decomposition source.
    """
    if (order, dim) == (3, 4):
        return enumerate_omega_3_4(budget=max_support or 65, progress=progress)
    if (order, dim) == (4, 3):
        return enumerate_omega_4_3(
            max_support=max_support or 37,
            checkpoint_dir=checkpoint_dir,
            workers=workers,
            progress=progress,
        )
    if dim == 2 or (order, dim) == (3, 3) or (order == 2 and dim <= 5):
        return algorithm1(
            order, dim, plane_decomposition_supports(order, dim, max_support)
        )
    raise ShapeError(f"enumeration for order {order}, dimension {dim} is not supported")
