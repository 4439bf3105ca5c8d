"""Windowed brute-force closure of partial bijections.

Everything here works on the points below a fixed window.  Maps are
encoded as int8 rows (entry x holds the image of x, -1 for undefined),
so composing a batch against a batch is two numpy indexing operations.
The closure routine runs breadth-first rounds of compose-and-invert
with chunking and exact dedup; companion builders enumerate the
structural candidate sets (windowed block groups plus finite strata) so
the two routes can be compared element by element.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .descriptors import SetDescriptor
from .errors import BudgetExceededError, WindowMismatchError
from .families import BlockFamily, chain_capacity_matrix
from .pbij import PartialBijection

MAX_WINDOW = 120  # int8 rows: images must stay below 127


def unique_rows(rows: np.ndarray) -> np.ndarray:
    """Deduplicate int8 rows, sorted bytewise (undefined slots last)."""
    if len(rows) == 0:
        return rows
    flat = np.ascontiguousarray(rows)
    keys = flat.view(np.dtype((np.void, flat.shape[1]))).ravel()
    return np.unique(keys).view(np.int8).reshape(-1, flat.shape[1])


# -- encoding ----------------------------------------------------


def encode_rows(maps: Sequence[PartialBijection], window: int) -> np.ndarray:
    if window > MAX_WINDOW:
        raise BudgetExceededError(f"window {window} exceeds the int8 limit {MAX_WINDOW}")
    out = np.full((len(maps), window), -1, dtype=np.int8)
    for n, f in enumerate(maps):
        if f.window != window:
            raise WindowMismatchError(f"map window {f.window}, engine window {window}")
        for s, t in f.pairs:
            out[n, s] = t
    return out


def decode_row(row: np.ndarray, window: int) -> PartialBijection:
    pairs = [(x, int(v)) for x, v in enumerate(row[:window]) if v >= 0]
    return PartialBijection.of(pairs, window)


def compose_rows(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """All pairwise composites: out[i, j, x] = left_i(right_j(x))."""
    idx = np.clip(right, 0, None)
    return np.where(right[None, :, :] >= 0, left[:, idx], np.int8(-1))


def invert_rows(rows: np.ndarray) -> np.ndarray:
    out = np.full_like(rows, -1)
    srcs, cols = np.nonzero(rows >= 0)
    out[srcs, rows[srcs, cols]] = cols
    return out


# -- closure ----------------------------------------------------


@dataclass(frozen=True)
class ClosureResult:
    """Closure under composition and inverse, with per-round bookkeeping."""

    elements: tuple[PartialBijection, ...]
    generations: tuple[int, ...]
    frontier_sizes: tuple[int, ...]
    closed: bool
    window: int

    def size(self) -> int:
        return len(self.elements)


def closure_of(
    generators: Sequence[PartialBijection],
    max_elements: int | None = None,
    chunk: int = 512,
) -> ClosureResult:
    """Breadth-first closure of the generators under compose and inverse."""
    if not generators:
        raise ValueError("need at least one generator")
    window = generators[0].window
    all_rows = unique_rows(encode_rows(generators, window))
    known: dict[bytes, int] = {r.tobytes(): 0 for r in all_rows}
    frontier = all_rows
    frontier_sizes = [len(all_rows)]
    closed = True
    round_no = 0
    while len(frontier):
        round_no += 1
        fresh: dict[bytes, np.ndarray] = {}

        def absorb(cand: np.ndarray) -> None:
            for r in cand:
                key = r.tobytes()
                if key not in known and key not in fresh:
                    fresh[key] = r.copy()

        for left, right in ((all_rows, frontier), (frontier, all_rows)):
            for start in range(0, len(right), chunk):
                block = right[start : start + chunk]
                prods = compose_rows(left, block).reshape(-1, window)
                absorb(unique_rows(prods))
        absorb(unique_rows(invert_rows(frontier)))
        if not fresh:
            break
        if max_elements is not None and len(known) + len(fresh) > max_elements:
            closed = False
            break
        new_rows = unique_rows(np.stack(list(fresh.values())))
        for r in new_rows:
            known[r.tobytes()] = round_no
        all_rows = np.concatenate([all_rows, new_rows])
        frontier = new_rows
        frontier_sizes.append(len(new_rows))
    order = unique_rows(all_rows)
    elements = tuple(decode_row(r, window) for r in order)
    generations = tuple(known[r.tobytes()] for r in order)
    return ClosureResult(elements, generations, tuple(frontier_sizes), closed, window)


# -- structural candidate sets ----------------------------------------------------


GROUP_ENUM_CAP = 7  # 7! = 5040 permutations; past this, enumeration is refused


def windowed_block_group(block: SetDescriptor, window: int) -> list[PartialBijection]:
    """Every permutation of the block's points below the window."""
    pts = block.below(window)
    if len(pts) > GROUP_ENUM_CAP:
        raise BudgetExceededError(
            f"block has {len(pts)} points below {window}; refusing {len(pts)}! permutations"
        )
    return [
        PartialBijection.of(zip(pts, img), window)
        for img in itertools.permutations(pts)
    ]


def sparse_group_generators(block: SetDescriptor, window: int) -> list[PartialBijection]:
    """A transposition and a full cycle: enough to regrow the whole group."""
    pts = block.below(window)
    if len(pts) < 2:
        return [PartialBijection.identity_on(pts, window)]
    swap = {pts[0]: pts[1], pts[1]: pts[0]}
    maps = [PartialBijection.of({p: swap.get(p, p) for p in pts}, window)]
    if len(pts) > 2:
        cycle = {p: q for p, q in zip(pts, pts[1:] + pts[:1])}
        maps.append(PartialBijection.of(cycle, window))
    return maps


def family_generators(
    family: BlockFamily, window: int, sparse: bool = False
) -> list[PartialBijection]:
    maps: list[PartialBijection] = []
    for b in family.blocks:
        maps += sparse_group_generators(b, window) if sparse else windowed_block_group(b, window)
    return maps


def _strata_maps(
    pi: list[int], pj: list[int], ranks: Iterable[int], window: int
) -> Iterable[PartialBijection]:
    for k in ranks:
        for dom in itertools.combinations(pi, k):
            for img in itertools.permutations(pj, k):
                yield PartialBijection.of(zip(dom, img), window)


def structural_rows(
    family: BlockFamily, window: int, capacity: list[list[int]] | None = None
) -> np.ndarray:
    """Windowed picture of the subsemigroup the block groups generate:
    whole block groups, finite strata up to each chain capacity, and the
    empty map.  Returned as deduplicated sorted rows."""
    if capacity is None:
        capacity = chain_capacity_matrix(family)
    maps = [PartialBijection.empty(window)]
    for b in family.blocks:
        maps += windowed_block_group(b, window)
    pts = [b.below(window) for b in family.blocks]
    for i in range(len(family.blocks)):
        for j in range(len(family.blocks)):
            ranks = range(1, capacity[i][j] + 1)
            maps.extend(_strata_maps(pts[i], pts[j], ranks, window))
    return unique_rows(encode_rows(maps, window))


def uniform_union_rows(family: BlockFamily, bound: int, window: int) -> np.ndarray:
    """Windowed block groups plus all strata of rank <= bound, every block
    pair, plus the empty map: the union whose closedness tracks whether
    all pairwise overlaps stay within the bound."""
    maps = [PartialBijection.empty(window)]
    for b in family.blocks:
        maps += windowed_block_group(b, window)
    pts = [b.below(window) for b in family.blocks]
    for i in range(len(family.blocks)):
        for j in range(len(family.blocks)):
            maps.extend(_strata_maps(pts[i], pts[j], range(1, bound + 1), window))
    return unique_rows(encode_rows(maps, window))


# -- comparisons ----------------------------------------------------


@dataclass(frozen=True)
class StructuralDiff:
    matches: bool
    missing: tuple[PartialBijection, ...]
    extra: tuple[PartialBijection, ...]
    closure_size: int
    structural_size: int


def compare_with_structural(
    result: ClosureResult, family: BlockFamily, capacity: list[list[int]] | None = None
) -> StructuralDiff:
    target = structural_rows(family, result.window, capacity)
    got = encode_rows(result.elements, result.window)
    target_keys = {r.tobytes() for r in target}
    got_keys = {r.tobytes() for r in got}
    missing = tuple(
        decode_row(r, result.window) for r in target if r.tobytes() not in got_keys
    )
    extra = tuple(
        decode_row(r, result.window) for r in got if r.tobytes() not in target_keys
    )
    return StructuralDiff(
        matches=not missing and not extra,
        missing=missing,
        extra=extra,
        closure_size=len(got),
        structural_size=len(target),
    )


def rows_closed_under_ops(rows: np.ndarray, window: int, chunk: int = 512) -> tuple[bool, int]:
    """Check a row set is closed under composition and inverse.

    Returns (closed, products_checked); stops at the first escape."""
    keys = {r.tobytes() for r in rows}
    checked = 0
    for start in range(0, len(rows), chunk):
        block = rows[start : start + chunk]
        prods = compose_rows(rows, block).reshape(-1, window)
        checked += len(prods)
        for r in unique_rows(prods):
            if r.tobytes() not in keys:
                return False, checked
    for r in unique_rows(invert_rows(rows)):
        if r.tobytes() not in keys:
            return False, checked
    return True, checked


# -- the closure bound ----------------------------------------------------


@dataclass(frozen=True)
class ClosureBoundReport:
    satisfied: bool
    closed: bool
    n: int
    window: int | None
    max_overlap: int
    bad_pair: tuple[int, int] | None
    witness: dict | None
    products_checked: int


def check_closure_bound(family: BlockFamily, n: int, window: int | None = None) -> ClosureBoundReport:
    """Test whether the rank-n union is a subsemigroup.

    When every pairwise overlap has at most n points, the windowed union
    is verified closed under composition and inverse by brute force.
    When some overlap is larger, the product of the two block identities
    escapes every stratum of the union; the report carries that witness
    in exact (unwindowed) form.
    """
    from .symbolic import format_sym, partial_identity

    b = len(family.blocks)
    overlaps = [
        (family.intersection_size(i, j), i, j)
        for i in range(b)
        for j in range(b)
        if i < j
    ]
    max_overlap = max(s for s, _, _ in overlaps) if overlaps else 0
    violation = next(((s, i, j) for s, i, j in overlaps if s > n), None)
    if violation is not None:
        size, i, j = violation
        meet = family.blocks[i].intersect(family.blocks[j])
        witness = {
            "i": i,
            "j": j,
            "left": format_sym(partial_identity(family.blocks[j]), family.blocks),
            "right": format_sym(partial_identity(family.blocks[i]), family.blocks),
            "composite": format_sym(partial_identity(meet), family.blocks),
            "rank": size,
            "bound": n,
        }
        return ClosureBoundReport(
            satisfied=False,
            closed=False,
            n=n,
            window=window,
            max_overlap=max_overlap,
            bad_pair=(i, j),
            witness=witness,
            products_checked=0,
        )
    if window is None:
        window = minimal_window(family, [[n] * b for _ in range(b)])
    rows = uniform_union_rows(family, n, window)
    ok, checked = rows_closed_under_ops(rows, window)
    return ClosureBoundReport(
        satisfied=True,
        closed=ok,
        n=n,
        window=window,
        max_overlap=max_overlap,
        bad_pair=None,
        witness=None,
        products_checked=checked,
    )


# -- window sizing ----------------------------------------------------


def minimal_window(family: BlockFamily, rank_matrix: list[list[int]]) -> int:
    """Smallest window with room for every construction the tests drive.

    Each block needs its largest incident rank plus its largest overlap
    plus two points below the window (waypoints, parking space and
    slack), and every overlap point must itself sit below the window.
    """
    b = len(family.blocks)
    needs = []
    for i in range(b):
        max_rank = max(max(rank_matrix[i][j], rank_matrix[j][i]) for j in range(b))
        max_off = max(
            (family.intersection_size(i, j) for j in range(b) if j != i), default=0
        )
        needs.append(max_rank + max_off + 2)
    overlap_pts: set[int] = set()
    for i in range(b):
        for j in range(i + 1, b):
            overlap_pts.update(family.blocks[i].intersect(family.blocks[j]).points())
    for w in range(1, MAX_WINDOW + 1):
        if all(p < w for p in overlap_pts) and all(
            len(family.blocks[i].below(w)) >= needs[i] for i in range(b)
        ):
            return w
    raise BudgetExceededError("no window within the int8 limit fits this family")
