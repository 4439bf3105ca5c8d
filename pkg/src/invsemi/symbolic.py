"""Symbolic elements: exact partial bijections of the naturals.

Two canonical shapes cover everything the workbench manipulates:

* ``BlockPerm(block, pairs)``: a finitely supported permutation of an
  infinite set, stored as its moving pairs (never empty, never fixing a
  point it lists).
* ``IdFin(base, pairs)``: the identity on ``base`` patched by a finite
  injection whose endpoints avoid ``base``.  Covers finite maps
  (``base`` empty), partial identities (no pairs) and cofinite-domain
  elements (infinite ``base`` with pairs).

Every element has exactly one representation: identity pairs fold into
the base, and an ``IdFin`` whose patch permutes a fixed set over an
infinite carrier is promoted to a ``BlockPerm``.  Construct through
:func:`sym_element` or the named helpers; the dataclass constructors
reject non-canonical data.
"""

from __future__ import annotations

from dataclasses import dataclass

from .descriptors import EMPTY, SetDescriptor
from .errors import (
    NotInjectiveError,
    OutOfDomainError,
    ParseError,
    UnsupportedCompositionError,
    WindowMismatchError,
)
from .pbij import Pair, PartialBijection


def _check_pairs(pairs: tuple[Pair, ...]) -> None:
    srcs = [s for s, _ in pairs]
    tgts = [t for _, t in pairs]
    if len(set(srcs)) != len(srcs):
        raise NotInjectiveError("repeated source in pair list")
    if len(set(tgts)) != len(tgts):
        raise NotInjectiveError("repeated target in pair list")
    if any(v < 0 for v in srcs + tgts):
        raise ValueError("map points must be naturals")
    if pairs != tuple(sorted(pairs)):
        raise ValueError("pairs must be sorted by source")


@dataclass(frozen=True)
class BlockPerm:
    """Finitely supported permutation of the infinite set ``block``."""

    block: SetDescriptor
    pairs: tuple[Pair, ...]

    def __post_init__(self) -> None:
        if not self.block.is_infinite():
            raise ValueError("block of a permutation must be infinite")
        if not self.pairs:
            raise ValueError("trivial permutation must be stored as a partial identity")
        _check_pairs(self.pairs)
        srcs = {s for s, _ in self.pairs}
        tgts = {t for _, t in self.pairs}
        if any(s == t for s, t in self.pairs):
            raise ValueError("moving pairs may not fix a point")
        if srcs != tgts:
            raise ValueError("moved sources and targets must coincide")
        if any(not self.block.member(s) for s in srcs):
            raise ValueError("moved point outside the block")

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(s for s, _ in self.pairs))


@dataclass(frozen=True)
class IdFin:
    """Identity on ``base`` patched by a finite injection off ``base``."""

    base: SetDescriptor
    pairs: tuple[Pair, ...]

    def __post_init__(self) -> None:
        _check_pairs(self.pairs)
        if any(s == t for s, t in self.pairs):
            raise ValueError("identity pairs must be folded into the base")
        for s, t in self.pairs:
            if self.base.member(s) or self.base.member(t):
                raise ValueError("pair endpoint inside the identity base")
        if self.pairs and self.base.is_infinite():
            srcs = {s for s, _ in self.pairs}
            tgts = {t for _, t in self.pairs}
            if srcs == tgts:
                raise ValueError("permuting patch over an infinite carrier must be a BlockPerm")


SymElement = BlockPerm | IdFin


# -- construction ----------------------------------------------------


def sym_element(base: SetDescriptor, pairs) -> SymElement:
    """Canonical constructor: identity on ``base`` plus the given pairs.

    Identity pairs are folded into the base; a patch that permutes a
    fixed set over an infinite carrier comes back as a ``BlockPerm``.
    """
    pairs = tuple(sorted((int(s), int(t)) for s, t in pairs))
    _check_pairs(pairs)
    fixed = [s for s, t in pairs if s == t]
    moving = tuple((s, t) for s, t in pairs if s != t)
    if fixed:
        base = base.with_points(fixed)
    for s, t in moving:
        if base.member(s):
            raise ValueError(f"source {s} already in the identity base")
        if base.member(t):
            raise ValueError(f"target {t} lands in the identity base")
    if moving:
        srcs = {s for s, _ in moving}
        tgts = {t for _, t in moving}
        if srcs == tgts and base.is_infinite():
            return BlockPerm(base.with_points(srcs), moving)
    return IdFin(base, moving)


def fin_map(pairs) -> SymElement:
    """Finite partial bijection given by its pairs."""
    return sym_element(EMPTY, pairs)


def partial_identity(carrier) -> SymElement:
    """Identity on the given set (a descriptor or any iterable of points)."""
    if not isinstance(carrier, SetDescriptor):
        carrier = SetDescriptor.from_points(carrier)
    return sym_element(carrier, ())


def empty_map() -> SymElement:
    return IdFin(EMPTY, ())


def block_perm(block: SetDescriptor, pairs) -> SymElement:
    """Finitely supported permutation of ``block`` (fixed pairs allowed)."""
    pairs = tuple(sorted((int(s), int(t)) for s, t in pairs))
    _check_pairs(pairs)
    srcs = {s for s, _ in pairs}
    tgts = {t for _, t in pairs}
    if srcs != tgts:
        raise ValueError("pair list does not permute its support")
    if not block.is_infinite():
        raise ValueError("block must be infinite")
    if any(not block.member(s) or not block.member(t) for s, t in pairs):
        raise ValueError("permutation point outside the block")
    return sym_element(block.without_points(srcs), pairs)


# -- structure ----------------------------------------------------


def _carrier(f: SymElement) -> SetDescriptor:
    return f.block if isinstance(f, BlockPerm) else f.base


def dom_set(f: SymElement) -> SetDescriptor:
    if isinstance(f, BlockPerm):
        return f.block
    return f.base.with_points(s for s, _ in f.pairs)


def im_set(f: SymElement) -> SetDescriptor:
    if isinstance(f, BlockPerm):
        return f.block
    return f.base.with_points(t for _, t in f.pairs)


def sym_apply(f: SymElement, x: int) -> int:
    for s, t in f.pairs:
        if s == x:
            return t
    if _carrier(f).member(x):
        return x
    raise OutOfDomainError(f"{x} not in domain")


def sym_defined_at(f: SymElement, x: int) -> bool:
    return any(s == x for s, _ in f.pairs) or _carrier(f).member(x)


def sym_inverse(f: SymElement) -> SymElement:
    flipped = tuple(sorted((t, s) for s, t in f.pairs))
    if isinstance(f, BlockPerm):
        return BlockPerm(f.block, flipped)
    return IdFin(f.base, flipped)


def is_partial_identity_sym(f: SymElement) -> bool:
    return isinstance(f, IdFin) and not f.pairs


def is_empty_sym(f: SymElement) -> bool:
    return isinstance(f, IdFin) and not f.pairs and f.base.is_empty()


def is_finite_sym(f: SymElement) -> bool:
    """True when the element is a finite partial bijection."""
    return isinstance(f, IdFin) and not f.base.is_infinite()


# -- composition ----------------------------------------------------


def sym_compose(f: SymElement, g: SymElement) -> SymElement:
    """f after g: acts as x -> f(g(x)) where both steps are defined."""
    if isinstance(f, IdFin) and isinstance(g, IdFin):
        return _compose_idfin_idfin(f, g)
    if isinstance(f, BlockPerm) and isinstance(g, BlockPerm):
        return _compose_perm_perm(f, g)
    if isinstance(f, BlockPerm):
        return _compose_perm_idfin(f, g)
    return _compose_idfin_perm(f, g)


def _compose_idfin_idfin(f: IdFin, g: IdFin) -> SymElement:
    after = dict(f.pairs)
    pairs = []
    for x, gx in g.pairs:
        if f.base.member(gx):
            pairs.append((x, gx))
        elif gx in after:
            pairs.append((x, after[gx]))
    for s, fs in f.pairs:
        if g.base.member(s):
            pairs.append((s, fs))
    return sym_element(g.base.intersect(f.base), pairs)


def _compose_perm_perm(f: BlockPerm, g: BlockPerm) -> SymElement:
    if f.block == g.block:
        after = dict(f.pairs)
        first = dict(g.pairs)
        sources = set(after) | set(first)
        pairs = []
        for x in sources:
            y = first.get(x, x)
            pairs.append((x, after.get(y, y)))
        return sym_element(f.block.without_points(sources), pairs)
    meet = f.block.intersect(g.block)
    if meet.is_infinite():
        raise UnsupportedCompositionError(
            "permutations of distinct blocks with infinite overlap"
        )
    first_inv = {t: s for s, t in g.pairs}
    after = dict(f.pairs)
    pairs = []
    for y in meet.points():
        pairs.append((first_inv.get(y, y), after.get(y, y)))
    return sym_element(EMPTY, pairs)


def _compose_perm_idfin(f: BlockPerm, g: IdFin) -> SymElement:
    after = dict(f.pairs)
    pairs = []
    for s, fs in f.pairs:
        if g.base.member(s):
            pairs.append((s, fs))
    for x, gx in g.pairs:
        if f.block.member(gx):
            pairs.append((x, after.get(gx, gx)))
    base = g.base.intersect(f.block).without_points(after.keys())
    return sym_element(base, pairs)


def _compose_idfin_perm(f: IdFin, g: BlockPerm) -> SymElement:
    first = dict(g.pairs)
    after = dict(f.pairs)
    pairs = []
    for x, gx in g.pairs:
        if f.base.member(gx):
            pairs.append((x, gx))
        elif gx in after:
            pairs.append((x, after[gx]))
    for q, fq in f.pairs:
        if q not in first and g.block.member(q):
            pairs.append((q, fq))
    base = g.block.intersect(f.base).without_points(first.keys())
    return sym_element(base, pairs)


def compose_chain(factors) -> SymElement:
    """Compose ``factors[0] . factors[1] . ... `` (rightmost acts first)."""
    factors = list(factors)
    if not factors:
        raise ValueError("empty factor list")
    out = factors[0]
    for g in factors[1:]:
        out = sym_compose(out, g)
    return out


# -- windowing ----------------------------------------------------


def project_to_window(f: SymElement, window: int) -> PartialBijection:
    """Truncate to the points below ``window``.

    Infinite carriers truncate silently; finite data (moved pairs, and
    the whole carrier of a finite element) must already fit, since
    dropping it would change the element rather than window it.
    """
    if any(v >= window for p in f.pairs for v in p):
        raise WindowMismatchError("map pairs exceed the window")
    if isinstance(f, BlockPerm):
        moved = dict(f.pairs)
        pairs = [(x, moved.get(x, x)) for x in f.block.below(window)]
        return PartialBijection.of(pairs, window)
    if not f.base.is_infinite() and any(p >= window for p in f.base.points()):
        raise WindowMismatchError("finite identity base exceeds the window")
    pairs = list(f.pairs) + [(x, x) for x in f.base.below(window)]
    return PartialBijection.of(pairs, window)


# -- classification ----------------------------------------------------


@dataclass(frozen=True)
class StratumTag:
    """Where an element sits relative to a block family.

    kind is one of ``group`` (finitely supported permutation of block
    ``i``, including its identity), ``finite`` (finite map of rank ``k``
    with domain inside block ``i`` and image inside block ``j``),
    ``empty`` (the empty map) or ``outside``.
    """

    kind: str
    i: int | None = None
    j: int | None = None
    k: int | None = None


def classify(f: SymElement, blocks: tuple[SetDescriptor, ...]) -> StratumTag:
    """Stratum of ``f`` in the family, smallest block indices winning ties."""
    if isinstance(f, BlockPerm):
        for i, b in enumerate(blocks):
            if b == f.block:
                return StratumTag("group", i, i, None)
        return StratumTag("outside")
    if f.base.is_infinite():
        if not f.pairs:
            for i, b in enumerate(blocks):
                if b == f.base:
                    return StratumTag("group", i, i, None)
        return StratumTag("outside")
    dom = dom_set(f).points()
    if not dom:
        return StratumTag("empty", None, None, 0)
    im = im_set(f).points()
    i = next((n for n, b in enumerate(blocks) if all(b.member(x) for x in dom)), None)
    j = next((n for n, b in enumerate(blocks) if all(b.member(y) for y in im)), None)
    if i is None or j is None:
        return StratumTag("outside")
    return StratumTag("finite", i, j, len(dom))


# -- literals ----------------------------------------------------


def _pairs_text(pairs: tuple[Pair, ...]) -> str:
    return ", ".join(f"{s}->{t}" for s, t in pairs)


def _block_name(d: SetDescriptor, blocks: tuple[SetDescriptor, ...] | None) -> str:
    if blocks is not None:
        for i, b in enumerate(blocks):
            if b == d:
                return f"B{i}"
    return d.to_text()


def format_sym(f: SymElement, blocks: tuple[SetDescriptor, ...] | None = None) -> str:
    if isinstance(f, BlockPerm):
        return "perm(%s; %s)" % (_block_name(f.block, blocks), _pairs_text(f.pairs))
    if not f.pairs:
        if f.base.is_empty():
            return "empty"
        return "id(%s)" % _block_name(f.base, blocks)
    if f.base.is_empty():
        return "fin(%s)" % _pairs_text(f.pairs)
    return "idplus(%s; %s)" % (_block_name(f.base, blocks), _pairs_text(f.pairs))


def _parse_pairs(body: str) -> list[Pair]:
    import re

    body = body.strip()
    if not body:
        return []
    pairs = []
    for chunk in body.split(","):
        m = re.match(r"^\s*(\d+)\s*->\s*(\d+)\s*$", chunk)
        if not m:
            raise ParseError(f"bad pair {chunk!r}")
        pairs.append((int(m.group(1)), int(m.group(2))))
    return pairs


def _parse_carrier(name: str, blocks: tuple[SetDescriptor, ...] | None) -> SetDescriptor:
    import re

    name = name.strip()
    m = re.match(r"^B(\d+)$", name)
    if m:
        if blocks is None:
            raise ParseError(f"block reference {name!r} needs a family")
        idx = int(m.group(1))
        if idx >= len(blocks):
            raise ParseError(f"family has no block {name}")
        return blocks[idx]
    return SetDescriptor.from_text(name)


def parse_sym(text: str, blocks: tuple[SetDescriptor, ...] | None = None) -> SymElement:
    """Parse element literals: ``empty``, ``fin(1->0)``, ``id(B2)``,
    ``perm(B0; 1->4, 4->1)``, ``idplus(tail mod 2 residues [0]; 1->3)``."""
    import re

    s = text.strip()
    if s == "empty":
        return empty_map()
    m = re.match(r"^(?P<head>fin|id|perm|idplus)\((?P<body>.*)\)$", s, re.DOTALL)
    if not m:
        raise ParseError(f"bad element literal: {text!r}")
    head, body = m.group("head"), m.group("body")
    try:
        if head == "fin":
            return fin_map(_parse_pairs(body))
        if head == "id":
            return partial_identity(_parse_carrier(body, blocks))
        carrier_text, _, pairs_text = body.partition(";")
        if not _ :
            raise ParseError(f"{head} literal needs ';' between carrier and pairs")
        carrier = _parse_carrier(carrier_text, blocks)
        pairs = _parse_pairs(pairs_text)
        if head == "perm":
            return block_perm(carrier, pairs)
        return sym_element(carrier, pairs)
    except (ValueError, NotInjectiveError) as exc:
        raise ParseError(f"invalid element {text!r}: {exc}") from exc
