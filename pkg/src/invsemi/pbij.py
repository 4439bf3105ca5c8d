"""Windowed partial bijections.

A ``PartialBijection`` is a finite injective partial map on the points
``0 .. window-1``.  The window is carried explicitly: two maps compare
equal only when both pairs and window agree, and mixing windows in an
operation is an error rather than a silent reinterpretation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import NotInjectiveError, OutOfDomainError, ParseError, WindowMismatchError

Pair = tuple[int, int]


@dataclass(frozen=True)
class PartialBijection:
    pairs: tuple[Pair, ...]
    window: int

    def __post_init__(self) -> None:
        if self.window < 0:
            raise ValueError("window must be >= 0")
        srcs = [s for s, _ in self.pairs]
        tgts = [t for _, t in self.pairs]
        if len(set(srcs)) != len(srcs):
            raise NotInjectiveError("repeated source point")
        if len(set(tgts)) != len(tgts):
            raise NotInjectiveError("repeated target point")
        if any(v < 0 or v >= self.window for v in srcs + tgts):
            raise ValueError("point outside window")
        if self.pairs != tuple(sorted(self.pairs)):
            raise ValueError("pairs must be sorted by source")

    # -- construction ----------------------------------------------------

    @classmethod
    def of(cls, pairs: Iterable[Pair] | Mapping[int, int], window: int) -> "PartialBijection":
        if isinstance(pairs, Mapping):
            pairs = pairs.items()
        return cls(tuple(sorted((int(s), int(t)) for s, t in pairs)), window)

    @classmethod
    def identity_on(cls, points: Iterable[int], window: int) -> "PartialBijection":
        return cls(tuple(sorted((p, p) for p in set(points))), window)

    @classmethod
    def empty(cls, window: int) -> "PartialBijection":
        return cls((), window)

    # -- structure ----------------------------------------------------

    def domain(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.pairs)

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(t for _, t in self.pairs))

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def apply(self, x: int) -> int:
        for s, t in self.pairs:
            if s == x:
                return t
        raise OutOfDomainError(f"{x} not in domain of {self}")

    def defined_at(self, x: int) -> bool:
        return any(s == x for s, _ in self.pairs)

    def hits(self, y: int) -> bool:
        return any(t == y for _, t in self.pairs)

    def is_partial_identity(self) -> bool:
        return all(s == t for s, t in self.pairs)

    def is_idempotent(self) -> bool:
        return self.compose(self) == self

    # -- algebra ----------------------------------------------------

    def _check_window(self, other: "PartialBijection") -> None:
        if self.window != other.window:
            raise WindowMismatchError(f"window {self.window} vs {other.window}")

    def compose(self, other: "PartialBijection") -> "PartialBijection":
        """self after other: x -> self(other(x)) where both steps are defined."""
        self._check_window(other)
        mine = self.as_dict()
        pairs = [(x, mine[y]) for x, y in other.pairs if y in mine]
        return PartialBijection(tuple(sorted(pairs)), self.window)

    def inverse(self) -> "PartialBijection":
        return PartialBijection(tuple(sorted((t, s) for s, t in self.pairs)), self.window)

    def restrict(self, points: Iterable[int]) -> "PartialBijection":
        keep = set(points)
        return PartialBijection(tuple(p for p in self.pairs if p[0] in keep), self.window)

    def domain_projection(self) -> "PartialBijection":
        """The idempotent f^-1 f: identity on the domain."""
        return PartialBijection.identity_on(self.domain(), self.window)

    def image_projection(self) -> "PartialBijection":
        """The idempotent f f^-1: identity on the image."""
        return PartialBijection.identity_on(self.image(), self.window)

    # -- literals ----------------------------------------------------

    def format_literal(self) -> str:
        inner = ", ".join(f"{s}->{t}" for s, t in self.pairs)
        return "{%s}@%d" % (inner, self.window)

    @classmethod
    def parse_literal(cls, text: str) -> "PartialBijection":
        m = re.match(r"^\s*\{(?P<body>[^}]*)\}@(?P<window>\d+)\s*$", text)
        if not m:
            raise ParseError(f"bad partial bijection literal: {text!r}")
        body = m.group("body").strip()
        pairs = []
        if body:
            for chunk in body.split(","):
                pm = re.match(r"^\s*(\d+)\s*->\s*(\d+)\s*$", chunk)
                if not pm:
                    raise ParseError(f"bad pair {chunk!r} in {text!r}")
                pairs.append((int(pm.group(1)), int(pm.group(2))))
        try:
            return cls.of(pairs, int(m.group("window")))
        except (NotInjectiveError, ValueError) as exc:
            raise ParseError(f"invalid literal {text!r}: {exc}") from exc

    def __str__(self) -> str:
        return self.format_literal()


def all_partial_bijections(window: int) -> list[PartialBijection]:
    """Every partial bijection on the points below the window."""
    import itertools

    from .errors import BudgetExceededError

    if window > 6:
        raise BudgetExceededError("full enumeration is capped at window 6")
    pts = range(window)
    out = []
    for k in range(window + 1):
        for dom in itertools.combinations(pts, k):
            for img in itertools.permutations(pts, k):
                out.append(PartialBijection.of(zip(dom, img), window))
    return out


def compose(f: PartialBijection, g: PartialBijection) -> PartialBijection:
    return f.compose(g)


def inverse(f: PartialBijection) -> PartialBijection:
    return f.inverse()
