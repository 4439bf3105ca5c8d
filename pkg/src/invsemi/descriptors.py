"""Exact finite-or-eventually-periodic subsets of the naturals.

A ``SetDescriptor`` stores a subset of the naturals as an eventually
periodic tail (a set of residues modulo some period) patched by finitely
many added and removed points.  The stored form is canonical: the period
is minimal, removed points really lie on the tail, added points do not.
Structural equality therefore decides set equality, which the rest of
the package leans on for hashing and deduplication.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .errors import ParseError


def _minimal_period(modulus: int, residues: frozenset[int]) -> tuple[int, tuple[int, ...]]:
    """Reduce (modulus, residues) to the least period describing the same tail."""
    if not residues:
        return 1, ()
    for d in range(1, modulus + 1):
        if modulus % d != 0:
            continue
        if all(((r + d) % modulus in residues) == (r in residues) for r in range(modulus)):
            return d, tuple(sorted({r % d for r in residues}))
    return modulus, tuple(sorted(residues))


@dataclass(frozen=True)
class SetDescriptor:
    """Canonical subset of the naturals: periodic tail plus finite patches.

    Membership: ``x`` belongs to the set when ``x`` is an added point, or
    when ``x % modulus`` hits a tail residue and ``x`` is not removed.
    Use :meth:`build` (or the module helpers) instead of the constructor;
    the constructor insists on already-canonical data.
    """

    add: tuple[int, ...] = ()
    remove: tuple[int, ...] = ()
    modulus: int = 1
    residues: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        res = set(self.residues)
        if self.residues != tuple(sorted(res)) or len(res) != len(self.residues):
            raise ValueError("residues must be sorted and distinct")
        if any(r < 0 or r >= self.modulus for r in self.residues):
            raise ValueError("residues must lie in [0, modulus)")
        if not self.residues and self.modulus != 1:
            raise ValueError("empty tail must use modulus 1")
        if _minimal_period(self.modulus, frozenset(res)) != (self.modulus, self.residues):
            raise ValueError("tail period is not minimal")
        for name, pts in (("add", self.add), ("remove", self.remove)):
            if pts != tuple(sorted(set(pts))):
                raise ValueError(f"{name} points must be sorted and distinct")
            if any(p < 0 for p in pts):
                raise ValueError(f"{name} points must be naturals")
        if any(a % self.modulus in res for a in self.add):
            raise ValueError("added point already on the tail")
        if any(r % self.modulus not in res for r in self.remove):
            raise ValueError("removed point is not on the tail")

    # -- construction ----------------------------------------------------

    @classmethod
    def build(
        cls,
        add: Iterable[int] = (),
        remove: Iterable[int] = (),
        modulus: int = 1,
        residues: Iterable[int] = (),
    ) -> "SetDescriptor":
        """Canonicalize arbitrary patch data.  Added points win over removed."""
        add_set = set(add)
        remove_set = set(remove) - add_set
        mod, res = _minimal_period(modulus, frozenset(r % modulus for r in residues))
        res_set = set(res)
        fin_add = []
        fin_remove = []
        for x in sorted(add_set | remove_set):
            desired = x in add_set
            on_tail = x % mod in res_set
            if desired and not on_tail:
                fin_add.append(x)
            elif not desired and on_tail:
                fin_remove.append(x)
        return cls(tuple(fin_add), tuple(fin_remove), mod, res)

    @classmethod
    def from_points(cls, points: Iterable[int]) -> "SetDescriptor":
        return cls.build(add=points)

    @classmethod
    def empty(cls) -> "SetDescriptor":
        return cls()

    @classmethod
    def naturals(cls) -> "SetDescriptor":
        return cls(modulus=1, residues=(0,))

    @classmethod
    def residue_class(cls, residue: int, modulus: int) -> "SetDescriptor":
        return cls.build(modulus=modulus, residues=(residue,))

    # -- membership and size ----------------------------------------------

    def member(self, x: int) -> bool:
        if x in self.add:
            return True
        return x % self.modulus in self.residues and x not in self.remove

    def __contains__(self, x: int) -> bool:
        return self.member(x)

    def is_infinite(self) -> bool:
        return bool(self.residues)

    def is_empty(self) -> bool:
        return not self.residues and not self.add

    def size(self) -> int | None:
        """Number of members, or None when the set is infinite."""
        return None if self.residues else len(self.add)

    def points(self) -> tuple[int, ...]:
        """All members of a finite set."""
        if self.residues:
            raise ValueError("points() on an infinite set")
        return self.add

    def below(self, bound: int) -> list[int]:
        """Members strictly below ``bound``, ascending."""
        return [x for x in range(bound) if self.member(x)]

    def iter_members(self) -> Iterator[int]:
        """All members in ascending order (endless when the set is infinite)."""
        if not self.residues:
            yield from self.add
            return
        for x in itertools.count():
            if self.member(x):
                yield x

    def first_members(self, k: int) -> list[int]:
        out = list(itertools.islice(self.iter_members(), k))
        if len(out) < k:
            raise ValueError(f"set has only {len(out)} members, wanted {k}")
        return out

    def least_outside(self, exclude: Iterable[int]) -> int:
        """Least member not in ``exclude``."""
        banned = set(exclude)
        for x in self.iter_members():
            if x not in banned:
                return x
        raise ValueError("set exhausted while avoiding excluded points")

    # -- boolean algebra ----------------------------------------------------

    def _pointwise(self, other: "SetDescriptor", op: Callable[[bool, bool], bool]) -> "SetDescriptor":
        import math

        big = math.lcm(self.modulus, other.modulus)
        res = [
            r
            for r in range(big)
            if op(r % self.modulus in self.residues, r % other.modulus in other.residues)
        ]
        finite = set(self.add) | set(self.remove) | set(other.add) | set(other.remove)
        res_set = set(res)
        add, remove = [], []
        for x in finite:
            desired = op(self.member(x), other.member(x))
            if desired:
                add.append(x)
            elif x % big in res_set:
                remove.append(x)
        return SetDescriptor.build(add=add, remove=remove, modulus=big, residues=res)

    def intersect(self, other: "SetDescriptor") -> "SetDescriptor":
        return self._pointwise(other, lambda a, b: a and b)

    def union(self, other: "SetDescriptor") -> "SetDescriptor":
        return self._pointwise(other, lambda a, b: a or b)

    def difference(self, other: "SetDescriptor") -> "SetDescriptor":
        return self._pointwise(other, lambda a, b: a and not b)

    def complement(self) -> "SetDescriptor":
        res = [r for r in range(self.modulus) if r not in self.residues]
        finite = set(self.add) | set(self.remove)
        res_set = set(res)
        add, remove = [], []
        for x in finite:
            if not self.member(x):
                add.append(x)
            elif x % self.modulus in res_set:
                remove.append(x)
        return SetDescriptor.build(add=add, remove=remove, modulus=self.modulus, residues=res)

    def with_points(self, points: Iterable[int]) -> "SetDescriptor":
        return self.union(SetDescriptor.from_points(points))

    def without_points(self, points: Iterable[int]) -> "SetDescriptor":
        return self.difference(SetDescriptor.from_points(points))

    def subset_of(self, other: "SetDescriptor") -> bool:
        return self.difference(other).is_empty()

    def disjoint_from(self, other: "SetDescriptor") -> bool:
        return self.intersect(other).is_empty()

    # -- serialization ----------------------------------------------------

    def to_config(self) -> dict:
        cfg: dict = {}
        if self.add:
            cfg["finite"] = list(self.add)
        if self.residues:
            cfg["tail"] = {"mod": self.modulus, "residues": list(self.residues)}
        if self.remove:
            cfg["remove"] = list(self.remove)
        return cfg

    @classmethod
    def from_config(cls, cfg: dict) -> "SetDescriptor":
        if not isinstance(cfg, dict):
            raise ParseError(f"set config must be an object, got {type(cfg).__name__}")
        extra = set(cfg) - {"finite", "tail", "remove"}
        if extra:
            raise ParseError(f"unknown set config keys: {sorted(extra)}")
        add = cfg.get("finite", [])
        remove = cfg.get("remove", [])
        tail = cfg.get("tail")
        modulus, residues = 1, ()
        if tail is not None:
            if not isinstance(tail, dict) or set(tail) - {"mod", "residues"}:
                raise ParseError("tail must be an object with keys mod, residues")
            modulus = tail.get("mod", 1)
            residues = tail.get("residues", [])
        for seq in (add, remove, residues):
            if not isinstance(seq, (list, tuple)) or not all(isinstance(v, int) for v in seq):
                raise ParseError("set config lists must contain integers")
        if not isinstance(modulus, int) or modulus < 1:
            raise ParseError("tail mod must be a positive integer")
        return cls.build(add=add, remove=remove, modulus=modulus, residues=residues)

    def to_text(self) -> str:
        if self.is_empty():
            return "empty"
        parts = []
        if self.add:
            parts.append("finite {%s}" % ",".join(map(str, self.add)))
        if self.residues:
            parts.append("tail mod %d residues [%s]" % (self.modulus, ",".join(map(str, self.residues))))
        if self.remove:
            parts.append("remove {%s}" % ",".join(map(str, self.remove)))
        return " ".join(parts)

    @classmethod
    def from_text(cls, text: str) -> "SetDescriptor":
        """Parse the ``to_text`` grammar, e.g. ``finite {0,1} tail mod 6 residues [2] remove {4}``."""
        import re

        s = text.strip()
        if s == "empty":
            return cls.empty()
        if s == "all":
            return cls.naturals()
        pat = re.compile(
            r"^(?:finite \{(?P<finite>[\d,\s]*)\})?\s*"
            r"(?:tail mod (?P<mod>\d+) residues \[(?P<res>[\d,\s]*)\])?\s*"
            r"(?:remove \{(?P<remove>[\d,\s]*)\})?$"
        )
        m = pat.match(s)
        if not m or not any(m.group(g) is not None for g in ("finite", "mod", "remove")):
            raise ParseError(f"cannot parse set descriptor: {text!r}")

        def ints(raw: str | None) -> list[int]:
            if raw is None or not raw.strip():
                return []
            return [int(tok) for tok in raw.split(",")]

        modulus = int(m.group("mod")) if m.group("mod") else 1
        return cls.build(
            add=ints(m.group("finite")),
            remove=ints(m.group("remove")),
            modulus=modulus,
            residues=ints(m.group("res")),
        )

    def __str__(self) -> str:
        return self.to_text()


def finite_intersection_size(a: SetDescriptor, b: SetDescriptor) -> int | None:
    """Size of the intersection, or None when it is infinite."""
    return a.intersect(b).size()


EMPTY = SetDescriptor.empty()
NATURALS = SetDescriptor.naturals()
