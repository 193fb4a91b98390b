"""Finite (Alexandrov) topologies on {0, ..., n-1}.

Subsets are stored as int bitmasks.  A finite topology is determined by its
minimal neighbourhoods ``min_nbhd[x]`` (the intersection of all opens
containing x), which is how most checks consume it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence


class TopologyError(ValueError):
    pass


def mask(xs: Iterable[int]) -> int:
    m = 0
    for x in xs:
        m |= 1 << int(x)
    return m


def members(m: int) -> list[int]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def popcount(m: int) -> int:
    return bin(m).count("1")


class FiniteTopology:
    """A topology given by its family of open sets (as bitmasks)."""

    def __init__(self, order: int, opens: Iterable[int]):
        self.order = order
        self.full = (1 << order) - 1
        self.opens = frozenset(opens)
        self._validate()

    def _validate(self):
        if 0 not in self.opens or self.full not in self.opens:
            raise TopologyError("the empty set and the whole carrier must be open")
        if any(U & ~self.full for U in self.opens):
            raise TopologyError("open set has points outside the carrier")
        ops = sorted(self.opens)
        for i, U in enumerate(ops):
            for V in ops[i + 1:]:
                if U | V not in self.opens:
                    raise TopologyError(f"not closed under union: {members(U)} ∪ {members(V)}")
                if U & V not in self.opens:
                    raise TopologyError(f"not closed under intersection: {members(U)} ∩ {members(V)}")

    @classmethod
    def from_min_nbhds(cls, order: int, nbhds: Sequence[int]) -> "FiniteTopology":
        """Alexandrov topology whose opens are the unions of ``nbhds``.

        Requires x ∈ nbhds[x] and y ∈ nbhds[x] ⇒ nbhds[y] ⊆ nbhds[x].
        """
        if not is_preorder(nbhds):
            raise TopologyError("neighbourhood assignment is not reflexive and transitive")
        tau = cls.__new__(cls)
        tau.order = order
        tau.full = (1 << order) - 1
        tau.__dict__["min_nbhd"] = tuple(nbhds)
        return tau

    @cached_property
    def opens(self) -> frozenset[int]:  # type: ignore[no-redef]
        # only reached for instances built from minimal neighbourhoods
        m = self.min_nbhd
        return frozenset(U for U in range(self.full + 1)
                         if all(m[x] & ~U == 0 for x in members(U)))

    @classmethod
    def from_sets(cls, order: int, sets: Iterable[Iterable[int]]) -> "FiniteTopology":
        return cls(order, [mask(s) for s in sets])

    @classmethod
    def discrete(cls, order: int) -> "FiniteTopology":
        return cls.from_min_nbhds(order, [1 << x for x in range(order)])

    @classmethod
    def indiscrete(cls, order: int) -> "FiniteTopology":
        full = (1 << order) - 1
        return cls.from_min_nbhds(order, [full] * order)

    def __eq__(self, other):
        return isinstance(other, FiniteTopology) and self.order == other.order \
            and self.min_nbhd == other.min_nbhd

    def __hash__(self):
        return hash((self.order, self.min_nbhd))

    def __repr__(self):
        return f"FiniteTopology(order={self.order}, min_nbhd={[members(m) for m in self.min_nbhd]})"

    @cached_property
    def min_nbhd(self) -> tuple[int, ...]:  # type: ignore[no-redef]
        out = []
        for x in range(self.order):
            m = self.full
            for U in self.opens:
                if U >> x & 1:
                    m &= U
            out.append(m)
        return tuple(out)

    def is_open(self, U: int) -> bool:
        m = self.min_nbhd
        return all(m[x] & ~U == 0 for x in members(U))

    def is_closed(self, F: int) -> bool:
        return self.is_open(self.full & ~F)

    def closure(self, A: int) -> int:
        """x ∈ cl(A) iff every open set around x meets A, i.e. min_nbhd[x] does."""
        return mask(x for x in range(self.order) if self.min_nbhd[x] & A)

    def interior(self, A: int) -> int:
        return mask(x for x in range(self.order) if self.min_nbhd[x] & ~A == 0)

    def open_hull(self, A: int) -> int:
        """Smallest open set containing A."""
        h = 0
        for x in members(A):
            h |= self.min_nbhd[x]
        return h

    def neighbourhoods_of(self, x: int) -> list[int]:
        """Open sets containing x."""
        return sorted(U for U in self.opens if U >> x & 1)

    @cached_property
    def closed_sets(self) -> frozenset[int]:
        return frozenset(self.full & ~U for U in self.opens)

    def subspace(self, points: Sequence[int]) -> "FiniteTopology":
        """Subspace topology on ``points``, relabelled 0..len(points)-1."""
        pos = {p: i for i, p in enumerate(points)}
        within = mask(points)
        nb = [mask(pos[y] for y in members(self.min_nbhd[p] & within)) for p in points]
        return FiniteTopology.from_min_nbhds(len(points), nb)

    def to_dict(self) -> dict:
        return {"order": self.order, "opens": [members(U) for U in sorted(self.opens, key=lambda U: (popcount(U), members(U)))]}

    def open_lists(self) -> list[list[int]]:
        return self.to_dict()["opens"]


def is_preorder(nbhds: Sequence[int]) -> bool:
    for x, m in enumerate(nbhds):
        if not m >> x & 1:
            return False
        for y in members(m):
            if nbhds[y] & ~m:
                return False
    return True


def topology_from_dict(data) -> FiniteTopology:
    """Parse the JSON topology format without completing missing sets."""
    if not isinstance(data, dict) or "order" not in data or "opens" not in data:
        raise TopologyError("topology file needs 'order' and 'opens'")
    n = data["order"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise TopologyError(f"order must be a positive integer, got {n!r}")
    opens = []
    for s in data["opens"]:
        if not isinstance(s, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in s):
            raise TopologyError(f"open set {s!r} is not a list of indices")
        if any(b <= a for a, b in zip(s, s[1:])):
            raise TopologyError(f"open set {s} is not strictly increasing")
        if any(not 0 <= x < n for x in s):
            raise TopologyError(f"open set {s} has indices outside 0..{n - 1}")
        opens.append(mask(s))
    if len(set(opens)) != len(opens):
        raise TopologyError("duplicate open sets")
    return FiniteTopology(n, opens)


def load_topology(path: str | Path) -> FiniteTopology:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise TopologyError(f"cannot read {path}: {exc}") from exc
    return topology_from_dict(data)


# --------------------------------------------------------------------------
# Separation


@dataclass(frozen=True)
class Separation:
    T0: bool
    T1: bool
    hausdorff: bool
    regular: bool

    def to_dict(self) -> dict:
        return {"T0": self.T0, "T1": self.T1, "hausdorff": self.hausdorff, "regular": self.regular}


def check_separation(tau: FiniteTopology) -> Separation:
    """T0, T1, Hausdorff and regularity, straight from the definitions.

    Minimal neighbourhoods are the smallest opens around a point and open
    hulls the smallest opens around a set, so testing those is exhaustive.
    """
    n, m = tau.order, tau.min_nbhd
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    T0 = all(not (m[x] >> y & 1 and m[y] >> x & 1) for x, y in pairs)
    T1 = all(not m[x] >> y & 1 for x, y in pairs)
    hausdorff = all(m[x] & m[y] == 0 for x, y in pairs)
    regular = True
    for F in tau.closed_sets:
        hull = tau.open_hull(F)
        for x in range(n):
            if not F >> x & 1 and m[x] & hull:
                regular = False
                break
        if not regular:
            break
    return Separation(T0, T1, hausdorff, regular)


# --------------------------------------------------------------------------
# Enumeration


def preorder_nbhds(n: int) -> Iterator[tuple[int, ...]]:
    """Every reflexive transitive relation on n points, as min_nbhd vectors."""
    full = (1 << n) - 1
    chosen: list[int] = []

    def rec(x):
        if x == n:
            yield tuple(chosen)
            return
        bit = 1 << x
        others = full & ~bit
        sub = others
        while True:
            m = sub | bit
            ok = True
            for y, my in enumerate(chosen):
                if m >> y & 1 and my & ~m:
                    ok = False
                    break
                if my & bit and m & ~my:
                    ok = False
                    break
            if ok:
                chosen.append(m)
                yield from rec(x + 1)
                chosen.pop()
            if sub == 0:
                break
            sub = (sub - 1) & others

    yield from rec(0)


def enumerate_topologies(n: int) -> Iterator[FiniteTopology]:
    """All topologies on n points (via preorders)."""
    for nb in preorder_nbhds(n):
        yield FiniteTopology.from_min_nbhds(n, nb)
