"""Finite gyrogroups given by Cayley tables.

Elements are indices ``0..n-1`` with 0 the identity.  ``validate_table`` is
the only way to obtain a :class:`FiniteGyrogroup`; it re-derives every axiom
and hands back an :class:`AxiomFailure` instead of raising when the table is
well formed but not a gyrogroup.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .core import GyroOps, exhaustive_tuples


class TableFormatError(ValueError):
    """The table is malformed (ragged, out of range, duplicate labels...)."""


class SubgyrogroupError(ValueError):
    """A subset does not satisfy the precondition an operation needs."""


@dataclass(frozen=True)
class AxiomFailure:
    axiom: str
    witness: tuple[int, ...]
    message: str

    def __bool__(self):
        return False

    def to_dict(self) -> dict:
        return {"axiom": self.axiom, "witness": list(self.witness), "message": self.message}


class FiniteGyrogroup(GyroOps):
    finite = True

    def __init__(self, table: Sequence[Sequence[int]], elements: Sequence[str] | None = None):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.elements = tuple(elements) if elements is not None else tuple(str(i) for i in range(self.order))
        self._arr = np.array(self.table, dtype=np.int64).reshape(self.order, self.order)
        self.inverse = tuple(row.index(0) for row in self.table)
        self._neg = np.array(self.inverse, dtype=np.int64)

    def __repr__(self):
        return f"FiniteGyrogroup(order={self.order}, table={self.table})"

    def __eq__(self, other):
        return isinstance(other, FiniteGyrogroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    # GyroOps -----------------------------------------------------------

    @property
    def identity(self):
        return 0

    def add(self, a, b):
        return self._arr[a, b]

    def neg(self, a):
        return self._neg[a]

    def distance(self, a, b):
        return (np.asarray(a) != np.asarray(b)).astype(float)

    def gyr(self, a, b, c):
        return self.gyr_table[a, b, c]

    def all_tuples(self, arity):
        return exhaustive_tuples(self.order, arity)

    def sample(self, rng, size):
        return rng.integers(0, self.order, size)

    def to_json(self, element):
        return int(element)

    # Derived structure -------------------------------------------------

    @cached_property
    def gyr_table(self) -> np.ndarray:
        """gyr[a, b](c) for all a, b, c, from the gyrator identity."""
        T, N = self._arr, self._neg
        a, b, c = np.indices((self.order,) * 3)
        return T[N[T[a, b]], T[a, T[b, c]]]

    def gyration(self, a: int, b: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.gyr_table[a, b])

    @cached_property
    def is_associative(self) -> bool:
        ident = np.arange(self.order)
        return bool((self.gyr_table == ident).all())

    @cached_property
    def is_gyrocommutative(self) -> bool:
        T = self._arr
        a, b = np.indices((self.order, self.order))
        return bool((T[a, b] == self.gyr_table[a, b, T[b, a]]).all())

    @cached_property
    def is_commutative(self) -> bool:
        return bool((self._arr == self._arr.T).all())

    # Set-level helpers (subsets are frozensets of indices) ----------------

    def set_add(self, A: Iterable[int], B: Iterable[int]) -> frozenset[int]:
        B = tuple(B)
        return frozenset(self.table[a][b] for a in A for b in B)

    def set_neg(self, A: Iterable[int]) -> frozenset[int]:
        return frozenset(self.inverse[a] for a in A)

    def set_gyr(self, a: int, b: int, A: Iterable[int]) -> frozenset[int]:
        g = self.gyr_table[a, b]
        return frozenset(int(g[x]) for x in A)

    def coadd_int(self, a: int, b: int) -> int:
        return int(self.coadd(a, b))

    # Serialisation ------------------------------------------------------

    def to_dict(self) -> dict:
        return {"order": self.order, "elements": list(self.elements), "add": [list(r) for r in self.table]}

    def relabel(self, perm: Sequence[int]) -> list[list[int]]:
        """Table after renaming element i to perm[i]."""
        n = self.order
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                out[perm[i]][perm[j]] = perm[self.table[i][j]]
        return out


# --------------------------------------------------------------------------
# Validation


def check_table_format(order: int, add, elements=None) -> list[list[int]]:
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise TableFormatError(f"order must be a positive integer, got {order!r}")
    if not isinstance(add, (list, tuple)) or len(add) != order:
        raise TableFormatError(f"add must have {order} rows")
    rows = []
    for i, row in enumerate(add):
        if not isinstance(row, (list, tuple)) or len(row) != order:
            raise TableFormatError(f"row {i} is ragged: expected {order} entries")
        for j, x in enumerate(row):
            if not isinstance(x, (int, np.integer)) or isinstance(x, bool) or not 0 <= x < order:
                raise TableFormatError(f"entry ({i}, {j}) = {x!r} is not an index below {order}")
        rows.append([int(x) for x in row])
    if elements is not None:
        if len(elements) != order:
            raise TableFormatError(f"expected {order} labels, got {len(elements)}")
        if len(set(elements)) != order:
            raise TableFormatError("duplicate element labels")
        if not all(isinstance(e, str) for e in elements):
            raise TableFormatError("element labels must be strings")
    return rows


def validate_table(order: int, add, elements: Sequence[str] | None = None) -> FiniteGyrogroup | AxiomFailure:
    """Check G1-G4 for the Cayley table ``add`` (identity at index 0).

    Order of checks: two-sided identity, two-sided inverses, left cancellation,
    then the gyration derived from the gyrator identity must satisfy the left
    gyroassociative law, be an automorphism (G3), and obey the left loop
    property (G4).  The first failure is returned with a witness.
    """
    T = check_table_format(order, add, elements)
    n = order
    rng = range(n)

    for x in rng:
        if T[0][x] != x or T[x][0] != x:
            return AxiomFailure("G1", (x,), f"0 is not a two-sided identity at {x}")

    inverse = []
    for x in rng:
        left = [y for y in rng if T[y][x] == 0]
        both = [y for y in left if T[x][y] == 0]
        if not both:
            return AxiomFailure("G2", (x,), f"{x} has no two-sided inverse")
        inverse.append(both[0])

    for x in rng:
        seen = {}
        for y in rng:
            z = T[x][y]
            if z in seen:
                return AxiomFailure("left-cancellation", (x, seen[z], y),
                                    f"{x}⊕{seen[z]} = {x}⊕{y} = {z}")
            seen[z] = y

    G = FiniteGyrogroup(T, elements)
    g = G.gyr_table
    for a, b in itertools.product(rng, rng):
        ga = g[a, b]
        if len(set(ga.tolist())) != n:
            return AxiomFailure("G3", (a, b), f"gyr[{a},{b}] is not a bijection")
        for c in rng:
            if T[a][T[b][c]] != T[T[a][b]][ga[c]]:
                return AxiomFailure("G3", (a, b, c), "left gyroassociative law fails")
        for x, y in itertools.product(rng, rng):
            if ga[T[x][y]] != T[ga[x]][ga[y]]:
                return AxiomFailure("G3", (a, b, x, y), f"gyr[{a},{b}] is not an automorphism")
    for a, b in itertools.product(rng, rng):
        if not (g[T[a][b], b] == g[a, b]).all():
            c = int(np.argmax(g[T[a][b], b] != g[a, b]))
            return AxiomFailure("G4", (a, b, c), "left loop property fails")
    return G


def gyrogroup(add, elements=None) -> FiniteGyrogroup:
    """Validate and return, raising ``ValueError`` on any axiom failure."""
    res = validate_table(len(add), add, elements)
    if isinstance(res, AxiomFailure):
        raise ValueError(f"not a gyrogroup: {res.axiom} at {res.witness}: {res.message}")
    return res


def load_table(path: str | Path) -> FiniteGyrogroup | AxiomFailure:
    """Read the JSON table format; malformed files raise TableFormatError."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise TableFormatError(f"cannot read {path}: {exc}") from exc
    return table_from_dict(data)


def table_from_dict(data) -> FiniteGyrogroup | AxiomFailure:
    if not isinstance(data, dict) or "order" not in data or "add" not in data:
        raise TableFormatError("table file needs 'order' and 'add'")
    return validate_table(data["order"], data["add"], data.get("elements"))


def cyclic_group(n: int) -> FiniteGyrogroup:
    return gyrogroup([[(i + j) % n for j in range(n)] for i in range(n)])


def direct_product(G: FiniteGyrogroup, H: FiniteGyrogroup) -> FiniteGyrogroup:
    m = H.order
    n = G.order * m
    table = [[0] * n for _ in range(n)]
    for a, b in itertools.product(range(n), range(n)):
        table[a][b] = G.table[a // m][b // m] * m + H.table[a % m][b % m]
    return gyrogroup(table)


# --------------------------------------------------------------------------
# Subgyrogroups


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: tuple | None = None
    message: str = ""

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        return {"holds": self.holds, "witness": None if self.witness is None else list(self.witness),
                "message": self.message}


@dataclass(frozen=True)
class SubgyroCertificate:
    subset: tuple[int, ...]
    is_subgyrogroup: bool
    is_L_subgyrogroup: bool
    is_invariant: bool
    violations: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": "subgyrogroup",
            "subset": list(self.subset),
            "is_subgyrogroup": self.is_subgyrogroup,
            "is_L_subgyrogroup": self.is_L_subgyrogroup,
            "is_invariant": self.is_invariant,
            "violations": {k: list(v) for k, v in self.violations.items()},
        }


def _subset(G: FiniteGyrogroup, H) -> frozenset[int]:
    H = frozenset(int(h) for h in H)
    if not H:
        raise SubgyrogroupError("subset must be non-empty")
    if not all(0 <= h < G.order for h in H):
        raise SubgyrogroupError(f"subset has indices outside 0..{G.order - 1}")
    return H


def subgyrogroup_verdict(G: FiniteGyrogroup, H) -> Verdict:
    """Closure of H under ⊖ and ⊕ (equivalent to being a subgyrogroup)."""
    H = _subset(G, H)
    # sums first: for finite carriers ⊕-closure already forces ⊖-closure
    for a, b in itertools.product(sorted(H), sorted(H)):
        if G.table[a][b] not in H:
            return Verdict(False, (a, b), f"{a}⊕{b} = {G.table[a][b]} is not in H")
    for a in sorted(H):
        if G.inverse[a] not in H:
            return Verdict(False, (a,), f"⊖{a} = {G.inverse[a]} is not in H")
    return Verdict(True)


def is_subgyrogroup(G: FiniteGyrogroup, H) -> SubgyroCertificate:
    """Certificate for H, with all three flags evaluated."""
    return certify(G, H)


def is_L_subgyrogroup(G: FiniteGyrogroup, H) -> Verdict:
    """gyr[a, h](H) = H for every a in G and h in H."""
    H = _subset(G, H)
    if not subgyrogroup_verdict(G, H):
        raise SubgyrogroupError(f"{sorted(H)} is not a subgyrogroup")
    for a in range(G.order):
        for h in sorted(H):
            if G.set_gyr(a, h, H) != H:
                return Verdict(False, (a, h), f"gyr[{a},{h}](H) ≠ H")
    return Verdict(True)


def is_invariant_subgyrogroup(G: FiniteGyrogroup, N) -> Verdict:
    """a ⊕ (N ⊕ b) = (a ⊕ b) ⊕ N = (a ⊕ N) ⊕ b for all a, b."""
    N = _subset(G, N)
    if not subgyrogroup_verdict(G, N):
        raise SubgyrogroupError(f"{sorted(N)} is not a subgyrogroup")
    rng = range(G.order)
    for a, b in itertools.product(rng, rng):
        left = G.set_add([a], G.set_add(N, [b]))
        mid = G.set_add([G.table[a][b]], N)
        right = G.set_add(G.set_add([a], N), [b])
        if not left == mid == right:
            return Verdict(False, (a, b), "a⊕(N⊕b), (a⊕b)⊕N, (a⊕N)⊕b differ")
    return Verdict(True)


def certify(G: FiniteGyrogroup, H) -> SubgyroCertificate:
    Hs = _subset(G, H)
    sub = subgyrogroup_verdict(G, Hs)
    violations = {}
    if not sub:
        violations = {"subgyrogroup": sub.witness, "L": sub.witness, "invariant": sub.witness}
        return SubgyroCertificate(tuple(sorted(Hs)), False, False, False, violations)
    L = is_L_subgyrogroup(G, Hs)
    inv = is_invariant_subgyrogroup(G, Hs)
    if not L:
        violations["L"] = L.witness
    if not inv:
        violations["invariant"] = inv.witness
    return SubgyroCertificate(tuple(sorted(Hs)), True, L.holds, inv.holds, violations)


def subgyrogroups(G: FiniteGyrogroup) -> list[frozenset[int]]:
    """Every subgyrogroup of G, smallest first."""
    out = []
    others = range(1, G.order)
    for r in range(G.order):
        for combo in itertools.combinations(others, r):
            H = frozenset((0,) + combo)
            if subgyrogroup_verdict(G, H):
                out.append(H)
    return out


def coset_partition(G: FiniteGyrogroup, H) -> list[frozenset[int]]:
    """Left cosets a ⊕ H, sorted by least element (so H comes first)."""
    H = _subset(G, H)
    if not is_L_subgyrogroup(G, H):
        raise SubgyrogroupError(f"{sorted(H)} is not an L-subgyrogroup; cosets need not partition G")
    cosets = {G.set_add([a], H) for a in range(G.order)}
    out = sorted(cosets, key=min)
    covered = [x for C in out for x in C]
    assert sorted(covered) == list(range(G.order)), "cosets of an L-subgyrogroup must partition G"
    return out


@dataclass(frozen=True)
class Quotient:
    gyrogroup: FiniteGyrogroup
    cosets: tuple[frozenset[int], ...]
    projection: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "kind": "quotient",
            "cosets": [sorted(C) for C in self.cosets],
            "projection": list(self.projection),
            "table": self.gyrogroup.to_dict(),
        }


class QuotientError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def quotient_gyrogroup(G: FiniteGyrogroup, N) -> Quotient:
    """G/N with (a ⊕ N) ⊕ (b ⊕ N) := (a ⊕ b) ⊕ N.

    Well-definedness, the axioms of the result and the homomorphism property
    of the projection are all checked; failures raise QuotientError.
    """
    N = _subset(G, N)
    if not is_invariant_subgyrogroup(G, N):
        raise SubgyrogroupError(f"{sorted(N)} is not an invariant subgyrogroup")
    cosets = coset_partition(G, N)
    proj = [0] * G.order
    for i, C in enumerate(cosets):
        for x in C:
            proj[x] = i
    k = len(cosets)
    table = [[-1] * k for _ in range(k)]
    for a, b in itertools.product(range(G.order), range(G.order)):
        i, j, r = proj[a], proj[b], proj[G.table[a][b]]
        if table[i][j] == -1:
            table[i][j] = r
        elif table[i][j] != r:
            raise QuotientError("coset addition depends on representatives", (a, b))
    labels = ["{" + ",".join(G.elements[x] for x in sorted(C)) + "}" for C in cosets]
    Q = validate_table(k, table, labels)
    if isinstance(Q, AxiomFailure):
        raise QuotientError(f"quotient fails {Q.axiom}", Q.witness)
    for a, b in itertools.product(range(G.order), range(G.order)):
        if proj[G.table[a][b]] != Q.table[proj[a]][proj[b]]:
            raise QuotientError("projection is not a homomorphism", (a, b))
    return Quotient(Q, tuple(cosets), tuple(proj))


def restrict(G: FiniteGyrogroup, H) -> tuple[FiniteGyrogroup, tuple[int, ...]]:
    """H as a gyrogroup in its own right, plus the index map H -> G."""
    H = _subset(G, H)
    if not subgyrogroup_verdict(G, H):
        raise SubgyrogroupError(f"{sorted(H)} is not a subgyrogroup")
    members = tuple(sorted(H))
    pos = {x: i for i, x in enumerate(members)}
    table = [[pos[G.table[a][b]] for b in members] for a in members]
    sub = validate_table(len(members), table, [G.elements[x] for x in members])
    if isinstance(sub, AxiomFailure):
        raise SubgyrogroupError(f"restriction fails {sub.axiom}")
    return sub, members
