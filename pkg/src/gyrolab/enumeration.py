"""Enumeration of finite gyrogroups up to isomorphism.

The pruned search builds Cayley tables row by row, where row ``a`` is the
left translation ``L_a``.  Every gyrogroup is a loop with two-sided inverses
satisfying the left inverse property ``L_a^{-1} = L_{⊖a}`` and the left Bol
identity ``L_a L_b L_a = L_{a ⊕ (b ⊕ a)}``; both let a partial table force
further rows.  These are used only to prune: every emitted table is re-run
through :func:`validate_table`, and :func:`naive_gyrogroups` provides an
independent oracle over all left-cancellative tables for small orders.

Relabelling symmetry is broken by fixing the inversion map: elements
``1..k`` are involutions, the rest come in consecutive inverse pairs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .finite import AxiomFailure, FiniteGyrogroup, validate_table

DEFAULT_SEARCH_BOUND = 8
CANONICAL_FORM_MAX_ORDER = 6


@dataclass(frozen=True)
class Truncated:
    """Marker at the end of a stream whose node budget ran out."""

    order: int
    nodes: int
    found_at_order: int

    def to_dict(self) -> dict:
        return {"truncated": True, "order": self.order, "nodes": self.nodes,
                "found_at_order": self.found_at_order}


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.nodes = 0

    def tick(self) -> bool:
        self.nodes += 1
        return self.limit is not None and self.nodes > self.limit


class _Exhausted(Exception):
    pass


# --------------------------------------------------------------------------
# Isomorphism handling


def canonical_form(table) -> tuple:
    """Lexicographically least relabelling fixing 0 (exhaustive over (n-1)!)."""
    n = len(table)
    best = None
    for rest in itertools.permutations(range(1, n)):
        perm = (0,) + rest
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        # relabelled[i][j] = perm[T[inv i][inv j]]
        cand = tuple(perm[table[inv[i]][inv[j]]] for i in range(n) for j in range(n))
        if best is None or cand < best:
            best = cand
    return best


def _element_invariants(G: FiniteGyrogroup) -> list[tuple]:
    T = G.table
    n = G.order
    out = []
    for x in range(n):
        # left-iterated order of x, whether it is an involution, how many
        # elements it commutes with, and the order of its square
        k, y = 1, x
        while y != 0:
            y = T[y][x]
            k += 1
        sq = T[x][x]
        k2, y = 1, sq
        while y != 0 and k2 <= n:
            y = T[y][sq]
            k2 += 1
        commuting = sum(T[x][y] == T[y][x] for y in range(n))
        fixed = sum(T[x][T[y][x]] == T[T[x][y]][x] for y in range(n))
        out.append((k, G.inverse[x] == x, commuting, fixed, k2))
    return out


def invariant_vector(G: FiniteGyrogroup) -> tuple:
    return (G.order, G.is_associative, G.is_gyrocommutative, G.is_commutative,
            tuple(sorted(_element_invariants(G))))


def find_isomorphism(G: FiniteGyrogroup, H: FiniteGyrogroup) -> tuple[int, ...] | None:
    """A bijection phi with phi(a ⊕ b) = phi(a) ⊕ phi(b), or None."""
    n = G.order
    if H.order != n:
        return None
    ig, ih = _element_invariants(G), _element_invariants(H)
    if sorted(ig) != sorted(ih):
        return None
    T, S = G.table, H.table

    def extend(phi: dict[int, int]) -> dict[int, int] | None:
        # close phi under ⊕; conflicts mean no isomorphism extends it
        phi = dict(phi)
        changed = True
        while changed:
            changed = False
            for a, b in itertools.product(list(phi), list(phi)):
                c, d = T[a][b], S[phi[a]][phi[b]]
                if c in phi:
                    if phi[c] != d:
                        return None
                else:
                    if d in phi.values():
                        return None
                    phi[c] = d
                    changed = True
        return phi

    def search(phi):
        if len(phi) == n:
            return phi
        x = min(set(range(n)) - set(phi))
        used = set(phi.values())
        for y in range(n):
            if y in used or ih[y] != ig[x]:
                continue
            ext = extend({**phi, x: y})
            if ext is not None:
                res = search(ext)
                if res is not None:
                    return res
        return None

    start = extend({0: 0})
    found = search(start) if start is not None else None
    if found is None:
        return None
    phi = tuple(found[i] for i in range(n))
    assert all(S[phi[a]][phi[b]] == phi[T[a][b]] for a in range(n) for b in range(n))
    return phi


class IsomorphismClasses:
    """Deduplicates tables: canonical forms for small orders, else invariants
    as a prefilter followed by an explicit isomorphism search."""

    def __init__(self):
        self._canon: set = set()
        self._buckets: dict = {}

    def add(self, G: FiniteGyrogroup) -> bool:
        """Record G; return True if it is new up to isomorphism."""
        if G.order <= CANONICAL_FORM_MAX_ORDER:
            key = canonical_form(G.table)
            if key in self._canon:
                return False
            self._canon.add(key)
            return True
        key = invariant_vector(G)
        bucket = self._buckets.setdefault(key, [])
        if any(find_isomorphism(G, H) is not None for H in bucket):
            return False
        bucket.append(G)
        return True


# --------------------------------------------------------------------------
# Pruned search


def inversion_patterns(n: int) -> list[tuple[int, ...]]:
    """Inverse maps with k involutions 1..k and the remaining elements paired."""
    out = []
    for k in range(n - 1, -1, -1):
        if (n - 1 - k) % 2:
            continue
        inv = list(range(n))
        for x in range(k + 1, n, 2):
            inv[x], inv[x + 1] = x + 1, x
        out.append(tuple(inv))
    return out


class _State:
    __slots__ = ("n", "inv", "rows", "col_used")

    def __init__(self, n, inv):
        self.n = n
        self.inv = inv
        self.rows: list = [None] * n
        self.col_used = [0] * n

    def copy(self):
        s = _State.__new__(_State)
        s.n, s.inv = self.n, self.inv
        s.rows = list(self.rows)
        s.col_used = list(self.col_used)
        return s


def _place(state: _State, r: int, perm: tuple, queue: list) -> bool:
    """Put row r = perm; False on conflict."""
    cur = state.rows[r]
    if cur is not None:
        return cur == perm
    if perm[0] != r or perm[state.inv[r]] != 0:
        return False
    cu = state.col_used
    for j, v in enumerate(perm):
        if cu[j] >> v & 1:
            return False
    for j, v in enumerate(perm):
        cu[j] |= 1 << v
    state.rows[r] = perm
    queue.append(r)
    return True


def _propagate(state: _State, queue: list) -> bool:
    rows, inv, n = state.rows, state.inv, state.n
    done = [r for r in range(n) if rows[r] is not None and r not in queue]
    while queue:
        s = queue.pop()
        P = rows[s]
        # left inverse property
        Q = [0] * n
        for j, v in enumerate(P):
            Q[v] = j
        if not _place(state, inv[s], tuple(Q), queue):
            return False
        done.append(s)
        for x in list(done):
            X = rows[x]
            for A, B in ((X, P), (P, X)) if x != s else ((P, P),):
                c = A[B[A[0]]]
                forced = tuple(A[B[A[z]]] for z in range(n))
                if not _place(state, c, forced, queue):
                    return False
    return True


def _row_candidates(state: _State, a: int) -> Iterator[tuple]:
    n = state.n
    target = state.inv[a]
    cu = state.col_used
    perm = [None] * n
    perm[0] = a
    perm[target] = 0
    used = (1 << a) | 1
    free = [j for j in range(1, n) if j != target]

    def rec(i, used):
        if i == len(free):
            yield tuple(perm)
            return
        j = free[i]
        blocked = used | cu[j]
        for v in range(1, n):
            if not blocked >> v & 1:
                perm[j] = v
                yield from rec(i + 1, used | 1 << v)

    if target == 0:
        if a != 0:
            return
        yield tuple(range(n))
        return
    if cu[0] >> a & 1 or cu[target] & 1:
        return
    yield from rec(0, used)


def _search(state: _State, budget: _Budget) -> Iterator[list]:
    if budget.tick():
        raise _Exhausted
    try:
        a = state.rows.index(None)
    except ValueError:
        yield [list(r) for r in state.rows]
        return
    for perm in _row_candidates(state, a):
        child = state.copy()
        queue: list = []
        if _place(child, a, perm, queue) and _propagate(child, queue):
            yield from _search(child, budget)


def _pruned_tables(n: int, budget: _Budget) -> Iterator[list]:
    for inv in inversion_patterns(n):
        state = _State(n, inv)
        queue: list = []
        ok = _place(state, 0, tuple(range(n)), queue) and _propagate(state, queue)
        if ok:
            yield from _search(state, budget)


def naive_gyrogroups(n: int) -> list[FiniteGyrogroup]:
    """Independent oracle: validate every left-cancellative table with identity.

    Rows 1..n-1 range over all permutations with L_a(0) = a, so the cost is
    ((n-1)!)^(n-1); use for n <= 4 (5 is slow but feasible).
    """
    if n == 1:
        return [validate_table(1, [[0]])]
    choices = []
    for a in range(1, n):
        rest = [x for x in range(n) if x != a]
        choices.append([(a,) + p for p in itertools.permutations(rest)])
    classes = IsomorphismClasses()
    found = []
    for rows in itertools.product(*choices):
        table = [list(range(n))] + [list(r) for r in rows]
        # two-sided inverses are cheap to rule out before the full check
        if any(table[table[x].index(0)][x] != 0 for x in range(n)):
            continue
        G = validate_table(n, table)
        if isinstance(G, AxiomFailure):
            continue
        if classes.add(G):
            found.append(G)
    return found


def enumerate_gyrogroups(
    max_order: int,
    budget: int | None = None,
    min_order: int = 1,
    search_bound: int = DEFAULT_SEARCH_BOUND,
) -> Iterator[FiniteGyrogroup | Truncated]:
    """Yield one gyrogroup per isomorphism class, by increasing order.

    ``budget`` caps the number of search nodes over the whole run; when it
    runs out the stream ends with a :class:`Truncated` marker.  Orders above
    ``search_bound`` must be requested by raising the bound explicitly.
    """
    if max_order > search_bound:
        raise ValueError(f"max_order {max_order} exceeds the search bound {search_bound}")
    counter = _Budget(budget)
    for n in range(max(1, min_order), max_order + 1):
        classes = IsomorphismClasses()
        found = 0
        try:
            for table in _pruned_tables(n, counter):
                G = validate_table(n, table)
                if isinstance(G, AxiomFailure):
                    continue
                if classes.add(G):
                    found += 1
                    yield G
        except _Exhausted:
            yield Truncated(order=n, nodes=counter.nodes, found_at_order=found)
            return


def count_by_order(max_order: int, budget: int | None = None) -> dict[int, int]:
    counts: dict[int, int] = {n: 0 for n in range(1, max_order + 1)}
    for G in enumerate_gyrogroups(max_order, budget):
        if isinstance(G, Truncated):
            raise RuntimeError(f"enumeration truncated at order {G.order}")
        counts[G.order] += 1
    return counts

