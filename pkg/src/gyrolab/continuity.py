"""Continuity model checking for finite gyrogroups with a finite topology.

In a finite space every point x has a smallest open neighbourhood m[x].
Joint continuity of ⊕ at (a, b) then reads m[a] ⊕ m[b] ⊆ m[a ⊕ b], and
continuity of ⊖ at x reads ⊖m[x] ⊆ m[⊖x].

Strongly paratopological: every open neighbourhood base at 0 contains m[0]
(it lies inside m[0] and is open, hence equals it), so a base of
gyration-invariant opens exists iff m[0] itself is gyration-invariant.
This reduction is ours, not a published claim; :mod:`gyrolab.oracles`
re-checks it against the definition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .finite import FiniteGyrogroup, Verdict, coset_partition
from .topology import FiniteTopology, Separation, check_separation, mask, members


class PreconditionError(ValueError):
    pass


class SetAlgebra:
    """⊕, ⊖ and gyrations lifted to bitmask subsets of one gyrogroup."""

    def __init__(self, G: FiniteGyrogroup):
        self.G = G
        self.n = G.order
        self.T = [list(r) for r in G.table]
        self.N = list(G.inverse)
        self.g = G.gyr_table.tolist()
        self.full = (1 << self.n) - 1
        T, N, g = self.T, self.N, self.g
        self.co = [[T[a][g[a][N[b]][b]] for b in range(self.n)] for a in range(self.n)]
        # left translates looked up one byte of the argument at a time
        self.chunks = (self.n + 7) // 8
        self._lt = [[self._byte_table(T[a], k) for k in range(self.chunks)] for a in range(self.n)]
        self._nt = [self._byte_table(N, k) for k in range(self.chunks)]

    def _byte_table(self, perm, k: int) -> list[int]:
        out = [0] * 256
        for byte in range(1, 256):
            low = byte & -byte
            i = 8 * k + low.bit_length() - 1
            out[byte] = out[byte ^ low] | (1 << perm[i] if i < self.n else 0)
        return out

    def _apply(self, tables, A: int) -> int:
        out = 0
        for t in tables:
            out |= t[A & 255]
            A >>= 8
        return out

    def add(self, A: int, B: int) -> int:
        out = 0
        lt = self._lt
        for a in _bits(A):
            out |= self._apply(lt[a], B)
        return out

    def left(self, a: int, A: int) -> int:
        return self._apply(self._lt[a], A)

    def right(self, A: int, b: int) -> int:
        return self.add(A, 1 << b)

    def neg(self, A: int) -> int:
        return self._apply(self._nt, A)

    def gyr(self, a: int, b: int, A: int) -> int:
        row = self.g[a][b]
        out = 0
        for x in members(A):
            out |= 1 << row[x]
        return out

    def coadd(self, A: int, B: int) -> int:
        out = 0
        bs = members(B)
        for a in members(A):
            for b in bs:
                out |= 1 << self.co[a][b]
        return out

    def gyr_invariant(self, A: int) -> tuple[int, int] | None:
        """First (a, b) with gyr[a, b](A) ≠ A, or None."""
        for a in range(self.n):
            for b in range(self.n):
                if self.gyr(a, b, A) != A:
                    return (a, b)
        return None


@lru_cache(maxsize=1 << 16)
def _bits(A: int) -> tuple[int, ...]:
    return tuple(members(A))


@lru_cache(maxsize=256)
def algebra(G: FiniteGyrogroup) -> SetAlgebra:
    return SetAlgebra(G)


def _check_sizes(G: FiniteGyrogroup, tau: FiniteTopology):
    if G.order != tau.order:
        raise PreconditionError(f"gyrogroup has order {G.order}, topology order {tau.order}")


def closure(tau: FiniteTopology, A) -> int:
    """Smallest closed superset; accepts a bitmask or an iterable of points."""
    if not isinstance(A, int):
        A = mask(A)
    return tau.closure(A)


def check_paratopological(G: FiniteGyrogroup, tau: FiniteTopology) -> Verdict:
    _check_sizes(G, tau)
    S, m = algebra(G), tau.min_nbhd
    for a in range(G.order):
        for b in range(G.order):
            if S.add(m[a], m[b]) & ~m[S.T[a][b]]:
                return Verdict(False, (a, b), f"m[{a}]⊕m[{b}] ⊄ m[{a}⊕{b}]")
    return Verdict(True)


def check_inverse_continuous(G: FiniteGyrogroup, tau: FiniteTopology) -> Verdict:
    _check_sizes(G, tau)
    S, m = algebra(G), tau.min_nbhd
    for x in range(G.order):
        if S.neg(m[x]) & ~m[S.N[x]]:
            return Verdict(False, (x,), f"⊖m[{x}] ⊄ m[⊖{x}]")
    return Verdict(True)


def inverse_continuous_at_identity(G: FiniteGyrogroup, tau: FiniteTopology) -> Verdict:
    _check_sizes(G, tau)
    S, m = algebra(G), tau.min_nbhd
    if S.neg(m[0]) & ~m[0]:
        return Verdict(False, (0,), "⊖m[0] ⊄ m[0]")
    return Verdict(True)


def check_strongly(G: FiniteGyrogroup, tau: FiniteTopology) -> Verdict:
    """Gyration invariance of m[0]; requires a paratopological pair."""
    if not check_paratopological(G, tau):
        raise PreconditionError("not a paratopological gyrogroup")
    w = algebra(G).gyr_invariant(tau.min_nbhd[0])
    if w is not None:
        return Verdict(False, w, f"gyr[{w[0]},{w[1]}](m[0]) ≠ m[0]")
    return Verdict(True)


@dataclass(frozen=True)
class TopoClassification:
    paratopological: Verdict
    strongly_paratopological: Verdict
    inverse_continuous: Verdict
    separation: Separation

    @property
    def topological(self) -> bool:
        return self.paratopological.holds and self.inverse_continuous.holds

    @property
    def strongly_topological(self) -> bool:
        return self.topological and self.strongly_paratopological.holds

    def to_dict(self) -> dict:
        return {
            "paratopological": self.paratopological.to_dict(),
            "strongly_paratopological": self.strongly_paratopological.to_dict(),
            "inverse_continuous": self.inverse_continuous.to_dict(),
            "topological": self.topological,
            "strongly_topological": self.strongly_topological,
            "separation": self.separation.to_dict(),
        }


def classify(G: FiniteGyrogroup, tau: FiniteTopology) -> TopoClassification:
    para = check_paratopological(G, tau)
    if para:
        strong = check_strongly(G, tau)
    else:
        strong = Verdict(False, para.witness, "not paratopological")
    return TopoClassification(para, strong, check_inverse_continuous(G, tau), check_separation(tau))


# --------------------------------------------------------------------------
# The set B


@dataclass(frozen=True)
class BSet:
    subset: tuple[int, ...]
    gyr_invariant: Verdict
    invariant_subgyro: bool | None
    closed: bool

    def to_dict(self) -> dict:
        return {"B": list(self.subset), "gyr_invariant": self.gyr_invariant.to_dict(),
                "invariant_subgyro": self.invariant_subgyro, "closed": self.closed}


def b_mask(tau: FiniteTopology) -> int:
    B = tau.full
    for U in tau.neighbourhoods_of(0):
        B &= tau.closure(U)
    return B


def compute_B(G: FiniteGyrogroup, tau: FiniteTopology) -> BSet:
    """B = ⋂ cl(U) over open U ∋ 0, with its invariance properties."""
    from .finite import is_invariant_subgyrogroup, subgyrogroup_verdict

    _check_sizes(G, tau)
    B = b_mask(tau)
    w = algebra(G).gyr_invariant(B)
    gyr_inv = Verdict(True) if w is None else Verdict(False, w, f"gyr[{w[0]},{w[1]}](B) ≠ B")
    inv_sub = None
    if G.is_gyrocommutative and check_paratopological(G, tau):
        pts = members(B)
        inv_sub = bool(subgyrogroup_verdict(G, pts)) and bool(is_invariant_subgyrogroup(G, pts))
    return BSet(tuple(members(B)), gyr_inv, inv_sub, tau.is_closed(B))


# --------------------------------------------------------------------------
# Quotients


@dataclass(frozen=True)
class QuotientTopology:
    topology: FiniteTopology
    cosets: tuple[frozenset[int], ...]
    projection: tuple[int, ...]
    continuous: Verdict
    open_map: Verdict

    def to_dict(self) -> dict:
        return {"cosets": [sorted(C) for C in self.cosets], "opens": self.topology.open_lists(),
                "continuous": self.continuous.to_dict(), "open_map": self.open_map.to_dict()}


def quotient_topology(G: FiniteGyrogroup, tau: FiniteTopology, H) -> QuotientTopology:
    """{O ⊆ G/H : π⁻¹(O) open}; also reports whether π is continuous and open."""
    _check_sizes(G, tau)
    cosets = coset_partition(G, H)  # refuses non-L subgyrogroups
    k = len(cosets)
    proj = [0] * G.order
    for i, C in enumerate(cosets):
        for x in C:
            proj[x] = i
    cmask = [mask(C) for C in cosets]

    def preimage(O: int) -> int:
        out = 0
        for i in members(O):
            out |= cmask[i]
        return out

    def image(U: int) -> int:
        return mask(proj[x] for x in members(U))

    opens = [O for O in range(1 << k) if tau.is_open(preimage(O))]
    Q = FiniteTopology(k, opens)
    cont = Verdict(True)
    for O in Q.opens:
        if not tau.is_open(preimage(O)):
            cont = Verdict(False, tuple(members(O)), "preimage of an open set is not open")
            break
    open_map = Verdict(True)
    for U in sorted(tau.opens):
        if image(U) not in Q.opens:
            open_map = Verdict(False, tuple(members(U)), "image of an open set is not open")
            break
    return QuotientTopology(Q, tuple(cosets), tuple(proj), cont, open_map)


# --------------------------------------------------------------------------
# Topological periodicity


def multiples(G: FiniteGyrogroup, x: int) -> list[int]:
    """The distinct values of n·x for n = 1, 2, ... (one full period)."""
    T = G.table
    seen = []
    y = x
    while y not in seen:
        seen.append(y)
        y = T[y][x]
    return seen


def check_topologically_periodic(G: FiniteGyrogroup, tau: FiniteTopology) -> Verdict:
    """Every x has some n·x in every open U ∋ 0."""
    _check_sizes(G, tau)
    nbhds = tau.neighbourhoods_of(0)
    for x in range(G.order):
        orbit = mask(multiples(G, x))
        for U in nbhds:
            if not orbit & U:
                return Verdict(False, (x, tuple(members(U))), f"no multiple of {x} lies in U")
    return Verdict(True)
