"""Counterexample search over small (gyrogroup, topology) pairs.

Two targets:

``question-3.18``
    strongly paratopological, not gyrocommutative, inverse not continuous.
``question-3.3``
    Hausdorff paratopological with a discontinuous inverse (finite spaces are
    locally compact and second countable, so only these are left).

Both targets need a paratopological pair.  In such a pair every left
translation is a continuous bijection whose inverse L_{⊖x} is continuous too,
so m[x] = x ⊕ m[0].  The ``translates`` strategy therefore only ranges over
the 2^(n-1) choices of m[0] ∋ 0 and still misses nothing.  ``preorders``
walks every topology instead and is kept as a cross-check for small orders.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from . import oracles
from .continuity import algebra, classify
from .enumeration import DEFAULT_SEARCH_BOUND, Truncated, enumerate_gyrogroups
from .finite import FiniteGyrogroup
from .reports import COUNTEREXAMPLE, FAIL, PASS, SKIPPED
from .topology import FiniteTopology, is_preorder, preorder_nbhds

TARGETS = ("question-3.18", "question-3.3")
STRATEGIES = ("auto", "translates", "preorders")


def translate_topologies(G: FiniteGyrogroup) -> Iterator[FiniteTopology]:
    """Topologies with m[x] = x ⊕ U0, for each U0 ∋ 0 that gives a preorder."""
    S, n = algebra(G), G.order
    for rest in range(1 << (n - 1)):
        U0 = rest << 1 | 1
        nb = [S.left(x, U0) for x in range(n)]
        if is_preorder(nb):
            yield FiniteTopology.from_min_nbhds(n, nb)


def preorder_topologies(G: FiniteGyrogroup) -> Iterator[FiniteTopology]:
    for nb in preorder_nbhds(G.order):
        yield FiniteTopology.from_min_nbhds(G.order, nb)


def _matches(target, G, cls) -> bool:
    if not cls.paratopological or cls.inverse_continuous:
        return False
    if target == "question-3.18":
        return bool(cls.strongly_paratopological) and not G.is_gyrocommutative
    return cls.separation.hausdorff


def reverify(target: str, G: FiniteGyrogroup, tau: FiniteTopology) -> dict:
    """Independent re-checks of a candidate counterexample, from the definitions."""
    checks = {
        "paratopological": oracles.paratopological_by_opens(G, tau),
        "inverse_discontinuous": not oracles.inverse_continuous_by_preimages(G, tau),
    }
    if target == "question-3.18":
        checks["strongly_paratopological"] = oracles.strongly_by_base(G, tau)
        checks["not_gyrocommutative"] = not oracles.gyrocommutative_direct(G)
    else:
        checks["hausdorff"] = all(
            any(U >> x & 1 and V >> y & 1 and not U & V for U in tau.opens for V in tau.opens)
            for x in range(tau.order) for y in range(tau.order) if x != y)
    return checks


@dataclass
class SearchReport:
    target: str
    max_order: int
    strategy: str
    seed: int
    budget: int | None
    status: str = PASS
    truncated: bool = False
    statement: str = ""
    per_order: dict = field(default_factory=dict)
    counterexample: dict | None = None

    @property
    def check(self) -> str:
        return f"search:{self.target}"

    def to_dict(self) -> dict:
        return {
            "kind": "search", "check": self.check, "status": self.status,
            "target": self.target, "max_order": self.max_order, "strategy": self.strategy,
            "seed": self.seed, "budget": self.budget, "truncated": self.truncated,
            "statement": self.statement,
            "per_order": {str(k): v for k, v in sorted(self.per_order.items())},
            "counterexample": self.counterexample,
        }


def search_counterexample(target: str, max_order: int, budget: int | None = None,
                          seed: int = 0, strategy: str = "auto",
                          search_bound: int = DEFAULT_SEARCH_BOUND) -> SearchReport:
    """Exhaust pairs up to ``max_order`` or until ``budget`` topologies are examined.

    The walk order is fixed, so the result depends only on the arguments.
    ``seed`` does not alter the walk and is just echoed into the report.
    """
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; expected one of {TARGETS}")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if max_order < 1:
        raise ValueError("max_order must be positive")
    if budget is not None and budget < 1:
        raise ValueError("budget must be positive")
    if strategy == "auto":
        strategy = "translates"
    walk = translate_topologies if strategy == "translates" else preorder_topologies

    rep = SearchReport(target, max_order, strategy, seed, budget)
    examined = 0
    for G in enumerate_gyrogroups(max_order, search_bound=search_bound):
        if isinstance(G, Truncated):
            rep.truncated = True
            break
        row = rep.per_order.setdefault(G.order, {"gyrogroups": 0, "skipped_gyrocommutative": 0,
                                                 "topologies": 0, "candidates": 0})
        row["gyrogroups"] += 1
        if target == "question-3.18" and G.is_gyrocommutative:
            row["skipped_gyrocommutative"] += 1
            continue
        for tau in walk(G):
            if budget is not None and examined >= budget:
                rep.truncated = True
                break
            examined += 1
            row["topologies"] += 1
            cls = classify(G, tau)
            if cls.paratopological:
                row["candidates"] += 1
            if _matches(target, G, cls):
                checks = reverify(target, G, tau)
                rep.counterexample = {
                    "table": G.to_dict(), "topology": tau.to_dict(),
                    "classification": cls.to_dict(), "reverified": checks,
                }
                rep.status = COUNTEREXAMPLE if all(checks.values()) else FAIL
                rep.statement = ("counterexample found and re-verified" if rep.status == COUNTEREXAMPLE
                                 else "candidate failed independent re-verification")
                return rep
        if rep.truncated:
            break

    if rep.truncated:
        rep.status = SKIPPED
        rep.statement = f"no counterexample in the partial range; budget hit after {examined} topologies"
    else:
        rep.statement = f"no counterexample; range exhausted (orders 1..{max_order}, {examined} topologies)"
    return rep
