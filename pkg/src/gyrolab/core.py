"""Abstract gyrogroup operations and the executable law suite.

Backends work on *batches*: an element argument may be a single element or an
array of them, and ``eq`` returns an elementwise boolean array.  The finite
backend uses integer index arrays, the Einstein backend float arrays of shape
``(..., 3)``.  This lets one law definition serve both exhaustive table checks
and vectorised numeric sampling.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


class GyroOps(ABC):
    """Primitive operations of a gyrogroup plus everything derived from them."""

    #: True for backends whose carrier can be listed exhaustively.
    finite = False

    @property
    @abstractmethod
    def identity(self) -> Any: ...

    @abstractmethod
    def add(self, a, b): ...

    @abstractmethod
    def neg(self, a): ...

    @abstractmethod
    def distance(self, a, b) -> np.ndarray:
        """Elementwise deviation between two (batches of) elements."""

    @property
    def tolerance(self) -> float:
        return 0.0

    def eq(self, a, b):
        return self.distance(a, b) <= self.tolerance

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def gyr(self, a, b, c):
        """gyr[a, b](c) through the gyrator identity."""
        return self.add(self.neg(self.add(a, b)), self.add(a, self.add(b, c)))

    def coadd(self, a, b):
        """Coaddition a ⊞ b = a ⊕ gyr[a, ⊖b](b)."""
        return self.add(a, self.gyr(a, self.neg(b), b))

    def cosub(self, a, b):
        return self.coadd(a, self.neg(b))

    def iterated_add(self, x, n: int):
        """Left-associated n-fold sum ((x ⊕ x) ⊕ x) ⊕ ... ⊕ x."""
        if n < 1:
            raise ValueError(f"n must be a positive integer, got {n}")
        acc = x
        for _ in range(n - 1):
            acc = self.add(acc, x)
        return acc

    # Hooks for the law suite.

    def all_tuples(self, arity: int) -> list:
        raise TypeError(f"{type(self).__name__} cannot be enumerated exhaustively")

    @abstractmethod
    def sample(self, rng: np.random.Generator, size: int): ...

    def take(self, batch, i: int):
        """Element ``i`` of a batch."""
        return batch[i]

    def to_json(self, element) -> Any:
        return np.asarray(element).tolist()


# --------------------------------------------------------------------------
# Laws.  Each law maps a backend and a tuple of element batches to a list of
# (lhs, rhs) pairs that must agree.


@dataclass(frozen=True)
class Law:
    law_id: str
    arity: int
    pairs: Callable[..., list]
    gyrocommutative_only: bool = False
    description: str = ""


def _g1(G, a):
    return [(G.add(G.identity, a), a), (G.add(a, G.identity), a)]


def _g2(G, a):
    na = G.neg(a)
    return [(G.add(na, a), G.identity), (G.add(a, na), G.identity)]


def _g3(G, a, b, c, d):
    # left gyroassociative law, plus gyr[a, b] preserving ⊕
    return [
        (G.add(a, G.add(b, c)), G.add(G.add(a, b), G.gyr(a, b, c))),
        (G.gyr(a, b, G.add(c, d)), G.add(G.gyr(a, b, c), G.gyr(a, b, d))),
    ]


def _g4(G, a, b, c):
    return [(G.gyr(G.add(a, b), b, c), G.gyr(a, b, c))]


def _t1(G, a, b, c):
    return [(G.add(G.add(a, b), c), G.add(a, G.add(b, G.gyr(b, a, c))))]


def _t2(G, a, b, c):
    return [(G.gyr(a, b, c), G.gyr(a, G.add(b, a), c))]


def _t3(G, a, b):
    return [(G.add(G.neg(a), G.add(a, b)), b)]


def _t4(G, a, b):
    return [(G.coadd(G.sub(a, b), b), a)]


def _t5(G, a, b):
    return [(G.add(G.cosub(a, b), b), a)]


def _t6(G, a, b, c):
    return [(G.gyr(a, b, c), G.add(G.neg(G.add(a, b)), G.add(a, G.add(b, c))))]


def _t7(G, a, b):
    return [(G.neg(G.add(a, b)), G.gyr(a, b, G.sub(G.neg(b), a)))]


def _t8(G, a, b, c):
    return [(G.gyr(a, b, G.neg(c)), G.neg(G.gyr(a, b, c)))]


def _t9(G, a, b, c):
    return [(G.gyr(b, a, G.gyr(a, b, c)), c)]


def _t10(G, a, b):
    return [(G.neg(G.coadd(a, b)), G.coadd(G.neg(b), G.neg(a)))]


def _t11(G, a, b, c):
    return [(G.gyr(G.neg(a), G.neg(b), c), G.gyr(a, b, c))]


def _t12(G, a, b, c):
    zero = G.identity
    return [(G.gyr(a, zero, c), c), (G.gyr(zero, b, c), c)]


def _gyrocommutative(G, a, b):
    return [(G.add(a, b), G.gyr(a, b, G.add(b, a)))]


def _gc1(G, a, b):
    return [(G.neg(G.add(a, b)), G.sub(G.neg(a), b))]


def _gc2(G, a, b):
    return [(G.coadd(a, b), G.coadd(b, a))]


def _gc3(G, a, b):
    return [(G.coadd(a, b), G.add(a, G.add(G.add(G.neg(a), b), a)))]


LAWS: tuple[Law, ...] = (
    Law("G1", 1, _g1, description="two-sided identity"),
    Law("G2", 1, _g2, description="two-sided inverse"),
    Law("G3", 4, _g3, description="left gyroassociativity; gyr[a,b] is an automorphism"),
    Law("G4", 3, _g4, description="left loop property"),
    Law("T1.3-1", 3, _t1, description="right gyroassociative law"),
    Law("T1.3-2", 3, _t2, description="right loop property"),
    Law("T1.3-3", 2, _t3, description="left cancellation"),
    Law("T1.3-4", 2, _t4, description="(a ⊖ b) ⊞ b = a"),
    Law("T1.3-5", 2, _t5, description="(a ⊟ b) ⊕ b = a"),
    Law("T1.3-6", 3, _t6, description="gyrator identity"),
    Law("T1.3-7", 2, _t7, description="gyrosum inversion"),
    Law("T1.3-8", 3, _t8, description="gyrations commute with ⊖"),
    Law("T1.3-9", 3, _t9, description="inversive symmetry"),
    Law("T1.3-10", 2, _t10, description="cogyroautomorphic inverse"),
    Law("T1.3-11", 3, _t11, description="even symmetry"),
    Law("T1.3-12", 3, _t12, description="gyr[a,0] = gyr[0,b] = I"),
    Law("gyrocommutative", 2, _gyrocommutative, description="a ⊕ b = gyr[a,b](b ⊕ a)"),
    Law("GC-1", 2, _gc1, gyrocommutative_only=True, description="gyroautomorphic inverse property"),
    Law("GC-2", 2, _gc2, gyrocommutative_only=True, description="⊞ is commutative"),
    Law("GC-3", 2, _gc3, gyrocommutative_only=True, description="a ⊞ b = a ⊕ ((⊖a ⊕ b) ⊕ a)"),
)

LAW_IDS = tuple(law.law_id for law in LAWS)


def law_by_id(law_id: str) -> Law:
    for law in LAWS:
        if law.law_id == law_id:
            return law
    raise KeyError(law_id)


@dataclass
class LawReport:
    law_id: str
    status: str
    samples_checked: int
    witness: tuple | None = None
    seed: int | None = None
    mode: str = "exhaustive"
    max_deviation: float = 0.0
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "kind": "law",
            "law_id": self.law_id,
            "status": self.status,
            "witness": None if self.witness is None else list(self.witness),
            "samples_checked": self.samples_checked,
            "seed": self.seed,
            "mode": self.mode,
            "max_deviation": self.max_deviation,
            "note": self.note,
        }


def evaluate_law(G: GyroOps, law: Law, args) -> tuple[np.ndarray, np.ndarray]:
    """Return (holds, deviation) arrays for a batch of argument tuples."""
    holds = None
    dev = None
    for lhs, rhs in law.pairs(G, *args):
        d = np.asarray(G.distance(lhs, rhs), dtype=float)
        ok = np.asarray(G.eq(lhs, rhs))
        holds = ok if holds is None else holds & ok
        dev = d if dev is None else np.maximum(dev, d)
    return np.atleast_1d(holds), np.atleast_1d(dev)


def law_holds_at(G: GyroOps, law: Law | str, witness) -> bool:
    """Re-evaluate a single law on one argument tuple."""
    if isinstance(law, str):
        law = law_by_id(law)
    args = [_single(G, w) for w in witness]
    holds, _ = evaluate_law(G, law, args)
    return bool(holds.all())


def _single(G, w):
    if G.finite:
        return np.asarray([w])
    return np.asarray([w], dtype=float)


def _argument_batches(G: GyroOps, arity: int, mode: str, rng, budget: int):
    if mode == "exhaustive":
        return G.all_tuples(arity)
    return [G.sample(rng, budget) for _ in range(arity)]


def run_law_suite(
    backend: GyroOps,
    mode: str = "exhaustive",
    sample_budget: int = 10_000,
    seed: int = 0,
) -> list[LawReport]:
    """Check every law on ``backend``.

    ``exhaustive`` iterates all argument tuples (finite backends only);
    ``sampled`` draws ``sample_budget`` tuples per law from a generator seeded
    with ``seed``.  The gyrocommutative-only laws are reported as skipped when
    the gyrocommutative law itself does not hold.
    """
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "exhaustive" and not backend.finite:
        raise ValueError("exhaustive mode needs a finite backend")
    if sample_budget <= 0:
        raise ValueError("sample_budget must be positive")

    rng = np.random.default_rng(seed)
    reports: list[LawReport] = []
    gyrocommutative = True
    for law in LAWS:
        seed_field = seed if mode == "sampled" else None
        if law.gyrocommutative_only and not gyrocommutative:
            reports.append(
                LawReport(law.law_id, SKIPPED, 0, seed=seed_field, mode=mode,
                          note="backend is not gyrocommutative")
            )
            continue
        args = _argument_batches(backend, law.arity, mode, rng, sample_budget)
        holds, dev = evaluate_law(backend, law, args)
        n = int(holds.shape[0])
        report = LawReport(law.law_id, PASS, n, seed=seed_field, mode=mode,
                           max_deviation=float(dev.max()) if n else 0.0)
        if not holds.all():
            i = int(np.argmin(holds))
            witness = tuple(backend.to_json(backend.take(batch, i)) for batch in args)
            # a reported witness must reproduce the failure on its own
            assert not law_holds_at(backend, law, witness)
            report.witness = witness
            if law.law_id == "gyrocommutative":
                gyrocommutative = False
                report.status = SKIPPED
                report.note = "backend is not gyrocommutative; witness is a non-commuting pair"
            else:
                report.status = FAIL
        reports.append(report)
    return reports


def exhaustive_tuples(n: int, arity: int) -> list[np.ndarray]:
    """All ``arity``-tuples over range(n) as ``arity`` parallel index arrays."""
    grid = np.indices((n,) * arity).reshape(arity, -1)
    return [grid[k] for k in range(arity)]


__all__ = [
    "FAIL", "GyroOps", "LAWS", "LAW_IDS", "Law", "LawReport", "PASS", "SKIPPED",
    "evaluate_law", "exhaustive_tuples", "law_by_id", "law_holds_at", "run_law_suite",
]
