"""Finite-instance checks of the set lemmas and continuity theorems.

Every finite space is compact, locally compact, countably compact and
feebly compact, so those hypotheses hold automatically and only the
separation, continuity and algebraic hypotheses are evaluated.  A case whose
hypotheses hold and conclusion fails is reported with status REFUTATION.
"""

from __future__ import annotations

import itertools

import numpy as np

from .continuity import (
    algebra,
    b_mask,
    check_topologically_periodic,
    classify,
    inverse_continuous_at_identity,
    quotient_topology,
)
from .finite import (
    FiniteGyrogroup,
    is_invariant_subgyrogroup,
    is_L_subgyrogroup,
    quotient_gyrogroup,
    restrict,
    subgyrogroup_verdict,
    subgyrogroups,
)
from .reports import FAIL, PASS, REFUTATION, SKIPPED, VACUOUS, CheckReport
from .topology import FiniteTopology, members

#: exhaustive over all subsets M up to this order, sampled above
EXHAUSTIVE_SUBSET_ORDER = 16


def _m(A):
    return members(A)


def invariant_base(G: FiniteGyrogroup, tau: FiniteTopology) -> list[int]:
    """All gyration-invariant open neighbourhoods of 0."""
    S = algebra(G)
    return [U for U in tau.neighbourhoods_of(0) if S.gyr_invariant(U) is None]


def _subsets(tau: FiniteTopology, rng: np.random.Generator, budget: int):
    if tau.order <= EXHAUSTIVE_SUBSET_ORDER:
        return range(tau.full + 1)
    return [int(x) for x in rng.integers(0, tau.full + 1, budget, dtype=np.int64)]


# --------------------------------------------------------------------------
# Set lemmas


def check_strong_lemmas(G: FiniteGyrogroup, tau: FiniteTopology, seed: int = 0,
                        subset_budget: int = 4096) -> list[CheckReport]:
    """Evaluate the set inclusions that hold in strongly paratopological
    gyrogroups, with U, V, W ranging over the invariant open neighbourhoods
    of 0 and M over all subsets (sampled for large carriers)."""
    S = algebra(G)
    cls = classify(G, tau)
    n = G.order
    reports: list[CheckReport] = []

    strong_items = ("cobox-inclusion", "base-sum", "set-associativity",
                    "inverse-sum", "triple-sum", "inverse-closure")
    if not cls.strongly_paratopological:
        for name in strong_items:
            reports.append(CheckReport(name, SKIPPED, detail="not strongly paratopological"))
    else:
        base = invariant_base(G, tau)
        reports.append(_cobox(S, base, n))
        reports.append(_base_sum(S, tau, base))
        reports.append(_set_assoc(S, base, n))
        reports.append(_inverse_sum(S, base))
        reports.append(_triple_sum(S, base))
        reports.append(_inverse_closure(S, tau, base))

    if not cls.paratopological:
        reports.append(CheckReport("closure-bound", SKIPPED, detail="not paratopological"))
        reports.append(CheckReport("B-gyr-invariant", SKIPPED, detail="not paratopological"))
        return reports

    rng = np.random.default_rng(seed)
    nbhds = tau.neighbourhoods_of(0)
    status, witness = PASS, None
    for M in _subsets(tau, rng, subset_budget):
        cl = tau.closure(M)
        for U in nbhds:
            if cl & ~S.add(S.neg(U), M):
                status, witness = FAIL, {"M": _m(M), "U": _m(U)}
                break
        if witness:
            break
    mode = "exhaustive" if n <= EXHAUSTIVE_SUBSET_ORDER else f"sampled {subset_budget}, seed {seed}"
    reports.append(CheckReport("closure-bound", status, witness, f"cl(M) ⊆ ⊖U⊕M; subsets {mode}"))

    B = b_mask(tau)
    w = S.gyr_invariant(B)
    reports.append(CheckReport("B-gyr-invariant", PASS if w is None else FAIL,
                               None if w is None else {"a": w[0], "b": w[1], "B": _m(B)},
                               "gyr[a,b](B) = B"))
    return reports


def _cobox(S, base, n):
    for a in range(n):
        for U in base:
            if S.coadd(1 << a, U) & ~S.left(a, U):
                return CheckReport("cobox-inclusion", FAIL, {"a": a, "U": _m(U)}, "a⊞U ⊄ a⊕U")
            if S.coadd(1 << a, S.neg(U)) & ~S.left(a, S.neg(U)):
                return CheckReport("cobox-inclusion", FAIL, {"a": a, "U": _m(U)}, "a⊟U ⊄ a⊖U")
    return CheckReport("cobox-inclusion", PASS, detail="a⊞U ⊆ a⊕U and a⊟U ⊆ a⊖U")


def _base_sum(S, tau, base):
    members_ = set(base)
    for U1, U2 in itertools.product(base, repeat=2):
        s = S.add(U1, U2)
        if s not in members_ or not tau.is_open(s):
            return CheckReport("base-sum", FAIL, {"U1": _m(U1), "U2": _m(U2)},
                               "U1⊕U2 is not an invariant open neighbourhood")
    return CheckReport("base-sum", PASS, detail="U1⊕U2 stays in the base")


def _set_assoc(S, base, n):
    for a in range(n):
        for U, W in itertools.product(base, repeat=2):
            if S.add(S.left(a, U), W) != S.left(a, S.add(U, W)):
                return CheckReport("set-associativity", FAIL, {"a": a, "U": _m(U), "W": _m(W)},
                                   "(a⊕U)⊕W ≠ a⊕(U⊕W)")
    return CheckReport("set-associativity", PASS, detail="(a⊕U)⊕W = a⊕(U⊕W)")


def _inverse_sum(S, base):
    negs = {W: S.neg(W) for W in base}
    for U, V in itertools.product(base, repeat=2):
        s = S.add(U, V)
        nvu = S.add(negs[V], negs[U])
        for W in base:
            if not s & ~W and nvu & ~negs[W]:
                return CheckReport("inverse-sum", FAIL, {"U": _m(U), "V": _m(V), "W": _m(W)},
                                   "U⊕V ⊆ W but ⊖V⊖U ⊄ ⊖W")
    return CheckReport("inverse-sum", PASS, detail="U⊕V ⊆ W implies ⊖V⊖U ⊆ ⊖W")


def _triple_sum(S, base):
    for W in base:
        ok = False
        for U in base:
            nU = S.neg(U)
            if not S.add(U, S.add(U, U)) & ~W and not S.add(S.add(nU, nU), nU) & ~S.neg(W):
                ok = True
                break
        if not ok:
            return CheckReport("triple-sum", FAIL, {"W": _m(W)},
                               "no U with U⊕(U⊕U) ⊆ W and (⊖U⊖U)⊖U ⊆ ⊖W")
    return CheckReport("triple-sum", PASS, detail="U⊕(U⊕U) ⊆ W and (⊖U⊖U)⊖U ⊆ ⊖W for some U")


def _inverse_closure(S, tau, base):
    for U, V in itertools.product(base, repeat=2):
        if S.add(V, V) & ~U:
            continue
        if S.neg(tau.closure(S.neg(V))) & ~U:
            return CheckReport("inverse-closure", FAIL, {"U": _m(U), "V": _m(V)},
                               "V⊕V ⊆ U but ⊖cl(⊖V) ⊄ U")
    return CheckReport("inverse-closure", PASS, detail="V⊕V ⊆ U implies ⊖cl(⊖V) ⊆ U")


# --------------------------------------------------------------------------
# Theorem instances


def _instance(name, hypotheses: dict, conclusion: bool, witness=None, detail="") -> CheckReport:
    hyp = all(hypotheses.values())
    if not hyp:
        status = VACUOUS
    else:
        status = PASS if conclusion else REFUTATION
    return CheckReport(name, status, witness if status == REFUTATION else None, detail,
                       {"hypotheses": hypotheses, "conclusion": bool(conclusion)})


def check_theorem_instances(G: FiniteGyrogroup, tau: FiniteTopology) -> list[CheckReport]:
    """Evaluate each continuity theorem's hypotheses on (G, tau) and, when
    they hold, its conclusion."""
    cls = classify(G, tau)
    sep = cls.separation
    para = cls.paratopological.holds
    strong = cls.strongly_paratopological.holds
    gc = G.is_gyrocommutative
    inv = cls.inverse_continuous
    out = []

    out.append(_instance(
        "compact-hausdorff", {"hausdorff": sep.hausdorff, "paratopological": para},
        inv.holds, inv.witness, "compact Hausdorff paratopological ⇒ topological"))

    out.append(_instance(
        "hausdorff-locally-compact-strong", {"hausdorff": sep.hausdorff, "strongly_paratopological": strong},
        cls.strongly_topological, inv.witness,
        "Hausdorff locally compact strongly paratopological ⇒ strongly topological"))

    at0 = inverse_continuous_at_identity(G, tau)
    out.append(_instance(
        "identity-continuity-criterion", {"strongly_paratopological": strong},
        at0.holds == inv.holds, {"at_identity": at0.holds, "everywhere": inv.holds},
        "inverse continuous at 0 ⇔ inverse continuous everywhere (both directions)"))

    out.append(_extension_instance(G, tau, cls))

    out.append(_instance(
        "locally-compact-gyrocommutative-strong",
        {"strongly_paratopological": strong, "gyrocommutative": gc},
        cls.strongly_topological, inv.witness,
        "locally compact strongly paratopological gyrocommutative ⇒ strongly topological"))

    out.append(_b_instance(G, tau, para, gc))

    out.append(_instance(
        "regular-feebly-compact-strong", {"regular": sep.regular, "strongly_paratopological": strong},
        cls.topological, inv.witness,
        "regular feebly (countably) compact strongly paratopological ⇒ topological; "
        "the dense subspace is taken to be the whole space"))

    out.append(_instance(
        "pseudocompact-strong",
        {"tychonoff": sep.regular and sep.T1, "strongly_paratopological": strong},
        cls.topological, inv.witness, "pseudocompact strongly paratopological ⇒ topological"))

    periodic = check_topologically_periodic(G, tau).holds if strong else False
    out.append(_instance(
        "hausdorff-countably-compact-periodic",
        {"hausdorff": sep.hausdorff, "strongly_paratopological": strong, "topologically_periodic": periodic},
        cls.strongly_topological, inv.witness,
        "Hausdorff countably compact topologically periodic strongly paratopological ⇒ strongly topological"))

    out.append(_compact_set_instance(G, tau, para))
    out.append(_closure_square_instance(G, tau, para))
    out.append(_quotient_open_instance(G, tau, para))
    out.append(_homeomorphism_instance(G, tau, para))
    out.append(_nowhere_dense_instance(G, tau, cls))
    return out


def _extension_instance(G, tau, cls) -> CheckReport:
    name = "extension-by-invariant-subgyrogroup"
    detail = ("H strongly topological (subspace topology) and G/H strongly topological "
              "(quotient topology) ⇒ G strongly topological")
    if not cls.strongly_paratopological:
        return _instance(name, {"strongly_paratopological": False}, True, detail=detail)
    checked = []
    for H in subgyrogroups(G):
        if not is_invariant_subgyrogroup(G, H) or not is_L_subgyrogroup(G, H):
            continue
        sub, pts = restrict(G, H)
        h_cls = classify(sub, tau.subspace(pts))
        quo = quotient_gyrogroup(G, H)
        q_tau = quotient_topology(G, tau, H).topology
        q_cls = classify(quo.gyrogroup, q_tau)
        hyp = h_cls.strongly_topological and q_cls.strongly_topological
        checked.append({"H": sorted(H), "hypotheses": hyp})
        if hyp and not cls.strongly_topological:
            return CheckReport(name, REFUTATION, {"H": sorted(H)}, detail,
                               {"hypotheses": {"strongly_paratopological": True, "H": True, "G/H": True},
                                "conclusion": False})
    any_hyp = any(c["hypotheses"] for c in checked)
    return CheckReport(name, PASS if any_hyp else VACUOUS, None, detail,
                       {"invariant_subgyrogroups": checked, "conclusion": cls.strongly_topological})


def _b_instance(G, tau, para, gc) -> CheckReport:
    name = "B-invariant-subgyrogroup"
    detail = "locally compact paratopological gyrocommutative ⇒ B is a closed invariant subgyrogroup"
    if not (para and gc):
        return _instance(name, {"paratopological": para, "gyrocommutative": gc}, True, detail=detail)
    B = b_mask(tau)
    pts = members(B)
    ok = tau.is_closed(B) and bool(subgyrogroup_verdict(G, pts))
    if ok:
        ok = bool(is_invariant_subgyrogroup(G, pts))
    return _instance(name, {"paratopological": True, "gyrocommutative": True}, ok, {"B": pts}, detail)


def _compact_set_instance(G, tau, para) -> CheckReport:
    name = "compact-set-neighbourhood"
    detail = "F ⊆ O open ⇒ some open V ∋ 0 has F⊕V ⊆ O and V⊕F ⊆ O"
    if not para:
        return _instance(name, {"paratopological": False}, True, detail=detail)
    S = algebra(G)
    nbhds = tau.neighbourhoods_of(0)
    # the condition only gets harder as F grows, so F = O covers every F ⊆ O
    for O in sorted(tau.opens):
        if not any(not S.add(O, V) & ~O and not S.add(V, O) & ~O for V in nbhds):
            return _instance(name, {"paratopological": True}, False, {"F": _m(O), "O": _m(O)}, detail)
    return _instance(name, {"paratopological": True}, True, detail=detail)


def _closure_square_instance(G, tau, para) -> CheckReport:
    name = "closure-square"
    detail = "every open U ∋ 0 has an open V ∋ 0 with cl(V)⊕cl(V) ⊆ cl(U)"
    if not para:
        return _instance(name, {"paratopological": False}, True, detail=detail)
    S = algebra(G)
    nbhds = tau.neighbourhoods_of(0)
    for U in nbhds:
        cU = tau.closure(U)
        if not any(not S.add(tau.closure(V), tau.closure(V)) & ~cU for V in nbhds):
            return _instance(name, {"paratopological": True}, False, {"U": _m(U)}, detail)
    return _instance(name, {"paratopological": True}, True, detail=detail)


def _quotient_open_instance(G, tau, para) -> CheckReport:
    name = "quotient-map-open-continuous"
    detail = "π: G → G/H is open and continuous for every L-subgyrogroup H"
    if not para:
        return _instance(name, {"paratopological": False}, True, detail=detail)
    for H in subgyrogroups(G):
        if not is_L_subgyrogroup(G, H):
            continue
        q = quotient_topology(G, tau, H)
        if not (q.continuous and q.open_map):
            return _instance(name, {"paratopological": True}, False,
                             {"H": sorted(H), "open_map": q.open_map.to_dict()}, detail)
    return _instance(name, {"paratopological": True}, True, detail=detail)


def _homeomorphism_instance(G, tau, para) -> CheckReport:
    name = "translations-and-gyrations-homeomorphic"
    detail = "left translations and gyrations map opens to opens and closed sets to closed sets"
    if not para:
        return _instance(name, {"paratopological": False}, True, detail=detail)
    S = algebra(G)
    opens, closed = tau.opens, tau.closed_sets
    n = G.order
    for x in range(n):
        for U in opens:
            if S.left(x, U) not in opens or S.left(x, tau.full & ~U) not in closed:
                return _instance(name, {"paratopological": True}, False, {"x": x, "U": _m(U)}, detail)
    for a, b in itertools.product(range(n), repeat=2):
        for U in opens:
            if S.gyr(a, b, U) not in opens or S.gyr(a, b, tau.full & ~U) not in closed:
                return _instance(name, {"paratopological": True}, False,
                                 {"gyr": [a, b], "U": _m(U)}, detail)
    return _instance(name, {"paratopological": True}, True, detail=detail)


def _nowhere_dense_instance(G, tau, cls) -> CheckReport:
    name = "nowhere-dense-neighbourhood"
    detail = "strongly paratopological, not topological ⇒ some base member U has U∩(⊖U) nowhere dense"
    hyp = {"strongly_paratopological": cls.strongly_paratopological.holds,
           "not_topological": not cls.topological}
    if not all(hyp.values()):
        return _instance(name, hyp, True, detail=detail)
    S = algebra(G)
    found = any(tau.interior(tau.closure(U & S.neg(U))) == 0 for U in invariant_base(G, tau))
    return _instance(name, hyp, found, None, detail)


__all__ = ["check_strong_lemmas", "check_theorem_instances", "invariant_base"]
