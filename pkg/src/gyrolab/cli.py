"""``gyrolab`` command line: JSON report on stdout, one-line summary on stderr.

Exit codes: 0 pass, 1 violation (failed law/check, refutation or
counterexample), 2 input error.
"""

from __future__ import annotations

import argparse
import datetime as dt
import hashlib
import json
import sys
from pathlib import Path

from . import corpus
from .continuity import (
    PreconditionError,
    check_inverse_continuous,
    check_paratopological,
    classify,
    compute_B,
)
from .core import run_law_suite
from .einstein import (
    DomainError,
    EinsteinConfig,
    EinsteinGyrogroup,
    EinsteinVelocity,
    einstein_add,
    einstein_coadd,
    einstein_gyr,
    einstein_neg,
    lorentz_gamma,
)
from .enumeration import Truncated, enumerate_gyrogroups
from .finite import (
    AxiomFailure,
    FiniteGyrogroup,
    QuotientError,
    SubgyrogroupError,
    TableFormatError,
    certify,
    quotient_gyrogroup,
    subgyrogroups,
    table_from_dict,
)
from .reports import FAIL, PASS, CheckReport, RunReport
from .search import STRATEGIES, TARGETS, search_counterexample
from .theorems import check_strong_lemmas, check_theorem_instances
from .topology import TopologyError, topology_from_dict

TOPO_CHECKS = ("paratopological", "strong", "topological", "separation", "lemmas", "theorems", "B")


class InputError(Exception):
    pass


# --------------------------------------------------------------------------
# Input handling


def _read(source: str) -> tuple[bytes, str]:
    """Bytes of a file path, or of a bundled fixture written ``corpus:NAME``."""
    if source.startswith("corpus:"):
        name = source[len("corpus:"):]
        for path in (corpus.table_path(name), corpus.topology_path(name)):
            if path.is_file():
                return path.read_bytes(), source
        raise InputError(f"no bundled fixture named {name!r}")
    try:
        return Path(source).read_bytes(), source
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc


def _json(raw: bytes, source: str):
    try:
        return json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{source} is not UTF-8 JSON: {exc}") from exc


def _load_table(source: str, inputs: dict, key: str = "table") -> FiniteGyrogroup | AxiomFailure:
    raw, label = _read(source)
    inputs[key] = {"path": label, "sha256": hashlib.sha256(raw).hexdigest()}
    return table_from_dict(_json(raw, source))


def _load_valid_table(source: str, inputs: dict) -> FiniteGyrogroup:
    G = _load_table(source, inputs)
    if isinstance(G, AxiomFailure):
        raise InputError(f"{source} is not a gyrogroup: {G.axiom} fails at {list(G.witness)}")
    return G


def _load_topology(source: str, inputs: dict):
    raw, label = _read(source)
    inputs["topology"] = {"path": label, "sha256": hashlib.sha256(raw).hexdigest()}
    return topology_from_dict(_json(raw, source))


def _subset(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise InputError(f"bad subset {text!r}; expected comma-separated indices") from exc


def _vector(text: str) -> list[float]:
    try:
        v = [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise InputError(f"bad vector {text!r}; expected three comma-separated numbers") from exc
    if len(v) != 3:
        raise InputError(f"bad vector {text!r}; expected three components")
    return v


# --------------------------------------------------------------------------
# Commands


def cmd_validate(args) -> RunReport:
    inputs: dict = {}
    G = _load_table(args.table, inputs)
    if isinstance(G, AxiomFailure):
        res = CheckReport("validate", FAIL, list(G.witness), G.message, {"axiom": G.axiom})
    else:
        res = CheckReport("validate", PASS, detail="all axioms hold",
                          data={"order": G.order, "associative": G.is_associative,
                                "gyrocommutative": G.is_gyrocommutative})
    return RunReport("validate", inputs, None, [res])


def cmd_laws(args) -> RunReport:
    inputs: dict = {}
    if args.einstein:
        cfg = EinsteinConfig(c=args.c, tolerance=args.tol)
        backend = EinsteinGyrogroup(cfg)
        inputs["einstein"] = {"c": cfg.c, "tolerance": cfg.tolerance}
        results = run_law_suite(backend, "sampled", args.samples, args.seed)
        seed = args.seed
    else:
        if args.table is None:
            raise InputError("give a table file or --einstein")
        G = _load_valid_table(args.table, inputs)
        mode = args.mode or "exhaustive"
        results = run_law_suite(G, mode, args.samples, args.seed)
        seed = args.seed if mode == "sampled" else None
    return RunReport("laws", inputs, seed, results)


def cmd_subgyro(args) -> RunReport:
    inputs: dict = {}
    G = _load_valid_table(args.table, inputs)
    subsets = subgyrogroups(G) if args.subset is None else [_subset(args.subset)]
    results = []
    for H in subsets:
        cert = certify(G, H)
        d = cert.to_dict()
        d["status"] = PASS if cert.is_subgyrogroup or args.subset is None else FAIL
        results.append(d)
    return RunReport("subgyro", inputs, None, results)


def cmd_quotient(args) -> RunReport:
    inputs: dict = {}
    G = _load_valid_table(args.table, inputs)
    Q = quotient_gyrogroup(G, _subset(args.subset))
    d = Q.to_dict()
    d["status"] = PASS
    return RunReport("quotient", inputs, None, [d])


def _verdict_report(name, v) -> CheckReport:
    return CheckReport(name, PASS if v.holds else FAIL, v.witness, v.message)


def cmd_topo(args, checks=None) -> RunReport:
    inputs: dict = {}
    G = _load_valid_table(args.table, inputs)
    tau = _load_topology(args.topology, inputs)
    if G.order != tau.order:
        raise PreconditionError(f"table has order {G.order} but topology has order {tau.order}")
    checks = checks or args.check or ["topological"]
    results: list = []
    for check in checks:
        if check == "paratopological":
            results.append(_verdict_report("paratopological", check_paratopological(G, tau)))
        elif check == "strong":
            cls = classify(G, tau)
            if not cls.paratopological:
                results.append(CheckReport("strongly_paratopological", FAIL, cls.paratopological.witness,
                                           "not paratopological"))
            else:
                results.append(_verdict_report("strongly_paratopological", cls.strongly_paratopological))
        elif check == "topological":
            cls = classify(G, tau)
            results.append(_verdict_report("paratopological", cls.paratopological))
            results.append(_verdict_report("inverse_continuous", check_inverse_continuous(G, tau)))
        elif check == "separation":
            results.append(CheckReport("separation", PASS, data=classify(G, tau).separation.to_dict()))
        elif check == "lemmas":
            results.extend(check_strong_lemmas(G, tau, seed=args.seed))
        elif check == "theorems":
            results.extend(check_theorem_instances(G, tau))
            results.extend(check_strong_lemmas(G, tau, seed=args.seed))
        elif check == "B":
            # the invariance claims are only made for paratopological pairs
            B = compute_B(G, tau)
            para = check_paratopological(G, tau).holds
            bad = para and (not B.gyr_invariant.holds or B.invariant_subgyro is False)
            results.append(CheckReport("B", FAIL if bad else PASS, B.gyr_invariant.witness,
                                       "" if para else "not paratopological; invariance not expected",
                                       B.to_dict()))
    return RunReport("topo", inputs, args.seed, results)


def cmd_theorems(args) -> RunReport:
    rep = cmd_topo(args, ["theorems"])
    rep.command = "theorems"
    return rep


def cmd_search(args) -> RunReport:
    rep = search_counterexample(args.target, args.max_order, args.budget, args.seed, args.strategy)
    inputs = {"target": args.target, "max_order": args.max_order, "budget": args.budget,
              "strategy": args.strategy}
    return RunReport("search", inputs, args.seed, [rep.to_dict()])


def cmd_enumerate(args) -> RunReport:
    results = []
    counts: dict[int, int] = {}
    for G in enumerate_gyrogroups(args.max_order, budget=args.budget):
        if isinstance(G, Truncated):
            results.append({"kind": "truncated", "status": "skipped", "order": G.order,
                            "nodes": G.nodes, "found_at_order": G.found_at_order})
            break
        counts[G.order] = counts.get(G.order, 0) + 1
        results.append({"kind": "gyrogroup", "status": PASS, "order": G.order,
                        "associative": G.is_associative, "gyrocommutative": G.is_gyrocommutative,
                        "table": [list(r) for r in G.table]})
    rep = RunReport("enumerate", {"max_order": args.max_order, "budget": args.budget}, None, results)
    rep.summary = {"counts": {str(k): v for k, v in sorted(counts.items())}}
    return rep


def cmd_einstein(args) -> RunReport:
    cfg = EinsteinConfig(c=args.c, tolerance=args.tol)
    vs = [EinsteinVelocity(_vector(t), cfg.c) for t in args.vectors]
    arity = {"add": 2, "neg": 1, "gamma": 1, "gyr": 3, "coadd": 2}[args.op]
    if len(vs) != arity:
        raise InputError(f"'{args.op}' takes {arity} vector(s), got {len(vs)}")
    fn = {"add": einstein_add, "neg": einstein_neg, "gyr": einstein_gyr, "coadd": einstein_coadd}
    if args.op == "gamma":
        value = lorentz_gamma(vs[0])
    else:
        value = fn[args.op](*vs).tolist()
    res = {"kind": "einstein", "status": PASS, "op": args.op, "value": value,
           "low_precision": any(v.low_precision for v in vs)}
    inputs = {"vectors": [v.tolist() for v in vs], "c": cfg.c, "tolerance": cfg.tolerance}
    return RunReport("einstein", inputs, None, [res])


# --------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-timestamp", action="store_true",
                        help="omit the timestamp so repeated runs are byte-identical")

    p = argparse.ArgumentParser(prog="gyrolab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a Cayley table against the axioms")
    s.add_argument("table", help="table JSON path, or corpus:NAME")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("laws", parents=[common], help="run the identity law suite")
    s.add_argument("table", nargs="?")
    s.add_argument("--einstein", action="store_true", help="use the Einstein backend (sampled)")
    s.add_argument("--mode", choices=("exhaustive", "sampled"), help="finite tables only")
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--c", type=float, default=1.0)
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_laws)

    s = sub.add_parser("subgyro", parents=[common], help="certify a subset (or list all subgyrogroups)")
    s.add_argument("table")
    s.add_argument("--subset", help="comma-separated indices; omit to list every subgyrogroup")
    s.set_defaults(func=cmd_subgyro)

    s = sub.add_parser("quotient", parents=[common], help="quotient by an invariant subgyrogroup")
    s.add_argument("table")
    s.add_argument("--subset", required=True)
    s.set_defaults(func=cmd_quotient)

    for name, func in (("topo", cmd_topo), ("theorems", cmd_theorems)):
        s = sub.add_parser(name, parents=[common],
                           help="continuity checks" if name == "topo" else "alias for topo --check theorems")
        s.add_argument("table")
        s.add_argument("--topology", required=True, help="topology JSON path, or corpus:NAME")
        if name == "topo":
            s.add_argument("--check", action="append", choices=TOPO_CHECKS)
        s.add_argument("--seed", type=int, default=0, help="seed for sampled subsets on large carriers")
        s.set_defaults(func=func)

    s = sub.add_parser("search", parents=[common], help="counterexample search for an open question")
    s.add_argument("--target", choices=TARGETS, required=True)
    s.add_argument("--max-order", type=int, required=True)
    s.add_argument("--budget", type=int, default=None, help="maximum topologies examined")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--strategy", choices=STRATEGIES, default="auto")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("enumerate", parents=[common], help="list gyrogroups up to isomorphism")
    s.add_argument("--max-order", type=int, required=True)
    s.add_argument("--budget", type=int, default=None, help="maximum search nodes")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("einstein", parents=[common], help="Einstein addition and friends")
    s.add_argument("op", choices=("add", "neg", "gamma", "gyr", "coadd"))
    s.add_argument("vectors", nargs="+", help="vectors written x,y,z")
    s.add_argument("--c", type=float, default=1.0)
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_einstein)
    return p


def _summary(rep: RunReport) -> str:
    counts: dict[str, int] = {}
    for r in rep.results:
        st = r.get("status") if isinstance(r, dict) else getattr(r, "status", PASS)
        counts[st] = counts.get(st, 0) + 1
    parts = ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))
    return f"{rep.command}: {parts or 'no results'}; exit {rep.exit_code} ({rep.exit_status})"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep = args.func(args)
        rep.finalize()
    except (InputError, TableFormatError, TopologyError, SubgyrogroupError, QuotientError,
            PreconditionError, DomainError, ValueError) as exc:
        rep = RunReport(args.command, {}, None, [], exit_status="input_error",
                        summary={"error": f"{type(exc).__name__}: {exc}"})
    if not args.no_timestamp:
        rep.timestamp = dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds")
    sys.stdout.write(rep.to_json() + "\n")
    msg = _summary(rep)
    if rep.exit_status == "input_error":
        msg += ": " + rep.summary["error"]
    print(msg, file=sys.stderr)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
