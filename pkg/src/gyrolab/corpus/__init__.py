"""Bundled fixtures: small group tables, the order-8 non-group gyrogroups
found by the enumeration oracle, and a few named topologies."""

from __future__ import annotations

from importlib import resources

from ..finite import FiniteGyrogroup, load_table
from ..topology import FiniteTopology, load_topology


def _dir(kind: str):
    return resources.files(__name__) / kind


def table_names() -> list[str]:
    return sorted(p.name[:-5] for p in _dir("tables").iterdir() if p.name.endswith(".json"))


def topology_names() -> list[str]:
    return sorted(p.name[:-5] for p in _dir("topologies").iterdir() if p.name.endswith(".json"))


def table_path(name: str):
    return _dir("tables") / f"{name}.json"


def topology_path(name: str):
    return _dir("topologies") / f"{name}.json"


def table(name: str) -> FiniteGyrogroup:
    G = load_table(table_path(name))
    if not isinstance(G, FiniteGyrogroup):
        raise ValueError(f"bundled table {name} fails {G.axiom}")
    return G


def topology(name: str) -> FiniteTopology:
    return load_topology(topology_path(name))


def tables() -> dict[str, FiniteGyrogroup]:
    return {name: table(name) for name in table_names()}
