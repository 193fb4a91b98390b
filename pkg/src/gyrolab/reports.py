"""Report records shared by the checkers and the CLI."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
VACUOUS = "vacuous"
REFUTATION = "REFUTATION"
COUNTEREXAMPLE = "counterexample"

#: statuses that make a run count as a violation
BAD = frozenset({FAIL, REFUTATION, COUNTEREXAMPLE})


@dataclass
class CheckReport:
    check: str
    status: str
    witness: Any = None
    detail: str = ""
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status not in BAD

    def to_dict(self) -> dict:
        out = {"kind": "check", "check": self.check, "status": self.status,
               "witness": _plain(self.witness), "detail": self.detail}
        if self.data:
            out["data"] = _plain(self.data)
        return out


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    if hasattr(x, "to_dict"):
        return x.to_dict()
    if hasattr(x, "item"):
        return x.item()
    return x


def result_status(result) -> str:
    if isinstance(result, dict):
        return result.get("status", PASS)
    return getattr(result, "status", PASS)


def file_digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class RunReport:
    command: str
    inputs: dict
    seed: int | None
    results: list
    exit_status: str = "pass"
    timestamp: str | None = None
    summary: dict = field(default_factory=dict)

    EXIT_CODES = {"pass": 0, "violation": 1, "input_error": 2}

    def finalize(self) -> "RunReport":
        if self.exit_status != "input_error":
            bad = any(result_status(r) in BAD for r in self.results)
            self.exit_status = "violation" if bad else "pass"
        return self

    @property
    def exit_code(self) -> int:
        return self.EXIT_CODES[self.exit_status]

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "seed": self.seed,
            "exit_status": self.exit_status,
            "summary": _plain(self.summary),
            "results": [_plain(r) for r in self.results],
        }
        if self.timestamp is not None:
            out["timestamp"] = self.timestamp
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)
