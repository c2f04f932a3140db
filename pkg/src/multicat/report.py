"""Command results in a fixed shape, rendered as text or JSON."""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

from .cones import ConeRecord
from .connectivity import Absent, Check
from .core import FinCategory, FinFunctor

__all__ = ["Report", "jsonable", "load_schema", "EXIT"]

VERDICTS = ("yes", "no", "computed", "error")
EXIT = {"yes": 0, "computed": 0, "no": 1, "error": 2}


def jsonable(x: Any) -> Any:
    """Plain JSON data for library values; tuples become lists, keys become strings."""
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, Check):
        return {"holds": x.holds, "witness": jsonable(x.witness)}
    if isinstance(x, Absent):
        return {"absent": x.reason, "component": jsonable(x.component)}
    if isinstance(x, ConeRecord):
        return {"apex": x.apex, "legs": {str(i): m for i, m in x.legs}}
    if isinstance(x, FinCategory):
        return x.name or "<category>"
    if isinstance(x, FinFunctor):
        return x.name or "<functor>"
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return {f.name: jsonable(getattr(x, f.name)) for f in dataclasses.fields(x) if f.repr}
    if isinstance(x, dict):
        return {_key(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x, key=repr) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    return str(x)


def _key(k: Any) -> str:
    if isinstance(k, str):
        return k
    if isinstance(k, tuple):
        return ",".join(_key(v) for v in k)
    return str(k)


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    verdict: str = "computed"
    witnesses: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    skipped: list = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"verdict must be one of {VERDICTS}")

    @property
    def exit_code(self) -> int:
        return EXIT[self.verdict]

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": jsonable(self.inputs),
            "verdict": self.verdict,
            "witnesses": jsonable(self.witnesses),
            "data": jsonable(self.data),
            "skipped": jsonable(self.skipped),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        return cls(d["command"], d["inputs"], d["verdict"], d["witnesses"], d["data"], d["skipped"])

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [f"{self.command}: {self.verdict}"]
        for k, v in d["data"].items():
            lines.append(f"  {k}: {_short(v)}")
        for w in d["witnesses"]:
            lines.append(f"  witness: {_short(w)}")
        if d["skipped"]:
            lines.append(f"  skipped: {_short(d['skipped'])}")
        return "\n".join(lines) + "\n"


def _short(v: Any) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v, ensure_ascii=False)


def load_schema() -> dict:
    text = resources.files("multicat").joinpath("schema/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)
