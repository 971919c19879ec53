"""Line-oriented verification reports.

Every check renders as ``CHECK <name> <instance> PASS|FAIL [witness]``, info
lines as ``INFO <name> <instance> <text>``, and a closing ``SUMMARY`` line.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field


@dataclass
class Check:
    name: str
    instance: str
    ok: bool
    witness: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = f" {self.witness}" if self.witness else ""
        return f"CHECK {self.name} {self.instance} {status}{tail}"


@dataclass
class Info:
    name: str
    instance: str
    text: str

    def line(self) -> str:
        return f"INFO {self.name} {self.instance} {self.text}"


@dataclass
class Report:
    entries: list = field(default_factory=list)

    def check(self, name: str, instance: str, ok: bool, witness: str = "") -> bool:
        self.entries.append(Check(name, _token(instance), bool(ok), witness))
        return bool(ok)

    def info(self, name: str, instance: str, text: str) -> None:
        self.entries.append(Info(name, _token(instance), text))

    def extend(self, other: "Report") -> "Report":
        self.entries.extend(other.entries)
        return self

    @property
    def checks(self) -> list[Check]:
        return [e for e in self.entries if isinstance(e, Check)]

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        n = len(self.checks)
        bad = len(self.failures)
        return f"SUMMARY checks={n} passed={n - bad} failed={bad}"

    def lines(self) -> list[str]:
        return [e.line() for e in self.entries] + [self.summary()]

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def to_json(self) -> str:
        rows = [dict(kind=type(e).__name__.lower(), **asdict(e)) for e in self.entries]
        return json.dumps({"entries": rows, "ok": self.ok,
                           "checks": len(self.checks), "failed": len(self.failures)},
                          indent=1, sort_keys=True)


def _token(s: str) -> str:
    """Instances are single whitespace-free tokens so lines split cleanly."""
    return "".join(str(s).split()) or "-"


def fmt_set(labels) -> str:
    return "{" + ",".join(labels) + "}"
