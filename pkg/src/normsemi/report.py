"""Verification reports with counterexample certificates."""
from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import SqrtValue, format_rational

PASS, FAIL, INFO = "pass", "fail", "info"


def show(value):
    """Render an exact value for a report: rationals as num/den, roots as sqrt(r)."""
    if isinstance(value, SqrtValue):
        return str(value)
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return format_rational(value)
    return value


def _plain(value):
    """Counts and flags stay as JSON scalars; exact values go through show()."""
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return show(value)


def make_witness(elements: dict, lhs=None, rhs=None, relation: str = "<=", **extra) -> dict:
    w = {"elements": dict(elements)}
    if lhs is not None or rhs is not None:
        w["lhs"] = show(lhs)
        w["relation"] = relation
        w["rhs"] = show(rhs)
    for k, v in extra.items():
        w[k] = _plain(v)
    return w


@dataclass
class Assertion:
    name: str
    status: str
    checked: int = 0
    anchor: str = ""
    witness: dict | None = None
    detail: dict | None = None

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        d = {"name": self.name, "anchor": self.anchor, "status": self.status, "checked": self.checked}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.detail is not None:
            d["detail"] = {k: _plain(v) for k, v in self.detail.items()}
        return d


@dataclass
class Report:
    command: str
    assertions: list[Assertion] = field(default_factory=list)
    exhaustive: bool = True
    seed: int | None = None
    samples: int | None = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(a.ok for a in self.assertions)

    def __bool__(self):
        return self.passed

    def failures(self) -> list[Assertion]:
        return [a for a in self.assertions if not a.ok]

    def get(self, name: str) -> Assertion:
        for a in self.assertions:
            if a.name == name:
                return a
        raise KeyError(name)

    def check(self, name, ok, checked=0, anchor="", witness=None) -> bool:
        self.assertions.append(
            Assertion(name, PASS if ok else FAIL, checked, anchor or name, None if ok else witness)
        )
        return bool(ok)

    def info(self, name, anchor="", **detail) -> None:
        self.assertions.append(Assertion(name, INFO, 0, anchor or name, None, detail))

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for a in other.assertions:
            name = f"{prefix}{a.name}" if prefix else a.name
            self.assertions.append(Assertion(name, a.status, a.checked, a.anchor, a.witness, a.detail))
        self.exhaustive = self.exhaustive and other.exhaustive
        if other.seed is not None:
            self.seed = other.seed
        if other.samples is not None:
            self.samples = other.samples
        return self

    @contextmanager
    def timed(self):
        t0 = time.perf_counter()
        try:
            yield self
        finally:
            self.elapsed += time.perf_counter() - t0

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "kind": "report",
            "command": self.command,
            "passed": self.passed,
            "exhaustive": self.exhaustive,
        }
        if self.seed is not None:
            d["seed"] = self.seed
        if self.samples is not None:
            d["samples"] = self.samples
        d["assertions"] = [a.to_dict() for a in self.assertions]
        if timing:
            d["elapsed_seconds"] = round(self.elapsed, 6)
        return d

    def to_text(self) -> str:
        lines = [f"{self.command}: {'PASS' if self.passed else 'FAIL'}"
                 f" ({'exhaustive' if self.exhaustive else 'sampled'})"]
        for a in self.assertions:
            line = f"  [{a.status.upper():4}] {a.name} ({a.checked} checked)"
            if a.witness:
                w = a.witness
                els = ", ".join(f"{k}={v}" for k, v in w.get("elements", {}).items())
                line += f"  witness: {els}"
                if "lhs" in w:
                    line += f"  {w['lhs']} {w['relation']} {w['rhs']} fails"
            if a.detail:
                line += "  " + ", ".join(f"{k}={_plain(v)}" for k, v in a.detail.items())
            lines.append(line)
        return "\n".join(lines)
