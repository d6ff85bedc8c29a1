"""Verdicts and plain-text verification reports."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Status(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"

    @classmethod
    def of(cls, ok: bool | None) -> "Status":
        if ok is None:
            return cls.INCONCLUSIVE
        return cls.PASS if ok else cls.FAIL


@dataclass(frozen=True)
class Check:
    name: str
    status: Status
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def line(self) -> str:
        return f"CHECK {self.name}: {self.status.value} ({self.detail})"


@dataclass
class Report:
    """Ordered check lines plus derived quantities and timings."""

    checks: list[Check] = field(default_factory=list)
    info: list[tuple[str, str]] = field(default_factory=list)
    timings: list[tuple[str, float]] = field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def note(self, key: str, value) -> None:
        self.info.append((key, str(value)))

    def time(self, key: str, seconds: float) -> None:
        self.timings.append((key, seconds))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.detail))
        self.info.extend((prefix + k, v) for k, v in other.info)
        self.timings.extend((prefix + k, t) for k, t in other.timings)

    @property
    def status(self) -> Status:
        states = {c.status for c in self.checks}
        if Status.FAIL in states:
            return Status.FAIL
        if Status.INCONCLUSIVE in states:
            return Status.INCONCLUSIVE
        return Status.PASS

    @property
    def exit_code(self) -> int:
        return {Status.PASS: 0, Status.FAIL: 1, Status.INCONCLUSIVE: 2}[self.status]

    def body(self) -> str:
        """Report text without timings (stable across runs)."""
        lines = [c.line() for c in self.checks]
        lines += [f"INFO {k}: {v}" for k, v in self.info]
        return "\n".join(lines)

    def render(self, timings: bool = True) -> str:
        text = self.body()
        if timings and self.timings:
            text += "\n" + "\n".join(f"TIME {k}: {t:.2f}s" for k, t in self.timings)
        return text
