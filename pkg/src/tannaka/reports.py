"""Check reports: every failed axiom instance with its witnessing data."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Failure:
    check: str
    where: tuple = ()
    detail: str = ""

    def as_dict(self):
        return {"check": self.check, "where": list(self.where), "detail": self.detail}

    def __str__(self):
        loc = f" at {self.where}" if self.where else ""
        msg = f": {self.detail}" if self.detail else ""
        return f"{self.check}{loc}{msg}"


@dataclass
class Report:
    failures: list[Failure] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, check: str, where: tuple = (), detail: str = ""):
        self.failures.append(Failure(check, where, detail))

    def note(self, text: str):
        self.notes.append(text)

    def merge(self, other: "Report") -> "Report":
        self.failures.extend(other.failures)
        self.notes.extend(other.notes)
        return self

    def as_dict(self):
        return {
            "ok": self.ok,
            "failures": [f.as_dict() for f in self.failures],
            "notes": list(self.notes),
        }

    def __str__(self):
        if self.ok:
            return "pass" + (f" ({'; '.join(self.notes)})" if self.notes else "")
        return "; ".join(str(f) for f in self.failures)
