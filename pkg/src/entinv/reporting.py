"""Check/report containers shared by the verification suites and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    repro: str = ""
    gap: bool = False  # failure caused by a classification gap


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def has_gap(self) -> bool:
        return any(c.gap for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "", repro: str = "", gap: bool = False):
        self.checks.append(Check(name, passed, detail, repro, gap))

    def note(self, text: str):
        self.notes.append(text)

    def extend(self, other: "Report"):
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)

    def render_text(self) -> str:
        lines = [f"== {self.title} =="]
        for note in self.notes:
            lines.append(f"note: {note}")
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"[{status}] {c.name}"
            if c.detail and not c.passed:
                line += f" -- {c.detail}"
            lines.append(line)
            if not c.passed and c.repro:
                lines.append(f"       reproduce: {c.repro}")
        for key, value in self.data.items():
            lines.append(f"{key}:")
            if isinstance(value, dict):
                for k, v in value.items():
                    lines.append(f"  {k}: {v}")
            else:
                lines.append(f"  {value}")
        total = len(self.checks)
        good = sum(1 for c in self.checks if c.passed)
        lines.append(f"result: {good}/{total} checks passed")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "notes": list(self.notes),
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                    "repro": c.repro,
                    "gap": c.gap,
                }
                for c in self.checks
            ],
            "data": self.data,
        }
