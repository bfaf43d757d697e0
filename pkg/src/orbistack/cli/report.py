"""Machine-readable run reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA = "orbistack-report/1"


@dataclass
class RunReport:
    command: list[str]
    verdict: str
    details: dict = field(default_factory=dict)
    timing: float | None = None
    lines: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": list(self.command),
            "verdict": self.verdict,
            "details": self.details,
            "timing_seconds": self.timing,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        out = [f"verdict: {self.verdict}", *self.lines]
        if self.timing is not None:
            out.append(f"time: {self.timing:.3f}s")
        return "\n".join(out) + "\n"
