"""Verification report containers shared by the checker modules and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class ReportItem:
    label: str
    params: dict[str, Any]
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "params": self.params,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass
class Report:
    title: str
    items: list[ReportItem] = field(default_factory=list)

    def add(self, label: str, params: dict[str, Any], passed: bool, detail: str = "") -> None:
        self.items.append(ReportItem(label, params, bool(passed), detail))

    @property
    def ok(self) -> bool:
        return all(item.passed for item in self.items)

    def failures(self) -> list[ReportItem]:
        return [item for item in self.items if not item.passed]

    def merged(self, other: "Report") -> "Report":
        return Report(self.title, self.items + other.items)

    def to_dict(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "ok": self.ok,
            "checked": len(self.items),
            "failed": len(self.failures()),
            "items": [item.to_dict() for item in self.items],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def to_tsv(self) -> str:
        lines = ["label\tparams\tpassed\tdetail"]
        for item in self.items:
            params = ",".join(f"{k}={v}" for k, v in item.params.items())
            lines.append(f"{item.label}\t{params}\t{item.passed}\t{item.detail}")
        return "\n".join(lines)

    def summary(self) -> str:
        status = "ok" if self.ok else "FAILED"
        return f"{self.title}: {len(self.items)} checks, {len(self.failures())} failures [{status}]"
