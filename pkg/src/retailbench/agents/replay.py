"""Replay agents: deterministic playback of bundled decision-table fixtures.

A fixture is one agent's 12-row decision table in the canonical ten-column
order. The six bundled fixtures transcribe the benchmark comparators'
trajectories; ``year0`` replays the reference year (price 110, scripted
orders), which the calibration suite leans on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Optional

from ..engine import DecisionVector
from ..report import MonthlyReport
from .parsing import CANONICAL_LABELS

FIXTURE_COLUMNS = tuple(CANONICAL_LABELS.values())


class FixtureError(ValueError):
    """Fixture missing, malformed, or incomplete where completeness is required."""


@dataclass(frozen=True)
class ReplayFixture:
    agent: str
    label: str
    complete: bool
    rows: tuple[tuple[float, ...], ...]
    annual: Optional[dict[str, float]] = None

    def decision(self, month: int) -> DecisionVector:
        if not 1 <= month <= len(self.rows):
            raise FixtureError(f"fixture '{self.agent}' has no row for month {month}")
        row = self.rows[month - 1]
        return DecisionVector(
            order_units=row[0], price=row[1], workers_hired=row[2],
            workers_dismissed=row[3], marketing_expense=row[4], loans=row[5],
            training_expense=row[6], rnd_expense=row[7],
            sales_forecast_next=row[8], net_income_forecast=row[9],
        )

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "schema_version": 1,
            "agent": self.agent,
            "label": self.label,
            "complete": self.complete,
            "columns": list(FIXTURE_COLUMNS),
            "rows": [[_plain(v) for v in row] for row in self.rows],
        }
        if self.annual is not None:
            doc["annual"] = dict(self.annual)
        return doc

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ReplayFixture":
        columns = tuple(data.get("columns", FIXTURE_COLUMNS))
        if columns != FIXTURE_COLUMNS:
            raise FixtureError("fixture columns do not match the canonical decision headers")
        rows = tuple(tuple(float(v) for v in row) for row in data.get("rows", []))
        complete = bool(data.get("complete", True))
        if complete:
            if len(rows) != 12 or any(len(r) != 10 for r in rows):
                raise FixtureError("a complete fixture needs 12 rows of 10 cells")
        return cls(agent=str(data["agent"]), label=str(data.get("label", data["agent"])),
                   complete=complete, rows=rows, annual=data.get("annual"))


def _plain(v: float) -> Any:
    return int(v) if float(v) == int(v) else float(v)


def bundled_fixture_ids() -> list[str]:
    files = resources.files("retailbench.data.fixtures")
    return sorted(p.name[:-5] for p in files.iterdir() if p.name.endswith(".json"))


def load_fixture(name_or_path: str) -> ReplayFixture:
    path = Path(name_or_path)
    if path.is_file():
        return ReplayFixture.from_dict(json.loads(path.read_text()))
    try:
        text = resources.files("retailbench.data.fixtures") \
            .joinpath(f"{name_or_path}.json").read_text()
    except FileNotFoundError:
        raise FixtureError(
            f"no fixture '{name_or_path}' (bundled: {', '.join(bundled_fixture_ids())})"
        ) from None
    return ReplayFixture.from_dict(json.loads(text))


class ReplayAgent:
    def __init__(self, fixture: ReplayFixture | str, name: Optional[str] = None):
        self.fixture = fixture if isinstance(fixture, ReplayFixture) else load_fixture(fixture)
        if not self.fixture.complete:
            raise FixtureError(f"fixture '{self.fixture.agent}' is partial and cannot replay")
        self.name = name or self.fixture.agent

    def decide(self, history: list[MonthlyReport], month: int) -> DecisionVector:
        return self.fixture.decision(month)
