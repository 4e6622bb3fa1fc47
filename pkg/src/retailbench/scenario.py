"""Scenario files: parameter overrides, demand calendar and competitor script.

A scenario is a JSON document with a ``schema_version``; the two bundled
scenarios are ``default`` (the simulated benchmark year: GDP slowed to 1%, no
bulk purchase) and ``year0-replay`` (the reference year's conditions, used by
the calibration suite).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .market import CompetitorScript, MarketCalendar, default_competitor_script
from .params import SimParams

SCHEMA_VERSION = 1
_BUILTIN_FILES = {
    "default": "scenario_default.json",
    "year0-replay": "scenario_year0_replay.json",
}


class ScenarioError(ValueError):
    """Scenario file missing, malformed, or violating an invariant."""


@dataclass(frozen=True)
class Scenario:
    scenario_id: str
    schema_version: int
    description: str
    params: SimParams
    calendar: MarketCalendar
    competitor: CompetitorScript
    param_overrides: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "id": self.scenario_id,
            "description": self.description,
            "params": dict(self.param_overrides),
            "calendar": self.calendar.to_dict(),
            "competitor": self.competitor.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Scenario":
        try:
            version = int(data["schema_version"])
        except (KeyError, TypeError, ValueError):
            raise ScenarioError("scenario is missing a numeric schema_version") from None
        if version != SCHEMA_VERSION:
            raise ScenarioError(f"unsupported scenario schema_version {version} "
                                f"(this build reads {SCHEMA_VERSION})")
        try:
            overrides = dict(data.get("params", {}))
            params = SimParams().with_overrides(overrides)
            calendar = MarketCalendar.from_dict(data["calendar"])
            competitor = (CompetitorScript.from_dict(data["competitor"])
                          if data.get("competitor") else default_competitor_script())
            return cls(
                scenario_id=str(data.get("id", "unnamed")),
                schema_version=version,
                description=str(data.get("description", "")),
                params=params,
                calendar=calendar,
                competitor=competitor,
                param_overrides=overrides,
            )
        except ScenarioError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"invalid scenario: {exc}") from exc


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    if not path.is_file():
        raise ScenarioError(f"scenario file not found: {path}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario file {path} is not valid JSON: {exc}") from exc
    return Scenario.from_dict(data)


def save_scenario(scenario: Scenario, path: str | Path) -> None:
    Path(path).write_text(json.dumps(scenario.to_dict(), indent=2, sort_keys=True) + "\n")


def builtin_scenario(name: str) -> Scenario:
    if name not in _BUILTIN_FILES:
        raise ScenarioError(f"unknown scenario '{name}' "
                            f"(built-ins: {', '.join(sorted(_BUILTIN_FILES))})")
    text = resources.files("retailbench.data").joinpath(_BUILTIN_FILES[name]).read_text()
    return Scenario.from_dict(json.loads(text))


def builtin_scenario_ids() -> list[str]:
    return sorted(_BUILTIN_FILES)


def get_scenario(name_or_path: str) -> Scenario:
    """Resolve a built-in scenario id or a path to a scenario file."""
    if name_or_path in _BUILTIN_FILES:
        return builtin_scenario(name_or_path)
    return load_scenario(name_or_path)
