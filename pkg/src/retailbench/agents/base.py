"""The decision-policy contract and the built-in programmatic agents.

An agent sees the report history and returns a DecisionVector; the harness
validates whatever comes back. Agents never touch simulation state — the
returned vector is their only channel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional, Protocol

from ..engine import DecisionVector, initial_state
from ..market import industry_demand
from ..params import round_half_up
from ..report import MonthlyReport
from ..scenario import Scenario


class Agent(Protocol):
    name: str

    def decide(self, history: list[MonthlyReport], month: int) -> DecisionVector:
        """Return the ten decisions for ``month`` given months 1..month-1."""
        ...


@dataclass(frozen=True)
class AgentDescriptor:
    """How to construct an agent: kind plus kind-specific configuration."""

    kind: str                     # replay | heuristic | search | llm
    name: str
    fixture: Optional[str] = None         # replay: fixture id or path
    endpoint: Optional[dict[str, Any]] = None  # llm: base_url/model/auth env/...
    search_budget: int = 0                # search: simulator evaluations
    options: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in ("replay", "heuristic", "search", "llm"):
            raise ValueError(f"unknown agent kind '{self.kind}'")
        if self.kind == "replay" and not self.fixture:
            raise ValueError("replay agents need a fixture")
        if self.kind == "llm" and not self.endpoint:
            raise ValueError("llm agents need an endpoint config")

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "name": self.name, "fixture": self.fixture,
                "endpoint": self.endpoint, "search_budget": self.search_budget,
                "options": dict(self.options)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "AgentDescriptor":
        return cls(kind=data["kind"], name=data["name"], fixture=data.get("fixture"),
                   endpoint=data.get("endpoint"),
                   search_budget=int(data.get("search_budget", 0)),
                   options=dict(data.get("options", {})))


class HeuristicAgent:
    """Order-up-to baseline: cover expected demand at the order's arrival month
    plus a 20% safety stock, hold price 110, spend 2% of trailing revenue on
    marketing and a steady 5,000 on training."""

    PRICE = 110.0
    SAFETY = 0.20
    TRAINING = 5000.0
    MARKETING_SHARE = 0.02

    def __init__(self, scenario: Scenario, name: str = "heuristic"):
        self.name = name
        self.scenario = scenario

    def expected_own_demand(self, month: int) -> float:
        """Own-demand expectation under symmetric play (price 110 both sides)."""
        cal = self.scenario.calendar
        m = min(month, 12)
        industry = industry_demand(m, cal.gdp_path[m - 1], 0.0, cal,
                                   self.scenario.params)
        return industry / 2.0

    def decide(self, history: list[MonthlyReport], month: int) -> DecisionVector:
        params = self.scenario.params
        if history:
            state = history[-1].state_end
            trailing_revenue = history[-1].flows.revenue
        else:
            state = initial_state(params)
            trailing_revenue = state.last_revenue

        arrival = month + params.lead_time
        pipeline_before_arrival = sum(units for when, units in state.pipeline
                                      if when <= arrival)
        projected = state.inventory_units + pipeline_before_arrival
        for m in range(month, min(arrival, 13)):
            projected -= self.expected_own_demand(m)
        projected = max(0.0, projected)

        order = 0.0
        if arrival <= 12:
            target = (1.0 + self.SAFETY) * self.expected_own_demand(arrival)
            order = max(0.0, round_half_up(target - projected))

        next_demand = self.expected_own_demand(min(month + 1, 12))
        sales_forecast = round_half_up(next_demand) * self.PRICE
        return DecisionVector(
            order_units=float(order),
            price=self.PRICE,
            marketing_expense=round(self.MARKETING_SHARE * max(0.0, trailing_revenue), 2),
            training_expense=self.TRAINING,
            sales_forecast_next=float(sales_forecast),
            net_income_forecast=0.0,
        )


class ScriptedAgent:
    """Plays a fixed 12-vector sequence (used by search results and tests)."""

    def __init__(self, sequence: list[DecisionVector], name: str = "scripted"):
        if len(sequence) != 12:
            raise ValueError("scripted agents need 12 decision vectors")
        self.name = name
        self.sequence = list(sequence)

    def decide(self, history: list[MonthlyReport], month: int) -> DecisionVector:
        return self.sequence[month - 1]


class FailingAgent:
    """Always raises — exercises the harness fallback path."""

    def __init__(self, name: str = "failing"):
        self.name = name

    def decide(self, history: list[MonthlyReport], month: int) -> DecisionVector:
        raise RuntimeError("agent produced no usable decision")
