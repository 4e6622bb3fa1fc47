"""The single month-by-month game loop shared by every entry point.

``SessionEngine`` owns the company state, the competitor foil and the report
history for one 12-month game. The benchmark harness, the HTTP gateway and the
terminal player all drive this one class, which is what makes their outputs
provably identical for identical decision sequences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .engine import (CompanyState, DecisionVector, initial_state, step_month,
                     validate_decisions)
from .kpi import build_kpi_block
from .market import CompetitorSim, MarketOutcome, competitor_policy, resolve_market
from .report import MonthlyReport
from .scenario import Scenario
from .statements import build_statements

SESSION_MONTHS = 12


class SessionDone(RuntimeError):
    """Decision submitted to a session that has already completed."""


def state_equity_assets(state: CompanyState, scenario: Scenario) -> tuple[float, float]:
    """Total equity and total assets implied by a state snapshot."""
    p = scenario.params
    equity = p.paid_in_capital + state.retained_earnings
    assets = (state.cash + state.receivables
              + state.inventory_units * p.wholesale_price
              + p.buildings_value - state.accumulated_depr_buildings
              + p.equipment_value - state.accumulated_depr_equipment
              + p.intangibles)
    return equity, assets


@dataclass
class SessionEngine:
    scenario: Scenario
    state: CompanyState = None  # type: ignore[assignment]
    competitor: CompetitorSim = None  # type: ignore[assignment]
    history: list[MonthlyReport] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.state is None:
            self.state = initial_state(self.scenario.params)
        if self.competitor is None:
            self.competitor = CompetitorSim.fresh(self.scenario.params)

    @property
    def month(self) -> int:
        """The next month awaiting decisions (13 when the year is complete)."""
        return self.state.month_index

    @property
    def completed(self) -> bool:
        return self.month > SESSION_MONTHS

    def play_month(self, submitted: DecisionVector) -> MonthlyReport:
        """Validate and apply one month's decisions; returns the full report."""
        if self.completed:
            raise SessionDone("all 12 months have been played")
        params = self.scenario.params
        month = self.month
        state = self.state

        validated = validate_decisions(submitted, state, params)
        comp_decision = competitor_policy(month, self.scenario.competitor)
        own_demand, comp_demand, _ = resolve_market(
            month, self.scenario.calendar, validated.price,
            validated.marketing_expense, state.env_index,
            self.competitor, comp_decision, params)

        prev_equity, prev_assets = state_equity_assets(state, self.scenario)
        next_state, flows = step_month(state, validated, own_demand, params)
        comp_sold = self.competitor.step(month, comp_demand, comp_decision, params)

        total_sold = flows.units_sold + comp_sold
        outcome = MarketOutcome(
            industry_demand=own_demand + comp_demand,
            own_demand=own_demand,
            comp_demand=comp_demand,
            own_sold=flows.units_sold,
            comp_sold=comp_sold,
            own_unmet=flows.units_unmet,
            market_share=flows.units_sold / total_sold if total_sold else 0.0,
        )

        statements = build_statements(state, next_state, flows, params)
        kpi = build_kpi_block(
            flows, statements, next_state, params,
            prev_equity=prev_equity, prev_assets=prev_assets,
            forecasts_prev=state.forecasts_pending,
            market_share_value=outcome.market_share,
            gdp_pct=self.scenario.calendar.gdp_path[month - 1],
            hired=int(validated.workers_hired),
            dismissed=int(validated.workers_dismissed),
            prev_revenue=state.last_revenue,
            orders_placed=1 if flows.units_ordered > 0 else 0,
        )

        report = MonthlyReport(
            month=month,
            statements=statements,
            kpi=kpi,
            flows=flows,
            market=outcome,
            decisions_submitted=submitted,
            decisions_applied=validated.decisions,
            adjustment_notes=validated.notes,
            state_begin=state,
            state_end=next_state,
        )
        self.state = next_state
        self.history.append(report)
        return report

    def snapshot(self) -> dict[str, Any]:
        """Resumable engine state (reports are persisted separately)."""
        return {
            "state": self.state.to_dict(),
            "competitor": self.competitor.to_dict(),
        }

    @classmethod
    def resume(cls, scenario: Scenario, snapshot: dict[str, Any],
               history: list[MonthlyReport]) -> "SessionEngine":
        return cls(
            scenario=scenario,
            state=CompanyState.from_dict(snapshot["state"]),
            competitor=CompetitorSim.from_dict(snapshot["competitor"]),
            history=list(history),
        )
