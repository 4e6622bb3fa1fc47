"""The monthly report: statements, KPI block, flows and decision audit trail.

A report is self-contained — it carries the begin/end state snapshots — so a
persisted month can be integrity-checked and a session resumed without
recomputing anything.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .engine import CompanyState, DecisionVector, EconomicFlows
from .kpi import KpiBlock
from .market import MONTHS, MarketOutcome
from .params import SimParams
from .statements import Statements, check_identities


@dataclass(frozen=True)
class MonthlyReport:
    month: int
    statements: Statements
    kpi: KpiBlock
    flows: EconomicFlows
    market: MarketOutcome
    decisions_submitted: DecisionVector
    decisions_applied: DecisionVector
    adjustment_notes: tuple[str, ...]
    state_begin: CompanyState
    state_end: CompanyState

    @property
    def month_name(self) -> str:
        return MONTHS[self.month - 1]

    def verify(self, params: SimParams) -> list[str]:
        """Run the accounting identity checks against this report."""
        return check_identities(
            self.statements,
            prev_retained=self.state_begin.retained_earnings,
            inventory_units=self.state_end.inventory_units,
            params=params,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "month": self.month,
            "month_name": self.month_name,
            "statements": self.statements.to_dict(),
            "kpi": self.kpi.to_dict(),
            "flows": self.flows.to_dict(),
            "market": self.market.to_dict(),
            "decisions_submitted": self.decisions_submitted.to_dict(),
            "decisions_applied": self.decisions_applied.to_dict(),
            "adjustment_notes": list(self.adjustment_notes),
            "state_begin": self.state_begin.to_dict(),
            "state_end": self.state_end.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "MonthlyReport":
        return cls(
            month=int(data["month"]),
            statements=Statements.from_dict(data["statements"]),
            kpi=KpiBlock.from_dict(data["kpi"]),
            flows=EconomicFlows.from_dict(data["flows"]),
            market=MarketOutcome.from_dict(data["market"]),
            decisions_submitted=DecisionVector.from_dict(data["decisions_submitted"]),
            decisions_applied=DecisionVector.from_dict(data["decisions_applied"]),
            adjustment_notes=tuple(data["adjustment_notes"]),
            state_begin=CompanyState.from_dict(data["state_begin"]),
            state_end=CompanyState.from_dict(data["state_end"]),
        )
