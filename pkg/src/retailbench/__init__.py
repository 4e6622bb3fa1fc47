"""retailbench: a deterministic month-stepped retail management simulation with
full three-statement accounting, an agent benchmarking harness, and an HTTP
gateway for interactive play."""

from .engine import (CompanyState, DecisionError, DecisionVector, EconomicFlows,
                     ValidatedDecisions, initial_state, step_month,
                     update_productivity, update_workforce, validate_decisions)
from .kpi import KpiBlock, carbon_footprint, financial_ratios, forecast_error, net_profit_margin
from .market import (CompetitorScript, MarketCalendar, MarketOutcome, competitor_policy,
                     industry_demand, realize_sales, split_demand)
from .params import SimParams
from .report import MonthlyReport
from .scenario import Scenario, builtin_scenario, get_scenario, load_scenario
from .session import SessionEngine
from .statements import (BalanceSheet, CashFlowStatement, IncomeStatement, Statements,
                         build_statements, check_identities)

__version__ = "0.1.0"

__all__ = [
    "CompanyState", "DecisionError", "DecisionVector", "EconomicFlows",
    "ValidatedDecisions", "initial_state", "step_month", "update_productivity",
    "update_workforce", "validate_decisions",
    "KpiBlock", "carbon_footprint", "financial_ratios", "forecast_error",
    "net_profit_margin",
    "CompetitorScript", "MarketCalendar", "MarketOutcome", "competitor_policy",
    "industry_demand", "realize_sales", "split_demand",
    "SimParams", "MonthlyReport", "Scenario", "builtin_scenario", "get_scenario",
    "load_scenario", "SessionEngine",
    "BalanceSheet", "CashFlowStatement", "IncomeStatement", "Statements",
    "build_statements", "check_identities",
    "__version__",
]
