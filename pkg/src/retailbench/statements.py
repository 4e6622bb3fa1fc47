"""Three-statement accounting built from one month's economic flows.

``build_statements`` converts the prior state plus the month's flows into an
income statement, balance sheet and indirect-method cash-flow statement, and
``check_identities`` verifies the four invariants that must hold for every
reachable state: the balance identity, the cash tie-out, the retained-earnings
roll-forward and the inventory valuation. A violation is an engine bug, never
a user error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from .engine import CompanyState, EconomicFlows
from .params import SimParams

IDENTITY_TOLERANCE = 0.01


class AccountingError(AssertionError):
    """Internal failure: a statement violated an accounting identity."""


@dataclass(frozen=True)
class IncomeStatement:
    revenue: float
    materials_expense: float
    staff_costs: float
    depreciation: float
    other_opex: float
    total_costs: float
    operating_income: float
    interest: float
    profit_before_tax: float
    tax: float
    net_income: float

    def to_dict(self) -> dict[str, float]:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "IncomeStatement":
        return cls(**{k: float(data[k]) for k in cls.__dataclass_fields__})


@dataclass(frozen=True)
class BalanceSheet:
    cash: float
    receivables: float
    inventory_value: float
    total_current_assets: float
    buildings_gross: float
    buildings_accum_depr: float
    equipment_gross: float
    equipment_accum_depr: float
    intangibles: float
    total_noncurrent_assets: float
    total_assets: float
    accounts_payable: float
    long_term_debt: float
    provisions: float
    total_liabilities: float
    paid_in_capital: float
    retained_earnings: float
    total_equity: float
    total_liabilities_and_equity: float

    def to_dict(self) -> dict[str, float]:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "BalanceSheet":
        return cls(**{k: float(data[k]) for k in cls.__dataclass_fields__})


@dataclass(frozen=True)
class CashFlowStatement:
    net_income: float
    depreciation_addback: float
    inventory_change: float      # end minus begin (a decrease releases cash)
    provisions_change: float
    receivables_change: float
    payables_change: float
    loans: float
    investing: float
    dividends: float
    net_cash_change: float
    cash_begin: float
    cash_end: float

    def to_dict(self) -> dict[str, float]:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CashFlowStatement":
        return cls(**{k: float(data[k]) for k in cls.__dataclass_fields__})


@dataclass(frozen=True)
class Statements:
    income: IncomeStatement
    balance: BalanceSheet
    cash_flow: CashFlowStatement

    def to_dict(self) -> dict[str, Any]:
        return {"income": self.income.to_dict(), "balance": self.balance.to_dict(),
                "cash_flow": self.cash_flow.to_dict()}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Statements":
        return cls(income=IncomeStatement.from_dict(data["income"]),
                   balance=BalanceSheet.from_dict(data["balance"]),
                   cash_flow=CashFlowStatement.from_dict(data["cash_flow"]))


def build_statements(prev: CompanyState, next_state: CompanyState,
                     flows: EconomicFlows, params: SimParams) -> Statements:
    """Assemble the month's three statements and enforce the identities."""
    income = IncomeStatement(
        revenue=flows.revenue,
        materials_expense=flows.materials_expense,
        staff_costs=flows.staff_costs,
        depreciation=flows.depreciation,
        other_opex=flows.other_opex,
        total_costs=flows.materials_expense + flows.staff_costs
        + flows.depreciation + flows.other_opex,
        operating_income=flows.operating_income,
        interest=flows.interest,
        profit_before_tax=flows.profit_before_tax,
        tax=flows.tax,
        net_income=flows.net_income,
    )

    inventory_value = next_state.inventory_units * params.wholesale_price
    total_current = next_state.cash + next_state.receivables + inventory_value
    buildings_net_accum = next_state.accumulated_depr_buildings
    equipment_net_accum = next_state.accumulated_depr_equipment
    total_noncurrent = (params.buildings_value - buildings_net_accum
                        + params.equipment_value - equipment_net_accum
                        + params.intangibles)
    total_assets = total_current + total_noncurrent
    total_liabilities = params.accounts_payable + next_state.long_term_debt \
        + next_state.provisions
    total_equity = params.paid_in_capital + next_state.retained_earnings

    balance = BalanceSheet(
        cash=next_state.cash,
        receivables=next_state.receivables,
        inventory_value=inventory_value,
        total_current_assets=total_current,
        buildings_gross=params.buildings_value,
        buildings_accum_depr=buildings_net_accum,
        equipment_gross=params.equipment_value,
        equipment_accum_depr=equipment_net_accum,
        intangibles=params.intangibles,
        total_noncurrent_assets=total_noncurrent,
        total_assets=total_assets,
        accounts_payable=params.accounts_payable,
        long_term_debt=next_state.long_term_debt,
        provisions=next_state.provisions,
        total_liabilities=total_liabilities,
        paid_in_capital=params.paid_in_capital,
        retained_earnings=next_state.retained_earnings,
        total_equity=total_equity,
        total_liabilities_and_equity=total_liabilities + total_equity,
    )

    prev_inventory_value = prev.inventory_units * params.wholesale_price
    cash_flow = CashFlowStatement(
        net_income=flows.net_income,
        depreciation_addback=flows.depreciation,
        inventory_change=inventory_value - prev_inventory_value,
        provisions_change=flows.pension_accrual,
        receivables_change=next_state.receivables - prev.receivables,
        payables_change=0.0,
        loans=flows.loan_inflow,
        investing=0.0,
        dividends=flows.dividends,
        net_cash_change=next_state.cash - prev.cash,
        cash_begin=prev.cash,
        cash_end=next_state.cash,
    )

    statements = Statements(income=income, balance=balance, cash_flow=cash_flow)
    violations = check_identities(statements, prev_retained=prev.retained_earnings,
                                  inventory_units=next_state.inventory_units,
                                  params=params)
    if violations:
        raise AccountingError("; ".join(violations))
    return statements


def check_identities(statements: Statements, prev_retained: Optional[float] = None,
                     inventory_units: Optional[int] = None,
                     params: Optional[SimParams] = None,
                     tolerance: float = IDENTITY_TOLERANCE) -> list[str]:
    """Return the list of identity violations (empty when the report is sound)."""
    violations: list[str] = []
    bal, cf, inc = statements.balance, statements.cash_flow, statements.income

    gap = bal.total_assets - bal.total_liabilities_and_equity
    if abs(gap) > tolerance:
        violations.append(f"balance identity broken by {gap:.2f}")

    indirect = (cf.net_income + cf.depreciation_addback - cf.inventory_change
                + cf.provisions_change - cf.receivables_change + cf.payables_change
                + cf.loans - cf.investing - cf.dividends)
    gap = cf.net_cash_change - indirect
    if abs(gap) > tolerance:
        violations.append(f"cash-flow indirect identity broken by {gap:.2f}")
    gap = cf.cash_end - (cf.cash_begin + cf.net_cash_change)
    if abs(gap) > tolerance:
        violations.append(f"cash tie-out broken by {gap:.2f}")
    gap = bal.cash - cf.cash_end
    if abs(gap) > tolerance:
        violations.append(f"balance cash differs from cash-flow end by {gap:.2f}")

    if prev_retained is not None:
        gap = bal.retained_earnings - (prev_retained + inc.net_income - cf.dividends)
        if abs(gap) > tolerance:
            violations.append(f"retained-earnings roll-forward broken by {gap:.2f}")

    if inventory_units is not None and params is not None:
        gap = bal.inventory_value - inventory_units * params.wholesale_price
        if abs(gap) > tolerance:
            violations.append(f"inventory valuation broken by {gap:.2f}")

    return violations


def _row(label: str, value: float, width: int = 44) -> str:
    return f"{label:<{width}}{value:>18,.2f}"


def render_statements_text(statements: Statements, month_name: str) -> str:
    """Aligned plain-text statements in the reference-year report layout."""
    inc, bal, cf = statements.income, statements.balance, statements.cash_flow
    lines = [
        f"INCOME STATEMENT ({month_name})",
        _row("REVENUE", inc.revenue),
        _row("Materials expense", inc.materials_expense),
        _row("Staff costs", inc.staff_costs),
        _row("Depreciation expense", inc.depreciation),
        _row("Other operating expenses", inc.other_opex),
        _row("TOTAL COSTS AND EXPENSES", inc.total_costs),
        _row("OPERATING INCOME", inc.operating_income),
        _row("Interest expense", inc.interest),
        _row("PROFIT BEFORE TAX", inc.profit_before_tax),
        _row("Income tax expense", inc.tax),
        _row("NET INCOME", inc.net_income),
        "",
        f"BALANCE SHEET ({month_name})",
        _row("Cash (overdraft if negative)", bal.cash),
        _row("Accounts receivable", bal.receivables),
        _row("Inventory", bal.inventory_value),
        _row("Total current assets", bal.total_current_assets),
        _row("Buildings", bal.buildings_gross),
        _row("Accumulated depreciation (buildings)", bal.buildings_accum_depr),
        _row("Equipment", bal.equipment_gross),
        _row("Accumulated depreciation (equipment)", bal.equipment_accum_depr),
        _row("Intangible assets", bal.intangibles),
        _row("Total non-current assets", bal.total_noncurrent_assets),
        _row("TOTAL ASSETS", bal.total_assets),
        _row("Accounts payable", bal.accounts_payable),
        _row("Long-term debt", bal.long_term_debt),
        _row("Provisions", bal.provisions),
        _row("Paid-in capital", bal.paid_in_capital),
        _row("Retained earnings", bal.retained_earnings),
        _row("Total equity", bal.total_equity),
        _row("TOTAL EQUITY AND LIABILITIES", bal.total_liabilities_and_equity),
        "",
        f"STATEMENT OF CASH FLOW ({month_name})",
        _row("Net income", cf.net_income),
        _row("Depreciation and amortization", cf.depreciation_addback),
        _row("Changes in inventory", cf.inventory_change),
        _row("Changes in provisions", cf.provisions_change),
        _row("Changes in receivables", cf.receivables_change),
        _row("Changes in accounts payable", cf.payables_change),
        _row("Loans", cf.loans),
        _row("Net cash used for investing activities", cf.investing),
        _row("Dividends", cf.dividends),
        _row("Net increase (decrease) in cash and cash equivalents", cf.net_cash_change, 52),
        _row("Cash and cash equivalents at beginning of period", cf.cash_begin, 52),
        _row("Cash and cash equivalents at end of period", cf.cash_end, 52),
    ]
    return "\n".join(lines)
