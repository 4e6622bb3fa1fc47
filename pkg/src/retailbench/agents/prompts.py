"""Prompt rendering for LLM (and human) players.

The templates live as versioned package assets; rendering only substitutes
parameter values, the reference-year block and the decision request, so the
output is byte-stable for a given scenario.
"""

from __future__ import annotations

from importlib import resources
from string import Template
from typing import Optional, Sequence

from .. import year0
from ..market import MONTHS
from ..params import SimParams
from ..report import MonthlyReport
from ..scenario import Scenario
from ..statements import render_statements_text
from .parsing import CANONICAL_LABELS


def _asset(name: str) -> str:
    return resources.files("retailbench.data").joinpath(name).read_text()


def _fmt(value: float) -> str:
    if float(value) == int(value):
        return f"{int(value):,}"
    return f"{value:,.2f}"


def decision_request(month_name: str) -> str:
    lines = [f"Please provide your decisions for {month_name} in exactly this format, "
             "one 'Field: value' pair per line, numbers only (use 0 where you decide "
             "to spend or change nothing):", ""]
    lines += [f"{label}: <number>" for label in CANONICAL_LABELS.values()]
    lines += ["Dividends %: <number, optional, default 0>"]
    return "\n".join(lines)


def _table(label_width: int, rows: Sequence[tuple[str, Sequence[float]]]) -> str:
    header = f"{'Indicator':<{label_width}}" + "".join(f"{m[:3]:>12}" for m in MONTHS)
    out = [header]
    for label, values in rows:
        cells = "".join(f"{v:>12,.2f}" for v in values)
        out.append(f"{label:<{label_width}}{cells}")
    return "\n".join(out)


def render_year0_block() -> str:
    """The previous fiscal year: statements, KPI rows and the decisions taken."""
    inc = year0.INCOME_STATEMENT
    bal = year0.BALANCE_SHEET
    cf = year0.CASH_FLOW
    kpi = year0.KPI_ROWS
    sections = [
        "INCOME STATEMENT (previous year, monthly)",
        _table(28, [
            ("REVENUE", inc["revenue"]),
            ("Materials expense", inc["materials_expense"]),
            ("Staff costs", inc["staff_costs"]),
            ("Depreciation expense", inc["depreciation"]),
            ("Other operating expenses", inc["other_opex"]),
            ("TOTAL COSTS AND EXPENSES", inc["total_costs"]),
            ("OPERATING INCOME", inc["operating_income"]),
            ("Interest expense", inc["interest"]),
            ("PROFIT BEFORE TAX", inc["profit_before_tax"]),
            ("Income tax expense", inc["tax"]),
            ("NET INCOME", inc["net_income"]),
        ]),
        "",
        "BALANCE SHEET (previous year, monthly)",
        _table(28, [
            ("Cash (overdraft if negative)", bal["cash"]),
            ("Accounts receivable", bal["receivables"]),
            ("Inventory", bal["inventory_value"]),
            ("Total assets", bal["total_assets"]),
            ("Provisions", bal["provisions"]),
            ("Retained earnings", bal["retained_earnings"]),
            ("Total equity", bal["total_equity"]),
        ]),
        "",
        "STATEMENT OF CASH FLOW (previous year, monthly)",
        _table(28, [
            ("Net income", cf["net_income"]),
            ("Changes in inventory", cf["inventory_change"]),
            ("Changes in provisions", cf["provisions_change"]),
            ("Changes in receivables", cf["receivables_change"]),
            ("Net increase in cash", cf["net_cash_change"]),
            ("Cash at end of period", cf["cash_end"]),
        ]),
        "",
        "KEY PERFORMANCE FIGURES (previous year, monthly)",
        _table(28, [
            ("ROI%", kpi["roi_pct"]),
            ("ROA%", kpi["roa_pct"]),
            ("Leverage %", kpi["leverage_pct"]),
            ("Gross profit margin", kpi["gross_margin"]),
            ("Share price", kpi["share_price"]),
            ("Market share", kpi["market_share"]),
            ("GDP growth %", year0.GDP_GROWTH),
            ("Total staff", kpi["total_staff"]),
            ("Worker wages", kpi["worker_wages"]),
            ("Productivity per hour", kpi["productivity"]),
            ("Capacity utilization %", kpi["capacity_utilization_pct"]),
            ("Carbon footprint (t CO2)", kpi["carbon_tons"]),
        ]),
        "",
        "DECISIONS MADE LAST YEAR (monthly)",
        _table(28, [
            ("Order in units", year0.ORDER_STREAM),
            ("Price $", (year0.EFFECTIVE_PRICE,) * 12),
            ("Marketing / training / R&D", (0,) * 12),
        ]),
    ]
    return "\n".join(sections)


def render_initial_prompt(params: SimParams, scenario: Optional[Scenario] = None) -> str:
    """The month-1 briefing: role, rules, parameter table, last year's report."""
    gdp_this_year = scenario.calendar.gdp_path[0] if scenario else 1.0
    template = Template(_asset("prompt_initial.txt"))
    return template.substitute(
        initial_inventory=_fmt(params.initial_inventory_units),
        gdp_last_year=_fmt(params.gdp_reference),
        gdp_this_year=_fmt(gdp_this_year),
        interest_pct=_fmt(params.interest_rate * 100),
        stockout_penalty=_fmt(params.stockout_penalty),
        lead_time=_fmt(params.lead_time),
        wholesale_price=_fmt(params.wholesale_price),
        order_setup=_fmt(params.order_setup_cost),
        freight_var=_fmt(params.freight_var_cost),
        fixed_overhead=_fmt(params.fixed_overhead),
        attrition_untrained_pct=_fmt((params.base_attrition
                                      + params.attrition_untrained_extra) * 100),
        attrition_base_pct=_fmt(params.base_attrition * 100),
        hours_per_worker=_fmt(params.hours_per_worker),
        absenteeism_pct=_fmt(params.absenteeism * 100),
        co2_per_unit=f"{params.co2_per_unit:g}",
        co2_fixed=_fmt(params.co2_fixed),
        monthly_wage=_fmt(params.monthly_wage),
        hiring_cost=_fmt(params.hiring_cost),
        dismissal_cost=_fmt(params.dismissal_cost),
        pension_pct=_fmt(params.pension_reserve_rate * 100),
        initial_price=_fmt(params.initial_price),
        buildings_depr_pct=f"{params.buildings_depr_rate * 100:g}",
        equipment_depr_pct=f"{params.equipment_depr_rate * 100:g}",
        maintenance_per_unit=f"{params.maintenance_per_unit:g}",
        tax_pct=_fmt(params.tax_rate * 100),
        dividend_default_pct=_fmt(params.dividend_default_rate * 100),
        shares_outstanding=_fmt(params.shares_outstanding),
        share_face_value=_fmt(params.share_face_value),
        initial_workers=_fmt(params.initial_workers),
        max_productivity=_fmt(params.max_productivity),
        max_capacity=_fmt(params.max_capacity),
        initial_cash=_fmt(params.initial_cash),
        initial_debt=_fmt(params.initial_long_term_debt),
        year0_block=render_year0_block(),
        decision_request=decision_request(MONTHS[0]),
    )


def _kpi_lines(report: MonthlyReport) -> str:
    k = report.kpi

    def pct(v: Optional[float]) -> str:
        return "n/a" if v is None else f"{v:.2f}"

    rows = [
        ("ROI %", pct(k.roi_pct)),
        ("ROA %", pct(k.roa_pct)),
        ("Leverage %", pct(k.leverage_pct)),
        ("Gross profit margin", pct(None if k.gross_margin is None else k.gross_margin)),
        ("Net profit margin %", pct(k.net_profit_margin_pct)),
        ("Share price", f"{k.share_price:,.2f}"),
        ("Market capitalization", f"{k.market_cap:,.2f}"),
        ("Sales forecast error % (missing target)", pct(k.sales_forecast_error_pct)),
        ("Profit forecast error % (missing target)", pct(k.profit_forecast_error_pct)),
        ("Market share %", pct(k.market_share_pct)),
        ("GDP growth %", pct(k.gdp_pct)),
        ("Hiring", str(k.hiring)),
        ("Redundancy", str(k.redundancy)),
        ("Total staff", f"{k.total_staff:.2f}"),
        ("Hiring and dismissal cost", f"{k.hiring_dismissal_cost:,.2f}"),
        ("Worker wages", f"{k.worker_wages:,.2f}"),
        ("Sales and administrative wages", f"{k.sa_wages:,.2f}"),
        ("Training expense $", f"{k.training_expense:,.2f}"),
        ("Max. productivity in hourly production per worker", f"{k.productivity_hourly:.2f}"),
        ("Capacity utilization %", pct(k.capacity_utilization_pct)),
        ("Carbon footprint metric (tons of CO2)", f"{k.carbon_tons:.2f}"),
        ("Average physical inventory", f"{k.avg_inventory_units:,.1f}"),
        ("Environmental index", f"{k.env_index:.2f}"),
        ("Inventory service level % (Fill Rate)", pct(k.fill_rate_pct)),
    ]
    width = max(len(label) for label, _ in rows) + 2
    return "\n".join(f"{label:<{width}}{value:>16}" for label, value in rows)


def render_followup_prompt(report: MonthlyReport, month: int) -> str:
    """The month m+1 request: last month's statements and KPIs plus the ask.

    ``month`` is the month being decided (2..12).
    """
    if not 2 <= month <= 12:
        raise ValueError("follow-up prompts cover months 2..12")
    notes = ""
    if report.adjustment_notes:
        notes = ("\nAdjustments applied to your last decisions: "
                 + "; ".join(report.adjustment_notes) + "\n")
    final_note = ("\nThis is the final month of the year. Make your closing decisions."
                  if month == 12 else "")
    template = Template(_asset("prompt_followup.txt"))
    return template.substitute(
        month_name=report.month_name,
        month=report.month,
        statements_block=render_statements_text(report.statements, report.month_name) + notes,
        kpi_block=_kpi_lines(report),
        final_note=final_note,
        decision_request=decision_request(MONTHS[month - 1]),
    )
