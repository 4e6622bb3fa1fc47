"""Performance indicators: financial ratios, shareholder value, forecast errors,
workforce, environmental and logistics metrics.

Percentages that cannot be computed (zero denominators) are ``None`` — an
explicit undefined marker that serializes as null and never silently becomes 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional, Sequence

from .engine import CompanyState, EconomicFlows
from .params import SimParams, round2
from .statements import Statements


@dataclass(frozen=True)
class KpiBlock:
    """One month's indicator block, mirroring the reference-year KPI rows."""

    roi_pct: Optional[float]
    roa_pct: Optional[float]
    leverage_pct: Optional[float]
    gross_margin: Optional[float]          # fraction of revenue, pre-depreciation/interest
    net_profit_margin_pct: Optional[float]
    share_price: float
    market_cap: float
    sales_forecast_error_pct: float
    profit_forecast_error_pct: float
    market_share_pct: Optional[float]
    hiring: int
    redundancy: int
    hiring_dismissal_cost: float
    worker_wages: float
    sa_wages: float
    training_expense: float
    productivity_hourly: float
    capacity_utilization_pct: Optional[float]
    carbon_tons: float
    avg_inventory_units: float
    env_index: float
    storage_material_cost: float
    freight_cost: float
    fill_rate_pct: Optional[float]
    total_staff: float
    gdp_pct: float

    def to_dict(self) -> dict[str, Any]:
        """Percentages serialize with two decimals; None markers stay None."""
        doc = {}
        for name in self.__dataclass_fields__:
            value = getattr(self, name)
            if value is not None and name.endswith("_pct"):
                value = round2(value)
            doc[name] = value
        return doc

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "KpiBlock":
        kwargs = {}
        for name in cls.__dataclass_fields__:
            value = data[name]
            kwargs[name] = value if value is None else (
                int(value) if name in ("hiring", "redundancy") else float(value))
        return cls(**kwargs)


def net_profit_margin(net_income: float, revenue: float) -> Optional[float]:
    """Profit as a percentage of sales; None when there were no sales."""
    if revenue == 0:
        return None
    return 100.0 * net_income / revenue


def financial_ratios(statements: Statements,
                     prev_equity: Optional[float] = None,
                     prev_assets: Optional[float] = None,
                     ) -> tuple[Optional[float], Optional[float], Optional[float], Optional[float]]:
    """(roi, roa, leverage, gross_margin).

    ROI and ROA divide net income by the period-average equity/assets when the
    opening values are supplied (the reference-year KPI rows are computed that
    way); leverage divides end liabilities by the same average equity. Gross
    margin is the pre-depreciation, pre-interest margin as a fraction of
    revenue. Zero denominators yield None.
    """
    inc, bal = statements.income, statements.balance
    equity_base = bal.total_equity if prev_equity is None else (prev_equity + bal.total_equity) / 2.0
    assets_base = bal.total_assets if prev_assets is None else (prev_assets + bal.total_assets) / 2.0

    roi = 100.0 * inc.net_income / equity_base if equity_base else None
    roa = 100.0 * inc.net_income / assets_base if assets_base else None
    leverage = 100.0 * bal.total_liabilities / equity_base if equity_base else None
    if inc.revenue:
        gross_margin = (inc.revenue - inc.materials_expense - inc.staff_costs
                        - inc.other_opex) / inc.revenue
    else:
        gross_margin = None
    return roi, roa, leverage, gross_margin


def carbon_footprint(units_sold: int, params: SimParams) -> float:
    """Monthly CO2 tons: per-unit emissions on sales plus the fixed base load."""
    return params.co2_per_unit * units_sold + params.co2_fixed


def forecast_error(forecast: Optional[float], actual: float) -> float:
    """Percent miss of a forecast; a missing forecast counts as a full miss."""
    if forecast is None:
        return 100.0
    if actual == 0:
        return 0.0 if forecast == 0 else 100.0
    return 100.0 * abs(forecast - actual) / abs(actual)


def share_price(statements: Statements, roi_pct: Optional[float], env_index: float,
                gdp_pct: float, revenue_growth: float,
                params: SimParams) -> tuple[float, float]:
    """Composite share price from book value and performance multipliers.

    price = max(1, BVPS x (1 + w1*roi/100) x (1 + w2*(env-100)/100)
                x (1 + w3*gdp/100) x (1 + w4*growth)); market cap follows from
    the share count. The drivers are qualitative in the source material; this
    composite is the documented stand-in.
    """
    bvps = statements.balance.total_equity / params.shares_outstanding
    growth = min(1.0, max(-1.0, revenue_growth))
    price = bvps \
        * (1.0 + params.share_w_roi * (roi_pct or 0.0) / 100.0) \
        * (1.0 + params.share_w_env * (env_index - 100.0) / 100.0) \
        * (1.0 + params.share_w_gdp * gdp_pct / 100.0) \
        * (1.0 + params.share_w_growth * growth)
    price = max(1.0, price)
    return price, price * params.shares_outstanding


def env_index_update(index: float, carbon_tons: float, params: SimParams) -> float:
    """Reputation index drift: improves below the reference footprint, decays
    (more slowly) above it."""
    return index + params.env_index_shift(carbon_tons)


def capacity_utilization(units_sold: int, workers: float, productivity: float,
                         params: SimParams) -> Optional[float]:
    """Published utilization: sales over person-hour capacity, absenteeism excluded."""
    capacity = workers * params.hours_per_worker * productivity
    if capacity <= 0:
        return None
    return 100.0 * units_sold / capacity


def build_kpi_block(flows: EconomicFlows, statements: Statements,
                    state_end: CompanyState, params: SimParams,
                    prev_equity: float, prev_assets: float,
                    forecasts_prev: Optional[tuple[float, float]],
                    market_share_value: Optional[float], gdp_pct: float,
                    hired: int, dismissed: int, prev_revenue: float,
                    orders_placed: int) -> KpiBlock:
    """Assemble the full monthly KPI block from the month's artifacts."""
    roi, roa, leverage, gross = financial_ratios(statements, prev_equity, prev_assets)
    carbon = carbon_footprint(flows.units_sold, params)
    sales_fc = forecasts_prev[0] if forecasts_prev else None
    profit_fc = forecasts_prev[1] if forecasts_prev else None
    growth = (flows.revenue - prev_revenue) / prev_revenue if prev_revenue > 0 else 0.0
    price, cap = share_price(statements, roi, state_end.env_index, gdp_pct, growth, params)
    fill = (100.0 * flows.units_sold / flows.units_demanded
            if flows.units_demanded > 0 else None)
    return KpiBlock(
        roi_pct=roi,
        roa_pct=roa,
        leverage_pct=leverage,
        gross_margin=gross,
        net_profit_margin_pct=net_profit_margin(flows.net_income, flows.revenue),
        share_price=price,
        market_cap=cap,
        sales_forecast_error_pct=forecast_error(sales_fc, flows.revenue),
        profit_forecast_error_pct=forecast_error(profit_fc, flows.net_income),
        market_share_pct=None if market_share_value is None else 100.0 * market_share_value,
        hiring=hired,
        redundancy=dismissed,
        hiring_dismissal_cost=flows.hiring_dismissal_cost,
        worker_wages=flows.worker_wages,
        sa_wages=flows.sa_wages,
        training_expense=flows.training_expense,
        productivity_hourly=state_end.productivity,
        capacity_utilization_pct=capacity_utilization(
            flows.units_sold, state_end.workers, state_end.productivity, params),
        carbon_tons=carbon,
        avg_inventory_units=flows.avg_inventory_units,
        env_index=state_end.env_index,
        storage_material_cost=flows.storage_cost + round2(
            flows.units_sold * params.maintenance_per_unit),
        freight_cost=flows.freight_cost + (params.order_setup_cost if orders_placed else 0.0),
        fill_rate_pct=fill,
        total_staff=state_end.workers,
        gdp_pct=gdp_pct,
    )


def logistics_metrics(flows_seq: Sequence[EconomicFlows],
                      params: SimParams) -> dict[str, Optional[float]]:
    """Session-level logistics summary in the benchmark-table layout."""
    demanded = sum(f.units_demanded for f in flows_seq)
    sold = sum(f.units_sold for f in flows_seq)
    orders = sum(1 for f in flows_seq if f.units_ordered > 0)
    ordered_units = sum(f.units_ordered for f in flows_seq)
    present = 1.0 - params.absenteeism
    worker_hours = (sum(f.worker_wages / params.monthly_wage * params.hours_per_worker
                        * present for f in flows_seq)
                    if params.monthly_wage > 0 else 0.0)
    avg_inventory = (sum(f.avg_inventory_units for f in flows_seq) / len(flows_seq)
                     if flows_seq else 0.0)
    storage_material = sum(f.storage_cost for f in flows_seq) \
        + sum(round2(f.units_sold * params.maintenance_per_unit) for f in flows_seq)
    utilization_base = (sum(f.capacity_units / present for f in flows_seq)
                        if present > 0 else 0.0)
    return {
        "fill_rate_pct": 100.0 * sold / demanded if demanded > 0 else None,
        "freight_cost": orders * params.order_setup_cost + ordered_units * params.freight_var_cost,
        "storage_material_cost": storage_material,
        "avg_inventory_units": avg_inventory,
        "capacity_utilization_pct": 100.0 * sold / utilization_base if utilization_base > 0 else None,
        "productivity_hourly": sold / worker_hours if worker_hours > 0 else None,
    }
