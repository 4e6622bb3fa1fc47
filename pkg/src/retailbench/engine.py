"""Company state and the authoritative month-step.

The engine is purely functional: ``step_month`` maps (state, validated
decisions, market outcome) to (next state, economic flows) with no hidden
randomness, so identical inputs give bit-identical outputs and sessions can
run in parallel without any shared mutable state.

Monetary flows are rounded to cents as they are computed; every downstream
accounting identity is linear in those same cent-rounded quantities, which is
what lets the statement builder tie out exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Optional

from .params import SimParams, round2


class DecisionError(ValueError):
    """Malformed decision input (non-finite values). Carries the bad fields."""

    def __init__(self, bad_fields: list[str]):
        super().__init__(f"non-finite decision fields: {', '.join(bad_fields)}")
        self.bad_fields = bad_fields


@dataclass(frozen=True)
class DecisionVector:
    """The ten monthly decisions an agent (or human player) submits."""

    order_units: float = 0.0
    price: float = 0.0
    workers_hired: float = 0.0
    workers_dismissed: float = 0.0
    marketing_expense: float = 0.0
    loans: float = 0.0
    training_expense: float = 0.0
    rnd_expense: float = 0.0
    sales_forecast_next: float = 0.0
    net_income_forecast: float = 0.0
    dividend_rate: float = 0.0

    FIELD_ORDER = (
        "order_units", "price", "workers_hired", "workers_dismissed",
        "marketing_expense", "loans", "training_expense", "rnd_expense",
        "sales_forecast_next", "net_income_forecast",
    )

    def to_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in self.FIELD_ORDER + ("dividend_rate",)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "DecisionVector":
        known = set(cls.FIELD_ORDER) | {"dividend_rate"}
        return cls(**{k: float(v) for k, v in data.items() if k in known})


@dataclass(frozen=True)
class ValidatedDecisions:
    """A decision vector after clamping, plus machine-readable adjustment notes."""

    decisions: DecisionVector
    notes: tuple[str, ...] = ()

    def __getattr__(self, name: str):
        return getattr(self.decisions, name)


@dataclass(frozen=True)
class CompanyState:
    """Retailer One at a month boundary. month_index is the next month to play."""

    month_index: int = 1
    inventory_units: int = 5000
    pipeline: tuple[tuple[int, int], ...] = ()   # (arrival_month, units)
    cash: float = 1_001_000.0
    receivables: float = 0.0
    long_term_debt: float = 100_000.0
    provisions: float = 1000.0
    accumulated_depr_buildings: float = 0.0
    accumulated_depr_equipment: float = 0.0
    retained_earnings: float = 0.0
    workers: float = 10.0
    productivity: float = 10.0
    env_index: float = 100.0
    last_price: float = 110.0
    last_revenue: float = 520_520.0
    forecasts_pending: Optional[tuple[float, float]] = None  # (sales, net income)

    def check(self, params: SimParams) -> None:
        if self.inventory_units < 0:
            raise ValueError("inventory must be non-negative")
        if self.productivity > params.max_productivity + 1e-9:
            raise ValueError("productivity exceeds the hard cap")
        if any(arrival <= self.month_index - 1 for arrival, _ in self.pipeline):
            raise ValueError("pipeline arrivals must be in the future")

    def to_dict(self) -> dict[str, Any]:
        d = {
            "month_index": self.month_index,
            "inventory_units": self.inventory_units,
            "pipeline": [list(entry) for entry in self.pipeline],
            "cash": self.cash,
            "receivables": self.receivables,
            "long_term_debt": self.long_term_debt,
            "provisions": self.provisions,
            "accumulated_depr_buildings": self.accumulated_depr_buildings,
            "accumulated_depr_equipment": self.accumulated_depr_equipment,
            "retained_earnings": self.retained_earnings,
            "workers": self.workers,
            "productivity": self.productivity,
            "env_index": self.env_index,
            "last_price": self.last_price,
            "last_revenue": self.last_revenue,
            "forecasts_pending": list(self.forecasts_pending) if self.forecasts_pending else None,
        }
        return d

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CompanyState":
        return cls(
            month_index=int(data["month_index"]),
            inventory_units=int(data["inventory_units"]),
            pipeline=tuple((int(a), int(u)) for a, u in data["pipeline"]),
            cash=float(data["cash"]),
            receivables=float(data["receivables"]),
            long_term_debt=float(data["long_term_debt"]),
            provisions=float(data["provisions"]),
            accumulated_depr_buildings=float(data["accumulated_depr_buildings"]),
            accumulated_depr_equipment=float(data["accumulated_depr_equipment"]),
            retained_earnings=float(data["retained_earnings"]),
            workers=float(data["workers"]),
            productivity=float(data["productivity"]),
            env_index=float(data["env_index"]),
            last_price=float(data["last_price"]),
            last_revenue=float(data["last_revenue"]),
            forecasts_pending=(tuple(data["forecasts_pending"])
                               if data.get("forecasts_pending") else None),
        )


def initial_state(params: SimParams) -> CompanyState:
    """Fresh company at the start of a simulated year."""
    return CompanyState(
        month_index=1,
        inventory_units=params.initial_inventory_units,
        pipeline=(),
        cash=params.initial_cash,
        receivables=0.0,
        long_term_debt=params.initial_long_term_debt,
        provisions=params.initial_provisions,
        accumulated_depr_buildings=0.0,
        accumulated_depr_equipment=0.0,
        retained_earnings=0.0,
        workers=params.initial_workers,
        productivity=params.initial_productivity,
        env_index=params.initial_env_index,
        last_price=110.0,
        last_revenue=520_520.0,
        forecasts_pending=None,
    )


@dataclass(frozen=True)
class EconomicFlows:
    """Raw economic flows of one simulated month (all currency in cents-rounded floats)."""

    units_received: int = 0
    units_demanded: int = 0
    units_sold: int = 0
    units_unmet: int = 0
    units_ordered: int = 0
    revenue: float = 0.0
    materials_expense: float = 0.0
    staff_costs: float = 0.0
    hiring_dismissal_cost: float = 0.0
    worker_wages: float = 0.0
    sa_wages: float = 0.0
    depreciation: float = 0.0
    other_opex: float = 0.0
    freight_cost: float = 0.0        # variable freight on units ordered (inside other_opex)
    storage_cost: float = 0.0        # reporting metric; warehousing cash sits in fixed overhead
    stockout_cost: float = 0.0
    pension_accrual: float = 0.0
    marketing_expense: float = 0.0
    training_expense: float = 0.0
    rnd_expense: float = 0.0
    interest: float = 0.0
    tax: float = 0.0
    dividends: float = 0.0
    loan_inflow: float = 0.0
    operating_income: float = 0.0
    profit_before_tax: float = 0.0
    net_income: float = 0.0
    avg_inventory_units: float = 0.0
    capacity_units: float = 0.0      # workforce capacity after absenteeism

    def to_dict(self) -> dict[str, Any]:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "EconomicFlows":
        return cls(**{k: data[k] for k in cls.__dataclass_fields__ if k in data})


_QUANTITY_FIELDS = (
    "order_units", "workers_hired", "workers_dismissed",
    "marketing_expense", "loans", "training_expense", "rnd_expense",
)


def validate_decisions(decisions: DecisionVector, state: CompanyState,
                       params: SimParams) -> ValidatedDecisions:
    """Clamp a raw decision vector into a feasible one, recording every adjustment.

    Raises :class:`DecisionError` on non-finite input (malformed agent output
    should be caught upstream by the parser; reaching here is a contract bug).
    """
    bad = [name for name in decisions.to_dict()
           if not math.isfinite(float(getattr(decisions, name)))]
    if bad:
        raise DecisionError(bad)

    d = decisions.to_dict()
    notes: list[str] = []

    for name in _QUANTITY_FIELDS:
        if d[name] < 0:
            notes.append(f"{name} raised from {d[name]:g} to 0")
            d[name] = 0.0

    if d["price"] <= 0:
        notes.append(f"price raised from {d['price']:g} to 0.01")
        d["price"] = 0.01

    for name in ("workers_hired", "workers_dismissed", "order_units"):
        if d[name] != int(d[name]):
            notes.append(f"{name} truncated from {d[name]:g} to {int(d[name])}")
            d[name] = float(int(d[name]))

    max_dismiss = math.floor(state.workers)
    if d["workers_dismissed"] > max_dismiss:
        notes.append(f"workers_dismissed reduced from {d['workers_dismissed']:g} "
                     f"to {max_dismiss} (current staff)")
        d["workers_dismissed"] = float(max_dismiss)

    if not 0.0 <= d["dividend_rate"] <= 1.0:
        clamped = min(1.0, max(0.0, d["dividend_rate"]))
        notes.append(f"dividend_rate clamped from {d['dividend_rate']:g} to {clamped:g}")
        d["dividend_rate"] = clamped

    # Cash reservation for the supplier order: the full order value plus the
    # setup fee must fit in current cash, else the order shrinks (possibly to 0).
    available = max(0.0, state.cash)
    requested = d["order_units"]
    if requested > 0:
        cost = requested * params.wholesale_price + params.order_setup_cost
        if cost > available:
            grantable = math.floor((available - params.order_setup_cost) / params.wholesale_price)
            granted = float(max(0, grantable))
            notes.append(f"order_units reduced from {requested:g} to {granted:g} "
                         f"(cash {state.cash:.2f} cannot cover the order)")
            d["order_units"] = granted

    return ValidatedDecisions(decisions=DecisionVector(**d), notes=tuple(notes))


def update_workforce(workers: float, hired: float, dismissed: float,
                     training: float, params: SimParams) -> float:
    """Attrition on the existing staff, then same-month hires and dismissals."""
    rate = params.attrition_eff(training)
    return max(0.0, workers * (1.0 - rate) + hired - dismissed)


def update_productivity(productivity: float, training: float, rnd: float,
                        params: SimParams) -> float:
    """Productivity drifts down 1%/month, offset by training and R&D, capped."""
    gain = (params.prod_decay
            + params.prod_training_gain * training / (training + params.prod_training_scale)
            + params.prod_rnd_gain * rnd / (rnd + params.prod_rnd_scale))
    return min(params.max_productivity, productivity * gain)


def step_month(state: CompanyState, validated: ValidatedDecisions,
               units_demanded: int, params: SimParams) -> tuple[CompanyState, EconomicFlows]:
    """Apply one month of validated decisions and realized demand.

    Order of operations: pipeline arrival, loan draw, workforce update,
    productivity update, sales realization (demand/stock/capacity bound),
    expense lines, tax, dividends, cash update, new order into the pipeline,
    forecast carry. Collapse to zero revenue is a legal trajectory; this
    function never fails on a validated input.
    """
    d = validated.decisions
    month = state.month_index

    # 1. Pipeline arrival (paid on delivery) and new order bookkeeping.
    received = sum(units for arrival, units in state.pipeline if arrival == month)
    pipeline = tuple(entry for entry in state.pipeline if entry[0] != month)
    inventory_available = state.inventory_units + received

    ordered = int(d.order_units)
    if ordered > 0:
        pipeline = pipeline + ((month + params.lead_time, ordered),)

    # 2. Loan draw (instant cash and debt; interest accrues on the drawn balance).
    loan_inflow = round2(d.loans)
    debt = state.long_term_debt + loan_inflow

    # 3-4. Workforce and productivity updates, effective this month.
    hired = int(d.workers_hired)
    dismissed = int(d.workers_dismissed)
    workers = update_workforce(state.workers, hired, dismissed, d.training_expense, params)
    productivity = update_productivity(state.productivity, d.training_expense,
                                       d.rnd_expense, params)

    # 5. Sales realization: demand, stock on hand, and person-hours all bind.
    capacity = workers * params.hours_per_worker * (1.0 - params.absenteeism) * productivity
    units_sold = min(int(units_demanded), inventory_available, math.floor(capacity))
    units_sold = max(0, units_sold)
    units_unmet = int(units_demanded) - units_sold
    inventory_end = inventory_available - units_sold
    avg_inventory = (state.inventory_units + received + inventory_end) / 2.0

    revenue = round2(d.price * units_sold)

    # 6. Expense lines.
    materials = round2(units_sold * params.wholesale_price
                       + (params.order_setup_cost if ordered > 0 else 0.0))
    worker_wages = round2(workers * params.monthly_wage)
    sa_wages = round2(worker_wages * params.sa_wage_ratio)
    hiring_dismissal = round2(hired * params.hiring_cost + dismissed * params.dismissal_cost)
    staff_costs = worker_wages + sa_wages + hiring_dismissal
    depreciation = round2(params.monthly_depreciation)
    pension = round2(worker_wages * params.pension_reserve_rate)
    freight = round2(ordered * params.freight_var_cost)
    stockout = round2(units_unmet * params.stockout_penalty)
    maintenance = round2(units_sold * params.maintenance_per_unit)
    marketing = round2(d.marketing_expense)
    training = round2(d.training_expense)
    rnd = round2(d.rnd_expense)
    other_opex = (round2(params.fixed_overhead) + maintenance + pension + freight
                  + marketing + training + rnd + stockout)

    interest = round2(debt * params.interest_rate)
    operating_income = revenue - materials - staff_costs - depreciation - other_opex
    profit_before_tax = operating_income - interest
    tax = round2(params.tax_rate * max(0.0, profit_before_tax))
    net_income = profit_before_tax - tax
    dividends = round2(d.dividend_rate * max(0.0, net_income))

    # 7. Cash: collect last month's receivables; pay everything cash-settled.
    setup_cash = round2(params.order_setup_cost) if ordered > 0 else 0.0
    goods_cash = round2(received * params.wholesale_price)
    cash_opex = other_opex - pension   # the pension accrual is non-cash
    cash = round2(state.cash) + round2(state.receivables) + loan_inflow \
        - setup_cash - goods_cash - staff_costs - cash_opex - interest - tax - dividends

    flows = EconomicFlows(
        units_received=received,
        units_demanded=int(units_demanded),
        units_sold=units_sold,
        units_unmet=units_unmet,
        units_ordered=ordered,
        revenue=revenue,
        materials_expense=materials,
        staff_costs=staff_costs,
        hiring_dismissal_cost=hiring_dismissal,
        worker_wages=worker_wages,
        sa_wages=sa_wages,
        depreciation=depreciation,
        other_opex=other_opex,
        freight_cost=freight,
        storage_cost=round2(avg_inventory * params.storage_cost_per_unit),
        stockout_cost=stockout,
        pension_accrual=pension,
        marketing_expense=marketing,
        training_expense=training,
        rnd_expense=rnd,
        interest=interest,
        tax=tax,
        dividends=dividends,
        loan_inflow=loan_inflow,
        operating_income=operating_income,
        profit_before_tax=profit_before_tax,
        net_income=net_income,
        avg_inventory_units=avg_inventory,
        capacity_units=capacity,
    )

    carbon = params.co2_per_unit * units_sold + params.co2_fixed
    env_index = state.env_index + params.env_index_shift(carbon)

    next_state = CompanyState(
        month_index=month + 1,
        inventory_units=inventory_end,
        pipeline=pipeline,
        cash=cash,
        receivables=revenue,
        long_term_debt=debt,
        provisions=round2(state.provisions) + pension,
        accumulated_depr_buildings=state.accumulated_depr_buildings
        + round2(params.buildings_value * params.buildings_depr_rate),
        accumulated_depr_equipment=state.accumulated_depr_equipment
        + round2(params.equipment_value * params.equipment_depr_rate),
        retained_earnings=round2(state.retained_earnings) + net_income - dividends,
        workers=workers,
        productivity=productivity,
        env_index=env_index,
        last_price=d.price,
        last_revenue=revenue,
        forecasts_pending=(d.sales_forecast_next, d.net_income_forecast),
    )
    return next_state, flows
