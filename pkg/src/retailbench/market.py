"""Industry demand, its split between the two retailers, and the scripted rival.

Demand is a seasonal monthly baseline scaled by a GDP multiplier and a
log-marketing lift, split between Retailer One and Retailer Two by a logit on
price, marketing and environmental reputation. The competitor is a units-only
foil: it follows a fixed decision script and carries stock and a pipeline, but
no financial statements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from .engine import DecisionVector
from .params import SimParams, round_half_up

MONTHS = ("January", "February", "March", "April", "May", "June", "July",
          "August", "September", "October", "November", "December")


class MarketError(ValueError):
    """Bad calendar/script input (e.g. month outside 1..12)."""


@dataclass(frozen=True)
class MarketCalendar:
    """Twelve-month demand calendar: baseline units, GDP path, optional bulk event."""

    base_units: tuple[int, ...]                  # industry baseline at reference conditions
    gdp_path: tuple[float, ...]                  # percent per month
    seasonality_notes: dict[int, str] = field(default_factory=dict)
    bulk_event: Optional[tuple[int, int]] = None  # (month, industry units), additive one-off

    def __post_init__(self) -> None:
        if len(self.base_units) != 12 or len(self.gdp_path) != 12:
            raise MarketError("calendar needs 12 base_units and 12 gdp_path entries")
        if any(b <= 0 for b in self.base_units):
            raise MarketError("base_units must be positive")
        if self.bulk_event is not None and not 1 <= self.bulk_event[0] <= 12:
            raise MarketError("bulk_event month out of range")

    def to_dict(self) -> dict[str, Any]:
        return {
            "base_units": list(self.base_units),
            "gdp_path": list(self.gdp_path),
            "seasonality_notes": {str(k): v for k, v in self.seasonality_notes.items()},
            "bulk_event": list(self.bulk_event) if self.bulk_event else None,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "MarketCalendar":
        return cls(
            base_units=tuple(int(x) for x in data["base_units"]),
            gdp_path=tuple(float(x) for x in data["gdp_path"]),
            seasonality_notes={int(k): v for k, v in data.get("seasonality_notes", {}).items()},
            bulk_event=tuple(data["bulk_event"]) if data.get("bulk_event") else None,
        )


@dataclass(frozen=True)
class MarketOutcome:
    """Realized market for one month."""

    industry_demand: int
    own_demand: int
    comp_demand: int
    own_sold: int
    comp_sold: int
    own_unmet: int
    market_share: float   # own_sold / (own_sold + comp_sold); 0 when both are 0

    def to_dict(self) -> dict[str, Any]:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "MarketOutcome":
        return cls(**{k: data[k] for k in cls.__dataclass_fields__})


def industry_demand(month: int, gdp_pct: float, total_marketing: float,
                    cal: MarketCalendar, params: SimParams) -> int:
    """Whole-unit industry demand for the month (floored at zero)."""
    if not 1 <= month <= 12:
        raise MarketError(f"month {month} out of range 1..12")
    gdp_mult = 1.0 + params.gdp_sensitivity * (gdp_pct - params.gdp_reference) / 100.0
    mkt_mult = 1.0 + params.marketing_lift * math.log1p(max(0.0, total_marketing) / params.marketing_scale)
    demand = round_half_up(cal.base_units[month - 1] * gdp_mult * mkt_mult)
    if cal.bulk_event and cal.bulk_event[0] == month:
        demand += cal.bulk_event[1]
    return max(0, demand)


def split_demand(industry: float, own_price: float, comp_price: float,
                 own_mkt: float, comp_mkt: float, own_env: float, comp_env: float,
                 params: SimParams) -> tuple[float, float]:
    """Logit split of industry demand between the two retailers (exact, unrounded)."""
    if own_price <= 0 or comp_price <= 0:
        raise MarketError("prices must be positive")

    def weight(price: float, mkt: float, env: float) -> float:
        return math.exp(-params.price_sensitivity * price
                        + params.marketing_pull * math.log1p(max(0.0, mkt) / params.marketing_scale)
                        + params.env_pull * (env - 100.0) / 100.0)

    w_own = weight(own_price, own_mkt, own_env)
    w_comp = weight(comp_price, comp_mkt, comp_env)
    share = w_own / (w_own + w_comp)
    return industry * share, industry * (1.0 - share)


def realize_sales(demand: int, inventory: int, capacity: float) -> tuple[int, int]:
    """Units sold = min(demand, stock, person-hour capacity); unmet demand is lost."""
    if demand < 0 or inventory < 0 or capacity < 0:
        raise MarketError("realize_sales arguments must be non-negative")
    sold = min(int(demand), int(inventory), math.floor(capacity))
    return sold, int(demand) - sold


@dataclass(frozen=True)
class CompetitorScript:
    """Twelve scripted monthly decision vectors for Retailer Two."""

    rows: tuple[DecisionVector, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != 12:
            raise MarketError("competitor script needs 12 rows")

    def to_dict(self) -> dict[str, Any]:
        return {"rows": [row.to_dict() for row in self.rows]}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CompetitorScript":
        return cls(rows=tuple(DecisionVector.from_dict(r) for r in data["rows"]))


def competitor_policy(month: int, script: CompetitorScript) -> DecisionVector:
    """The scripted competitor decision for a month (1..12)."""
    if not 1 <= month <= 12:
        raise MarketError(f"month {month} out of range 1..12")
    return script.rows[month - 1]


def default_competitor_script() -> CompetitorScript:
    """Retailer Two re-runs its reference-year pattern: price 110, steady orders."""
    orders = [4000] * 6 + [3000] * 6
    return CompetitorScript(rows=tuple(
        DecisionVector(order_units=orders[m], price=110.0) for m in range(12)
    ))


@dataclass
class CompetitorSim:
    """Units-only state for Retailer Two: stock, pipeline and reputation."""

    inventory_units: int
    pipeline: tuple[tuple[int, int], ...] = ()
    env_index: float = 100.0

    @classmethod
    def fresh(cls, params: SimParams) -> "CompetitorSim":
        return cls(inventory_units=params.initial_inventory_units, pipeline=(),
                   env_index=params.initial_env_index)

    def step(self, month: int, demand: int, decision: DecisionVector,
             params: SimParams) -> int:
        """Receive pipeline stock, sell into demand, place the scripted order."""
        received = sum(units for arrival, units in self.pipeline if arrival == month)
        self.pipeline = tuple(e for e in self.pipeline if e[0] != month)
        available = self.inventory_units + received
        sold = min(int(demand), available)
        self.inventory_units = available - sold
        ordered = int(max(0, decision.order_units))
        if ordered > 0:
            self.pipeline = self.pipeline + ((month + params.lead_time, ordered),)
        carbon = params.co2_per_unit * sold + params.co2_fixed
        self.env_index += params.env_index_shift(carbon)
        return sold

    def to_dict(self) -> dict[str, Any]:
        return {"inventory_units": self.inventory_units,
                "pipeline": [list(e) for e in self.pipeline],
                "env_index": self.env_index}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CompetitorSim":
        return cls(inventory_units=int(data["inventory_units"]),
                   pipeline=tuple((int(a), int(u)) for a, u in data["pipeline"]),
                   env_index=float(data["env_index"]))


def resolve_market(month: int, cal: MarketCalendar, own_price: float, own_mkt: float,
                   own_env: float, comp: CompetitorSim, comp_decision: DecisionVector,
                   params: SimParams) -> tuple[int, int, DecisionVector]:
    """Compute the month's demand split; returns (own_demand, comp_demand) in units.

    Also returns the competitor decision so callers can log it. The competitor's
    sale happens in :meth:`CompetitorSim.step` after the caller realizes its own.
    """
    comp_price = comp_decision.price if comp_decision.price > 0 else 0.01
    total_mkt = max(0.0, own_mkt) + max(0.0, comp_decision.marketing_expense)
    gdp = cal.gdp_path[month - 1]
    industry = industry_demand(month, gdp, total_mkt, cal, params)
    own_raw, _ = split_demand(industry, own_price, comp_price, own_mkt,
                              comp_decision.marketing_expense, own_env,
                              comp.env_index, params)
    own_units = round_half_up(own_raw)
    comp_units = industry - own_units
    return own_units, comp_units, comp_decision


def calibrate_base_units(unit_series: Sequence[int], gdp_path: Sequence[float],
                         params: SimParams,
                         bulk_event: Optional[tuple[int, int]] = None) -> list[int]:
    """Invert the demand multipliers to recover the industry baseline.

    ``unit_series`` is one retailer's monthly unit sales under symmetric
    conditions (equal prices, zero marketing, equal reputation), so industry
    demand is twice the series, minus the bulk one-off where it applies.
    """
    base = []
    for m in range(12):
        gdp_mult = 1.0 + params.gdp_sensitivity * (gdp_path[m] - params.gdp_reference) / 100.0
        industry = 2 * unit_series[m]
        if bulk_event and bulk_event[0] == m + 1:
            industry -= bulk_event[1]
        if gdp_mult <= 0:
            raise MarketError(f"GDP multiplier non-positive in month {m + 1}")
        base.append(round_half_up(industry / gdp_mult))
    return base


def calibration_residuals(base_units: Sequence[int], unit_series: Sequence[int],
                          gdp_path: Sequence[float], params: SimParams,
                          bulk_event: Optional[tuple[int, int]] = None) -> list[float]:
    """Relative residual per month of a replayed symmetric year vs the target series."""
    cal = MarketCalendar(base_units=tuple(base_units), gdp_path=tuple(gdp_path),
                         bulk_event=bulk_event)
    residuals = []
    for m in range(1, 13):
        industry = industry_demand(m, gdp_path[m - 1], 0.0, cal, params)
        own = round_half_up(industry * 0.5)
        target = unit_series[m - 1]
        residuals.append(abs(own - target) / target if target else float(own != target))
    return residuals
