"""Economic constants for the simulated retailer.

Every tunable of the simulation lives in :class:`SimParams` so that a scenario
file can override any of them in one place.  Defaults reproduce the bundled
reference year ("year 0") of the single-product retailer: a 10-worker company
with 5,000 units of starting stock, a 2-month supplier lead time, and the cost
structure that the year-0 statements imply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from typing import Any, Mapping


class ParamError(ValueError):
    """Raised when a parameter override is unknown or violates an invariant."""


@dataclass(frozen=True)
class SimParams:
    # Supplier / product
    wholesale_price: float = 70.0        # paid per unit, on delivery
    initial_price: float = 100.0         # listed initial retail price
    order_setup_cost: float = 25000.0    # per order placed, paid at order time
    freight_var_cost: float = 2.0        # per unit ordered, booked at order time
    lead_time: int = 2                   # months from order to arrival
    maintenance_per_unit: float = 0.1    # equipment upkeep per unit sold
    stockout_penalty: float = 5.0        # per unmet unit of demand
    storage_cost_per_unit: float = 5.0   # reporting rate for the storage KPI only;
                                         # warehousing cash cost sits in fixed_overhead

    # Workforce
    monthly_wage: float = 2000.0
    sa_wage_ratio: float = 0.20          # sales & admin wages as share of worker wages
    absenteeism: float = 0.02
    base_attrition: float = 0.03         # attrition floor with unlimited training
    attrition_untrained_extra: float = 0.03  # extra attrition at zero training
    attrition_training_half: float = 5000.0  # training spend halving the extra
    hiring_cost: float = 2000.0
    dismissal_cost: float = 4000.0
    pension_reserve_rate: float = 0.05   # of worker wages, accrued to provisions
    initial_workers: float = 10.0
    hours_per_worker: float = 140.0

    # Productivity
    max_productivity: float = 10.0       # units per worker-hour, hard cap
    initial_productivity: float = 10.0
    prod_decay: float = 0.99             # monthly multiplier with no investment
    prod_training_gain: float = 0.015
    prod_rnd_gain: float = 0.005
    prod_training_scale: float = 5000.0
    prod_rnd_scale: float = 5000.0

    # Fixed assets & overhead
    buildings_value: float = 1_000_000.0
    buildings_depr_rate: float = 0.002   # monthly, straight-line on gross
    equipment_value: float = 500_000.0
    equipment_depr_rate: float = 0.01
    intangibles: float = 100_000.0
    fixed_overhead: float = 51000.0      # transport/warehousing capacity upkeep per month

    # Finance
    interest_rate: float = 0.05          # monthly, on outstanding long-term debt
    tax_rate: float = 0.20
    dividend_default_rate: float = 0.40  # exposed for scenarios; decisions default to 0
    shares_outstanding: int = 26480
    share_face_value: float = 100.0
    paid_in_capital: float = 2_848_000.0
    accounts_payable: float = 2000.0     # legacy balance, never moves
    initial_long_term_debt: float = 100_000.0
    initial_cash: float = 1_001_000.0
    initial_provisions: float = 1000.0
    initial_inventory_units: int = 5000
    receivable_lag: int = 1              # months of customer credit (only 1 supported)

    # Environment
    co2_per_unit: float = 0.01           # tons per unit sold
    co2_fixed: float = 10.0              # tons per month
    initial_env_index: float = 100.0
    env_adjust_rate: float = 0.25        # index points at full footprint gap
    env_reference_tons: float = 30.0     # neutral monthly footprint
    env_damage_fraction: float = 0.25    # reputation damage accrues slower than goodwill

    # Market response
    gdp_sensitivity: float = 2.0         # demand multiplier slope per GDP point
    gdp_reference: float = 4.0           # GDP rate at which the multiplier is 1
    marketing_lift: float = 0.05         # industry demand lift per log marketing unit
    marketing_scale: float = 10000.0
    price_sensitivity: float = 0.05      # logit split weight on price
    marketing_pull: float = 0.15         # logit split weight on log marketing
    env_pull: float = 0.10               # logit split weight on env index gap

    # Share price composite weights
    share_w_roi: float = 4.0
    share_w_env: float = 1.0
    share_w_gdp: float = 1.0
    share_w_growth: float = 0.5

    def __post_init__(self) -> None:
        currency_fields = (
            "wholesale_price", "initial_price", "order_setup_cost", "freight_var_cost",
            "maintenance_per_unit", "stockout_penalty", "storage_cost_per_unit",
            "monthly_wage", "hiring_cost", "dismissal_cost", "buildings_value",
            "equipment_value", "intangibles", "fixed_overhead", "paid_in_capital",
            "accounts_payable", "initial_long_term_debt", "initial_provisions",
        )
        rate_fields = (
            "sa_wage_ratio", "absenteeism", "base_attrition", "attrition_untrained_extra",
            "pension_reserve_rate", "buildings_depr_rate", "equipment_depr_rate",
            "interest_rate", "tax_rate", "dividend_default_rate",
        )
        for name in currency_fields:
            if getattr(self, name) < 0:
                raise ParamError(f"{name} must be >= 0")
        for name in rate_fields:
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ParamError(f"{name} must be in [0, 1], got {value}")
        if self.lead_time < 1:
            raise ParamError("lead_time must be >= 1")
        if self.receivable_lag != 1:
            raise ParamError("only a 1-month receivable lag is supported")
        if self.initial_workers < 0 or self.hours_per_worker <= 0:
            raise ParamError("workforce parameters out of range")
        if not 0 < self.initial_productivity <= self.max_productivity:
            raise ParamError("initial_productivity must be in (0, max_productivity]")

    @property
    def max_capacity(self) -> float:
        """Theoretical monthly unit capacity at full staffing and productivity."""
        return self.initial_workers * self.hours_per_worker * self.max_productivity

    @property
    def monthly_depreciation(self) -> float:
        return (self.buildings_value * self.buildings_depr_rate
                + self.equipment_value * self.equipment_depr_rate)

    def attrition_eff(self, training: float) -> float:
        """Monthly attrition rate given the month's training spend."""
        extra = self.attrition_untrained_extra / (1.0 + max(0.0, training) / self.attrition_training_half)
        return self.base_attrition + extra

    def env_index_shift(self, carbon_tons: float) -> float:
        """Monthly reputation-index shift for a given footprint, clamped to the
        adjust rate. Goodwill builds at the full rate below the reference
        footprint; damage above it accrues at env_damage_fraction of it."""
        gap = (self.env_reference_tons - carbon_tons) / self.env_reference_tons
        rate = self.env_adjust_rate * (1.0 if gap >= 0 else self.env_damage_fraction)
        return min(self.env_adjust_rate, max(-self.env_adjust_rate, rate * gap))

    def with_overrides(self, overrides: Mapping[str, Any]) -> "SimParams":
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise ParamError(f"unknown parameter overrides: {sorted(unknown)}")
        for key, value in overrides.items():
            if not isinstance(value, (int, float)) or not math.isfinite(float(value)):
                raise ParamError(f"override {key} must be a finite number")
        return replace(self, **{k: type(getattr(self, k))(v) for k, v in overrides.items()})

    def to_dict(self) -> dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def round2(x: float) -> float:
    """Round a currency amount to cents, half away from zero."""
    return math.floor(abs(x) * 100.0 + 0.5) / 100.0 * (1 if x >= 0 else -1)


def round_half_up(x: float) -> int:
    """Round to whole units, halves up (demand rounding rule)."""
    return math.floor(x + 0.5)
