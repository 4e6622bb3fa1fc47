"""Engine unit tests: decision validation, workforce/productivity updates,
and the month-step invariants."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from retailbench.engine import (CompanyState, DecisionError, DecisionVector,
                                initial_state, step_month, update_productivity,
                                update_workforce, validate_decisions)
from retailbench.params import SimParams


def brute_force_max_order(cash: float, params: SimParams) -> int:
    """Independent oracle: largest q with q*wholesale + setup <= max(0, cash)."""
    best = 0
    q = 0
    while True:
        cost = q * params.wholesale_price + (params.order_setup_cost if q else 0.0)
        if cost > max(0.0, cash):
            break
        best = q
        q += 1
    return best


class TestValidateDecisions:
    def test_order_clamped_to_cash(self, params):
        # oracle: floor((200,000 - 25,000) / 70) = 2,500
        assert brute_force_max_order(200_000, params) == 2500
        state = CompanyState.from_dict({**initial_state(params).to_dict(),
                                        "cash": 200_000.0})
        validated = validate_decisions(DecisionVector(order_units=20_000, price=100),
                                       state, params)
        assert validated.order_units == 2500
        assert any("order_units reduced" in note for note in validated.notes)

    def test_zero_decisions_unchanged(self, params):
        state = initial_state(params)
        validated = validate_decisions(DecisionVector(price=100.0), state, params)
        assert validated.notes == ()
        assert validated.decisions == DecisionVector(price=100.0)

    def test_dismissals_clamped_to_staff(self, params):
        state = CompanyState.from_dict({**initial_state(params).to_dict(),
                                        "workers": 4.76})
        validated = validate_decisions(
            DecisionVector(price=100, workers_dismissed=7), state, params)
        assert validated.workers_dismissed == 4

    def test_negative_fields_raised_to_zero(self, params):
        state = initial_state(params)
        validated = validate_decisions(
            DecisionVector(order_units=-5, price=100, marketing_expense=-1,
                           loans=-10, training_expense=-2, rnd_expense=-3),
            state, params)
        d = validated.decisions
        assert (d.order_units, d.marketing_expense, d.loans,
                d.training_expense, d.rnd_expense) == (0, 0, 0, 0, 0)
        assert len(validated.notes) == 5

    def test_degenerate_price_clamped(self, params):
        state = initial_state(params)
        validated = validate_decisions(DecisionVector(price=0.0), state, params)
        assert validated.price == 0.01
        validated = validate_decisions(DecisionVector(price=-3.0), state, params)
        assert validated.price == 0.01

    def test_non_finite_rejected_with_field_names(self, params):
        state = initial_state(params)
        with pytest.raises(DecisionError) as err:
            validate_decisions(DecisionVector(order_units=float("nan"), price=100),
                               state, params)
        assert "order_units" in err.value.bad_fields
        with pytest.raises(DecisionError):
            validate_decisions(DecisionVector(price=float("inf")), state, params)

    def test_overdraft_means_zero_order(self, params):
        state = CompanyState.from_dict({**initial_state(params).to_dict(),
                                        "cash": -5000.0})
        validated = validate_decisions(DecisionVector(order_units=100, price=100),
                                       state, params)
        assert validated.order_units == 0

    @given(requested=st.integers(min_value=0, max_value=60_000),
           bump=st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=200, deadline=None)
    def test_granted_order_monotone_in_request(self, requested, bump):
        params = SimParams()
        state = CompanyState.from_dict({**initial_state(params).to_dict(),
                                        "cash": 150_000.0})
        low = validate_decisions(DecisionVector(order_units=requested, price=100),
                                 state, params).order_units
        high = validate_decisions(DecisionVector(order_units=requested + bump, price=100),
                                  state, params).order_units
        assert high >= low


class TestWorkforce:
    def test_reference_decay_first_step(self, params):
        assert update_workforce(10, 0, 0, 0, params) == pytest.approx(9.40)

    def test_reference_decay_second_step(self, params):
        assert update_workforce(9.40, 0, 0, 0, params) == pytest.approx(8.836)

    def test_hires_and_dismissals_same_month(self, params):
        # 10 * 0.94 + 2 - 1
        assert update_workforce(10, 2, 1, 0, params) == pytest.approx(10.40)

    def test_training_lowers_attrition_toward_floor(self, params):
        assert params.attrition_eff(0) == pytest.approx(0.06)
        assert params.attrition_eff(5000) == pytest.approx(0.045)
        assert params.attrition_eff(1e12) == pytest.approx(params.base_attrition, abs=1e-6)

    def test_floored_at_zero(self, params):
        assert update_workforce(0.5, 0, 3, 0, params) == 0.0

    def test_year0_staff_sequence(self, params):
        workers = 10.0
        expected = [9.40, 8.84, 8.31, 7.81, 7.34]
        for target in expected:
            workers = update_workforce(workers, 0, 0, 0, params)
            assert workers == pytest.approx(target, abs=0.01)


class TestProductivity:
    def test_reference_decay(self, params):
        assert update_productivity(10, 0, 0, params) == pytest.approx(9.90)
        assert update_productivity(9.90, 0, 0, params) == pytest.approx(9.801)

    def test_year0_productivity_sequence(self, params):
        prod = 10.0
        for target in (9.90, 9.80, 9.70, 9.61):
            prod = update_productivity(prod, 0, 0, params)
            assert prod == pytest.approx(target, abs=0.005)

    def test_cap_binds_under_heavy_investment(self, params):
        # limit of the multiplier is 0.99 + 0.015 + 0.005 = 1.01
        assert update_productivity(9.90, 1e12, 1e12, params) <= params.max_productivity
        assert update_productivity(9.90, 1e9, 1e9, params) == pytest.approx(9.9999, abs=1e-3)
        assert update_productivity(10.0, 1e9, 1e9, params) == params.max_productivity


class TestStepMonth:
    def step(self, params, state, decision, demand):
        validated = validate_decisions(decision, state, params)
        return step_month(state, validated, demand, params)

    def test_zero_demand_month(self, params):
        state = initial_state(params)
        nxt, flows = self.step(params, state, DecisionVector(price=100.0), 0)
        assert flows.units_sold == 0 and flows.revenue == 0
        assert flows.materials_expense == 0   # no order, no setup
        assert nxt.inventory_units == state.inventory_units

    def test_zero_demand_with_order_books_setup_only(self, params):
        state = initial_state(params)
        nxt, flows = self.step(params, state,
                               DecisionVector(order_units=1000, price=100.0), 0)
        assert flows.materials_expense == params.order_setup_cost
        assert nxt.pipeline == ((1 + params.lead_time, 1000),)

    def test_inventory_conservation(self, params):
        state = initial_state(params)
        nxt, flows = self.step(params, state, DecisionVector(price=100.0), 1234)
        assert nxt.inventory_units == state.inventory_units + flows.units_received - flows.units_sold

    def test_sales_bounded_by_inventory(self, params):
        state = initial_state(params)
        nxt, flows = self.step(params, state, DecisionVector(price=100.0), 99_999)
        assert flows.units_sold == state.inventory_units
        assert flows.units_unmet == 99_999 - state.inventory_units
        assert nxt.inventory_units == 0

    def test_sales_bounded_by_capacity(self, params):
        state = CompanyState.from_dict({**initial_state(params).to_dict(),
                                        "workers": 1.0, "inventory_units": 50_000})
        nxt, flows = self.step(params, state, DecisionVector(price=100.0), 40_000)
        capacity = nxt.workers * params.hours_per_worker * (1 - params.absenteeism) \
            * nxt.productivity
        assert flows.units_sold == math.floor(capacity)

    def test_loan_draw_charges_same_month_interest(self, params):
        state = initial_state(params)
        _, flows = self.step(params, state,
                             DecisionVector(price=100.0, loans=50_000), 0)
        assert flows.loan_inflow == 50_000
        assert flows.interest == pytest.approx(
            params.interest_rate * (params.initial_long_term_debt + 50_000))

    def test_tax_only_on_positive_pbt(self, params):
        state = initial_state(params)
        _, flows = self.step(params, state, DecisionVector(price=100.0), 0)
        assert flows.profit_before_tax < 0
        assert flows.tax == 0.0

    def test_dividends_on_positive_income_only(self, params):
        state = initial_state(params)
        _, flows = self.step(params, state,
                             DecisionVector(price=110.0, dividend_rate=0.4), 4000)
        assert flows.net_income > 0
        assert flows.dividends == pytest.approx(0.4 * flows.net_income, abs=0.01)
        _, flows = self.step(params, state,
                             DecisionVector(price=110.0, dividend_rate=0.4), 0)
        assert flows.net_income < 0 and flows.dividends == 0.0

    def test_zero_decision_cost_drivers(self, params):
        """With nothing ordered or spent, costs are wages, depreciation, fixed
        overhead (plus the wage-linked pension accrual) and interest only."""
        state = initial_state(params)
        _, flows = self.step(params, state, DecisionVector(price=100.0), 0)
        wages = flows.worker_wages + flows.sa_wages
        pension = flows.pension_accrual
        expected_costs = wages + flows.depreciation + params.fixed_overhead \
            + pension + flows.interest
        total_costs = (flows.materials_expense + flows.staff_costs
                       + flows.depreciation + flows.other_opex + flows.interest)
        assert total_costs == pytest.approx(expected_costs, abs=0.01)

    def test_determinism_bit_identical(self, params):
        state = initial_state(params)
        decision = DecisionVector(order_units=3000, price=117.23,
                                  marketing_expense=12_345.67, training_expense=890,
                                  workers_hired=2, loans=10_000)
        a = self.step(params, state, decision, 3456)
        b = self.step(params, state, decision, 3456)
        assert a[0] == b[0]
        assert a[1] == b[1]

    def test_pipeline_arrives_after_lead_time(self, params):
        state = initial_state(params)
        state, flows = self.step(params, state,
                                 DecisionVector(order_units=2000, price=100.0), 0)
        assert flows.units_received == 0
        state, flows = self.step(params, state, DecisionVector(price=100.0), 0)
        assert flows.units_received == 0
        state, flows = self.step(params, state, DecisionVector(price=100.0), 0)
        assert flows.units_received == 2000

    def test_net_income_identity(self, params):
        state = initial_state(params)
        _, flows = self.step(params, state,
                             DecisionVector(order_units=1000, price=120,
                                            marketing_expense=5000), 2500)
        assert flows.net_income == pytest.approx(
            flows.operating_income - flows.interest - flows.tax, abs=1e-9)
        assert flows.units_unmet == flows.units_demanded - flows.units_sold
