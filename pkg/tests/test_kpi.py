"""KPI tests: profit margin, financial ratios against all twelve published
months, carbon affinity, forecast errors, share price composite, logistics."""

from __future__ import annotations

import pytest

from retailbench import year0
from retailbench.kpi import (carbon_footprint, env_index_update, financial_ratios,
                             forecast_error, logistics_metrics, net_profit_margin,
                             share_price)
from retailbench.params import SimParams
from retailbench.statements import (BalanceSheet, CashFlowStatement, IncomeStatement,
                                    Statements)

PARAMS = SimParams()


def published_statements(month: int) -> Statements:
    """Assemble a Statements object from the published reference-year tables."""
    i = month - 1
    inc = year0.INCOME_STATEMENT
    bal = year0.BALANCE_SHEET
    income = IncomeStatement(
        revenue=inc["revenue"][i], materials_expense=inc["materials_expense"][i],
        staff_costs=inc["staff_costs"][i], depreciation=7000.0,
        other_opex=inc["other_opex"][i], total_costs=inc["total_costs"][i],
        operating_income=inc["operating_income"][i], interest=5000.0,
        profit_before_tax=inc["profit_before_tax"][i], tax=inc["tax"][i],
        net_income=inc["net_income"][i])
    total_liab = year0.total_liabilities(month)
    balance = BalanceSheet(
        cash=bal["cash"][i], receivables=bal["receivables"][i],
        inventory_value=bal["inventory_value"][i],
        total_current_assets=bal["cash"][i] + bal["receivables"][i] + bal["inventory_value"][i],
        buildings_gross=1_000_000.0, buildings_accum_depr=bal["accumulated_depr_buildings"][i],
        equipment_gross=500_000.0, equipment_accum_depr=bal["accumulated_depr_equipment"][i],
        intangibles=100_000.0,
        total_noncurrent_assets=1_600_000.0 - 7000.0 * month,
        total_assets=bal["total_assets"][i], accounts_payable=2000.0,
        long_term_debt=100_000.0, provisions=bal["provisions"][i],
        total_liabilities=total_liab, paid_in_capital=2_848_000.0,
        retained_earnings=bal["retained_earnings"][i],
        total_equity=bal["total_equity"][i],
        total_liabilities_and_equity=bal["total_assets"][i])
    cash_flow = CashFlowStatement(
        net_income=inc["net_income"][i], depreciation_addback=7000.0,
        inventory_change=year0.CASH_FLOW["inventory_change"][i],
        provisions_change=year0.CASH_FLOW["provisions_change"][i],
        receivables_change=year0.CASH_FLOW["receivables_change"][i],
        payables_change=0.0, loans=0.0, investing=0.0, dividends=0.0,
        net_cash_change=year0.CASH_FLOW["net_cash_change"][i],
        cash_begin=year0.CASH_FLOW["cash_begin"][i],
        cash_end=year0.CASH_FLOW["cash_end"][i])
    return Statements(income=income, balance=balance, cash_flow=cash_flow)


class TestNetProfitMargin:
    def test_january_ratio(self):
        # oracle: direct division of the published January figures
        assert net_profit_margin(7437.76, 355_080) == pytest.approx(2.09, abs=0.005)

    def test_published_annual_column(self):
        # a published benchmark column: NI -104,179 on revenue 5,444,246
        assert net_profit_margin(-104_179, 5_444_246) == pytest.approx(-1.91, abs=0.005)

    def test_zero_revenue_is_undefined_not_zero(self):
        assert net_profit_margin(123.0, 0.0) is None


class TestFinancialRatios:
    @pytest.mark.parametrize("month", range(1, 13))
    def test_all_twelve_published_columns(self, month):
        """Feeding the published statements reproduces every ROI/ROA/leverage
        value within a hundredth of a point."""
        statements = published_statements(month)
        roi, roa, leverage, _ = financial_ratios(
            statements,
            prev_equity=year0.equity_begin(month),
            prev_assets=year0.assets_begin(month))
        i = month - 1
        assert roi == pytest.approx(year0.KPI_ROWS["roi_pct"][i], abs=0.0101)
        assert roa == pytest.approx(year0.KPI_ROWS["roa_pct"][i], abs=0.0101)
        assert leverage == pytest.approx(year0.KPI_ROWS["leverage_pct"][i], abs=0.0101)

    def test_gross_margin_january_and_december(self):
        _, _, _, gm_jan = financial_ratios(published_statements(1))
        _, _, _, gm_dec = financial_ratios(published_statements(12))
        assert gm_jan == pytest.approx(0.06, abs=0.01)
        assert gm_dec == pytest.approx(0.18, abs=0.01)

    def test_zero_revenue_margin_undefined(self):
        import dataclasses
        stmts = published_statements(1)
        stmts = dataclasses.replace(
            stmts, income=dataclasses.replace(stmts.income, revenue=0.0))
        assert financial_ratios(stmts)[3] is None


class TestCarbon:
    @pytest.mark.parametrize("sold,expected", [(3228, 42.28), (146, 11.46), (0, 10.00)])
    def test_published_points(self, sold, expected):
        assert carbon_footprint(sold, PARAMS) == pytest.approx(expected, abs=0.005)

    def test_affine_in_units_with_exact_slope(self):
        for sold, published in zip(year0.UNIT_SALES, year0.KPI_ROWS["carbon_tons"]):
            assert carbon_footprint(sold, PARAMS) == pytest.approx(published, abs=0.01)
        slope = carbon_footprint(1001, PARAMS) - carbon_footprint(1000, PARAMS)
        assert slope == pytest.approx(PARAMS.co2_per_unit, abs=1e-12)


class TestForecastError:
    def test_missing_forecast_is_full_miss(self):
        assert forecast_error(None, 355_080) == 100.0
        assert forecast_error(0, 355_080) == 100.0

    def test_perfect_forecast(self):
        assert forecast_error(250_000, 250_000) == 0.0

    def test_overshoot_beyond_hundred_percent(self):
        # oracle: |200-100|/100 = 100%; |500-100|/100 = 400%
        assert forecast_error(200, 100) == 100.0
        assert forecast_error(500, 100) == 400.0

    def test_zero_actual_conventions(self):
        assert forecast_error(0, 0) == 0.0
        assert forecast_error(5, 0) == 100.0


class TestSharePrice:
    def test_neutral_month_prices_at_book_value(self):
        statements = published_statements(1)
        price, cap = share_price(statements, roi_pct=0.0, env_index=100.0,
                                 gdp_pct=0.0, revenue_growth=0.0, params=PARAMS)
        bvps = statements.balance.total_equity / PARAMS.shares_outstanding
        assert price == pytest.approx(bvps, rel=1e-12)
        assert cap == pytest.approx(price * 26_480, rel=1e-12)

    def test_january_book_value_per_share(self):
        # oracle: 2,855,437.76 / 26,480
        assert 2_855_437.76 / 26_480 == pytest.approx(107.83, abs=0.005)
        statements = published_statements(1)
        price, _ = share_price(statements, 0.0, 100.0, 0.0, 0.0, PARAMS)
        assert price == pytest.approx(107.83, abs=0.005)

    def test_negative_equity_floors_at_one(self):
        import dataclasses
        stmts = published_statements(1)
        stmts = dataclasses.replace(
            stmts, balance=dataclasses.replace(stmts.balance, total_equity=-50_000.0))
        price, cap = share_price(stmts, -5.0, 99.0, 1.0, -0.5, PARAMS)
        assert price == 1.0
        assert cap == 26_480.0

    def test_market_cap_identity(self, year0_reports):
        for report in year0_reports:
            assert report.kpi.market_cap == pytest.approx(
                report.kpi.share_price * 26_480, rel=1e-12)


class TestEnvIndex:
    def test_equilibrium_at_reference_footprint(self):
        assert env_index_update(100.0, 30.0, PARAMS) == 100.0

    def test_low_emission_year_lands_near_101(self):
        index = 100.0
        for _ in range(12):
            index = env_index_update(index, 20.0, PARAMS)
        assert index == pytest.approx(101.0, abs=0.05)

    def test_high_emission_year_stays_near_100(self):
        index = 100.0
        for _ in range(12):
            index = env_index_update(index, 50.0, PARAMS)
        assert 99.5 - 1e-9 <= index <= 100.0

    def test_shift_is_clamped(self):
        assert env_index_update(100.0, 1e6, PARAMS) == 100.0 - PARAMS.env_adjust_rate
        assert env_index_update(100.0, 0.0, PARAMS) == 100.0 + PARAMS.env_adjust_rate


class TestLogistics:
    def test_full_service_fill_rate(self, year0_reports):
        flows = [r.flows for r in year0_reports]
        metrics = logistics_metrics(flows, PARAMS)
        assert metrics["fill_rate_pct"] == pytest.approx(100.0)

    def test_freight_formula_reconciles_published_column(self):
        # oracle: 7 orders x 25,000 + 2 x 10,500 ordered units = 196,000
        orders = [2500, 2800, 0, 1000, 500, 0, 0, 0, 0, 1000, 1500, 1200]
        placed = sum(1 for o in orders if o)
        units = sum(orders)
        freight = placed * PARAMS.order_setup_cost + units * PARAMS.freight_var_cost
        assert freight == 196_000.0

    def test_january_utilization(self, year0_reports):
        assert year0_reports[0].kpi.capacity_utilization_pct == pytest.approx(24.78, abs=0.05)
        assert year0_reports[1].kpi.capacity_utilization_pct == pytest.approx(1.20, abs=0.05)

    def test_undefined_fill_rate_with_no_demand(self):
        assert logistics_metrics([], PARAMS)["fill_rate_pct"] is None

    def test_percent_serialization_two_decimals(self, year0_reports):
        kpi = year0_reports[0].kpi.to_dict()
        assert kpi["market_share_pct"] is not None
        # undefined markers survive serialization as None, never as 0
        from retailbench.kpi import KpiBlock
        clone = KpiBlock.from_dict({**kpi, "fill_rate_pct": None})
        assert clone.fill_rate_pct is None
