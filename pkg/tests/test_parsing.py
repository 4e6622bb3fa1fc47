"""Decision-block parser tests: labeled blocks, tables, dash conventions,
garbage input, and round-trip idempotence."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from retailbench.agents.parsing import (parse_decision_block, parse_number,
                                        serialize_decision_block)
from retailbench.engine import DecisionVector


class TestParseNumber:
    @pytest.mark.parametrize("token,expected", [
        ("5,000", 5000.0),
        ("$105", 105.0),
        ("-", 0.0),
        ("—", 0.0),
        ("- 20,000", -20_000.0),
        ("-20,000", -20_000.0),
        ("(1,500)", -1500.0),
        ("0.01", 0.01),
        ("+250", 250.0),
        ("1 000 000", 1_000_000.0),
        ("n/a", 0.0),
    ])
    def test_accepts(self, token, expected):
        assert parse_number(token) == expected

    @pytest.mark.parametrize("token", ["", "abc", "1.2.3", "$", "--5--"])
    def test_rejects(self, token):
        assert parse_number(token) is None


class TestParseBlock:
    def test_slash_separated_labels(self):
        result = parse_decision_block(
            "Your order in units: 5,000 / Price $: 105 / Workers hired: 2 / "
            "Workers dismissed: - / Marketing expense $: 20,000 / Loans $: - / "
            "Training expense $: 10,000 / R&D expense $: 10,000 / "
            "Sales forecast next period $: 8,000 / Net income forecast $: 25,000")
        assert result.ok
        d = result.decision
        assert (d.order_units, d.price, d.workers_hired) == (5000, 105, 2)
        assert (d.marketing_expense, d.loans) == (20_000, 0)
        assert (d.sales_forecast_next, d.net_income_forecast) == (8000, 25_000)

    def test_labeled_lines_with_currency_noise(self):
        text = "\n".join([
            "Here are my decisions for the month:",
            "Your order in units (required): 6,000",
            "Price $ (required): $102",
            "Workers hired: -",
            "Workers dismissed: -",
            "Marketing expense $: $25,000",
            "Loans $: -",
            "Training expense $: 8,000",
            "R&D expense $: 8,000",
            "Sales forecast next period $: 6,000",
            "Net income forecast $: - 30,000",
            "Rationale: holding price near glory.",
        ])
        result = parse_decision_block(text)
        assert result.ok
        assert result.decision.order_units == 6000
        assert result.decision.net_income_forecast == -30_000
        assert result.decision.workers_hired == 0

    def test_dashes_mean_zero(self):
        text = "\n".join([
            "Your order in units: 1,000", "Price $: 110", "Workers hired: -",
            "Workers dismissed: —", "Marketing expense $: -", "Loans $: -",
            "Training expense $: -", "R&D expense $: -",
            "Sales forecast next period $: -", "Net income forecast $: -",
        ])
        result = parse_decision_block(text)
        assert result.ok
        d = result.decision
        assert d.workers_hired == d.loans == d.training_expense == 0.0

    def test_markdown_table_row(self):
        text = "\n".join([
            "| Current year | Your order in units (required) | Price $ (required) | "
            "Workers hired | Workers dismissed | Marketing expense $ | Loans $ | "
            "Training expense $ | R&D expense $ | Sales forecast next period $ | "
            "Net income forecast $ |",
            "|---|---|---|---|---|---|---|---|---|---|---|",
            "| January | 5,000 | 105 | 2 | - | 20,000 | - | 10,000 | 10,000 | "
            "8,000 | 25,000 |",
        ])
        result = parse_decision_block(text)
        assert result.ok
        assert result.decision.order_units == 5000
        assert result.decision.price == 105
        assert result.decision.workers_dismissed == 0

    def test_garbage_lists_required_fields(self):
        result = parse_decision_block("I cannot decide right now, sorry.")
        assert not result.ok
        missing = {f for f, _ in result.diagnostics}
        assert missing == {"order_units", "price"}
        assert result.decision is None

    def test_empty_text(self):
        result = parse_decision_block("")
        assert not result.ok and len(result.diagnostics) == 2

    def test_missing_optionals_default_zero(self):
        result = parse_decision_block("Order: 2000\nPrice: 99")
        assert result.ok
        d = result.decision
        assert d.marketing_expense == 0 and d.training_expense == 0
        assert d.dividend_rate == 0

    def test_dividend_percent_normalized(self):
        result = parse_decision_block("Order: 100\nPrice: 99\nDividends %: 40")
        assert result.ok
        assert result.decision.dividend_rate == pytest.approx(0.40)

    def test_prose_after_value_is_tolerated(self):
        result = parse_decision_block(
            "Order: 3,000 units to rebuild stock\nPrice: 95 (a small cut)")
        assert result.ok
        assert result.decision.order_units == 3000
        assert result.decision.price == 95

    def test_round_trip_of_fixture_style_vector(self):
        d = DecisionVector(order_units=1500, price=40, workers_hired=1,
                           marketing_expense=5000, training_expense=7000,
                           rnd_expense=3000, sales_forecast_next=60_000,
                           net_income_forecast=-140_000)
        result = parse_decision_block(serialize_decision_block(d))
        assert result.ok
        assert result.decision == d


MONEY = st.integers(min_value=0, max_value=10_000_000).map(float)


@given(order=st.integers(0, 50_000), price=st.integers(1, 100_000).map(lambda c: c / 100),
       hired=st.integers(0, 50), dismissed=st.integers(0, 50),
       marketing=MONEY, loans=MONEY, training=MONEY, rnd=MONEY,
       sales_fc=st.integers(-10_000_000, 10_000_000).map(float),
       ni_fc=st.integers(-10_000_000, 10_000_000).map(float),
       dividend=st.integers(0, 100).map(lambda p: p / 100))
@settings(max_examples=300, deadline=None)
def test_parser_idempotent_on_own_serialization(order, price, hired, dismissed,
                                                marketing, loans, training, rnd,
                                                sales_fc, ni_fc, dividend):
    d = DecisionVector(order_units=float(order), price=price,
                       workers_hired=float(hired), workers_dismissed=float(dismissed),
                       marketing_expense=marketing, loans=loans,
                       training_expense=training, rnd_expense=rnd,
                       sales_forecast_next=sales_fc, net_income_forecast=ni_fc,
                       dividend_rate=dividend)
    once = parse_decision_block(serialize_decision_block(d, include_dividend=True))
    assert once.ok
    assert once.decision == d
    twice = parse_decision_block(serialize_decision_block(once.decision,
                                                          include_dividend=True))
    assert twice.decision == once.decision
