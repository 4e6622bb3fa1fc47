/**
 * Rendering contract: every financial figure shown equals a field of the
 * recorded gateway document (display formatting only), plus the defensive
 * integrity badge and the chart geometry.
 */

import assert from "node:assert/strict";
import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { test } from "node:test";

import { revenueNetIncomeChart } from "../src/chart.js";
import { money, pct, plain, units } from "../src/format.js";
import {
  balanceTable, cashFlowTable, incomeTable, integrityBadge, integrityIssues,
  kpiTiles, leaderboardTable, marketPanel,
} from "../src/render.js";
import { chartSeries } from "../src/state.js";
import type { ReportDoc } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));
const report: ReportDoc = JSON.parse(
  readFileSync(join(here, "..", "..", "tests", "fixtures", "report_month1.json"), "utf8"));

test("every rendered statement figure equals the document field (>20 fields)", () => {
  const html = incomeTable(report) + balanceTable(report) + cashFlowTable(report)
    + marketPanel(report);
  const inc = report.statements.income;
  const bal = report.statements.balance;
  const cf = report.statements.cash_flow;
  const contract: Array<[string, string]> = [
    ["revenue", money(inc.revenue)],
    ["materials_expense", money(inc.materials_expense)],
    ["staff_costs", money(inc.staff_costs)],
    ["depreciation", money(inc.depreciation)],
    ["other_opex", money(inc.other_opex)],
    ["total_costs", money(inc.total_costs)],
    ["operating_income", money(inc.operating_income)],
    ["interest", money(inc.interest)],
    ["tax", money(inc.tax)],
    ["net_income", money(inc.net_income)],
    ["cash", money(bal.cash)],
    ["receivables", money(bal.receivables)],
    ["inventory_value", money(bal.inventory_value)],
    ["total_assets", money(bal.total_assets)],
    ["long_term_debt", money(bal.long_term_debt)],
    ["provisions", money(bal.provisions)],
    ["retained_earnings", money(bal.retained_earnings)],
    ["total_equity", money(bal.total_equity)],
    ["total_liabilities_and_equity", money(bal.total_liabilities_and_equity)],
    ["net_cash_change", money(cf.net_cash_change)],
    ["cash_begin", money(cf.cash_begin)],
    ["cash_end", money(cf.cash_end)],
    ["inventory_change", money(cf.inventory_change)],
    ["own_sold", units(report.market.own_sold)],
    ["industry_demand", units(report.market.industry_demand)],
  ];
  assert.ok(contract.length >= 20);
  for (const [field, rendered] of contract) {
    assert.ok(html.includes(`>${rendered}<`), `field ${field} -> ${rendered}`);
  }
});

test("kpi tiles mirror the kpi document", () => {
  const html = kpiTiles(report.kpi);
  const k = report.kpi;
  const expectations = [
    pct(k.roi_pct), pct(k.roa_pct), pct(k.leverage_pct), plain(k.gross_margin),
    pct(k.net_profit_margin_pct), money(k.share_price), money(k.market_cap),
    pct(k.market_share_pct), pct(k.fill_rate_pct), money(k.worker_wages),
    plain(k.carbon_tons), plain(k.env_index), money(k.freight_cost),
  ];
  for (const value of expectations) {
    assert.ok(html.includes(`>${value}<`), value);
  }
});

test("no integrity badge on a sound report", () => {
  assert.deepEqual(integrityIssues(report), []);
  assert.equal(integrityBadge(report), "");
});

test("injected identity violation raises the warning badge", () => {
  const broken: ReportDoc = JSON.parse(JSON.stringify(report));
  broken.statements.balance.total_assets += 10;
  const issues = integrityIssues(broken);
  assert.ok(issues.some(i => /does not balance/.test(i)));
  assert.match(integrityBadge(broken), /integrity warning/i);

  const cashBroken: ReportDoc = JSON.parse(JSON.stringify(report));
  cashBroken.statements.cash_flow.cash_end += 1;
  assert.ok(integrityIssues(cashBroken).length >= 1);
});

test("chart draws both series with the figure-style legend", () => {
  const svg = revenueNetIncomeChart(chartSeries([report]));
  assert.match(svg, /REVENUE/);
  assert.match(svg, /NET INCOME FROM OPERATIONS/);
  const bars = svg.match(/class="bar revenue"/g) ?? [];
  assert.equal(bars.length, 2); // one data bar + one legend swatch
  assert.ok(svg.includes(report.statements.income.revenue.toLocaleString("en-US")));
});

test("chart handles negative net income by dropping below the axis", () => {
  const svg = revenueNetIncomeChart([
    { label: "January", revenue: 100_000, netIncome: -40_000 },
    { label: "February", revenue: 90_000, netIncome: 20_000 },
  ]);
  assert.match(svg, /class="axis"/);
  const heights = [...svg.matchAll(/height="([\d.]+)"/g)].map(m => Number(m[1]));
  assert.ok(heights.every(h => h >= 0));
});

test("chart series length equals months completed", () => {
  assert.equal(chartSeries([report]).length, 1);
  assert.equal(chartSeries([]).length, 0);
});

test("leaderboard renders one row per entry", () => {
  const html = leaderboardTable([{
    agent: "baseline", revenue_total: 4_000_000, net_income_total: 120_000,
    net_profit_margin_pct: 3.0, final_market_share_pct: 50.0,
    collapse_month: null, sales_forecast_error_pct: 20, profit_forecast_error_pct: 30,
    carbon_total_tons: 400,
  }]);
  assert.match(html, /baseline/);
  assert.ok(html.includes(money(4_000_000)));
});
