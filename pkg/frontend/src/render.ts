/**
 * Pure HTML builders for the report screens: the three statement tables, the
 * KPI tile grid, adjustment notes, and the defensive integrity badge. Keeping
 * these as string builders makes every displayed figure testable against the
 * gateway document without a browser.
 */

import { escapeHtml, money, pct, plain, units } from "./format.js";
import type { KpiDoc, LeaderboardRow, ReportDoc } from "./types.js";

function row(label: string, value: string, emphasis = false): string {
  const cls = emphasis ? ' class="total"' : "";
  return `<tr${cls}><td>${escapeHtml(label)}</td><td class="num">${value}</td></tr>`;
}

export function incomeTable(report: ReportDoc): string {
  const inc = report.statements.income;
  return [
    `<table class="statement" data-statement="income">`,
    `<caption>Income statement — ${escapeHtml(report.month_name)}</caption>`,
    row("Revenue", money(inc.revenue)),
    row("Materials expense", money(inc.materials_expense)),
    row("Staff costs", money(inc.staff_costs)),
    row("Depreciation expense", money(inc.depreciation)),
    row("Other operating expenses", money(inc.other_opex)),
    row("Total costs and expenses", money(inc.total_costs), true),
    row("Operating income", money(inc.operating_income), true),
    row("Interest expense", money(inc.interest)),
    row("Profit before tax", money(inc.profit_before_tax)),
    row("Income tax expense", money(inc.tax)),
    row("Net income", money(inc.net_income), true),
    `</table>`,
  ].join("");
}

export function balanceTable(report: ReportDoc): string {
  const bal = report.statements.balance;
  return [
    `<table class="statement" data-statement="balance">`,
    `<caption>Balance sheet — ${escapeHtml(report.month_name)}</caption>`,
    row("Cash (overdraft if negative)", money(bal.cash)),
    row("Accounts receivable", money(bal.receivables)),
    row("Inventory", money(bal.inventory_value)),
    row("Total current assets", money(bal.total_current_assets), true),
    row("Buildings", money(bal.buildings_gross)),
    row("Accumulated depreciation (buildings)", money(bal.buildings_accum_depr)),
    row("Equipment", money(bal.equipment_gross)),
    row("Accumulated depreciation (equipment)", money(bal.equipment_accum_depr)),
    row("Intangible assets", money(bal.intangibles)),
    row("Total non-current assets", money(bal.total_noncurrent_assets), true),
    row("Total assets", money(bal.total_assets), true),
    row("Accounts payable", money(bal.accounts_payable)),
    row("Long-term debt", money(bal.long_term_debt)),
    row("Provisions", money(bal.provisions)),
    row("Paid-in capital", money(bal.paid_in_capital)),
    row("Retained earnings", money(bal.retained_earnings)),
    row("Total equity", money(bal.total_equity), true),
    row("Total equity and liabilities", money(bal.total_liabilities_and_equity), true),
    `</table>`,
  ].join("");
}

export function cashFlowTable(report: ReportDoc): string {
  const cf = report.statements.cash_flow;
  return [
    `<table class="statement" data-statement="cash-flow">`,
    `<caption>Statement of cash flow — ${escapeHtml(report.month_name)}</caption>`,
    row("Net income", money(cf.net_income)),
    row("Depreciation and amortization", money(cf.depreciation_addback)),
    row("Changes in inventory", money(cf.inventory_change)),
    row("Changes in provisions", money(cf.provisions_change)),
    row("Changes in receivables", money(cf.receivables_change)),
    row("Loans", money(cf.loans)),
    row("Dividends", money(cf.dividends)),
    row("Net increase (decrease) in cash", money(cf.net_cash_change), true),
    row("Cash at beginning of period", money(cf.cash_begin)),
    row("Cash at end of period", money(cf.cash_end), true),
    `</table>`,
  ].join("");
}

function tile(label: string, value: string): string {
  return `<div class="tile"><span class="tile-label">${escapeHtml(label)}</span>` +
    `<span class="tile-value">${value}</span></div>`;
}

export function kpiTiles(kpi: KpiDoc): string {
  return [
    `<div class="tiles">`,
    tile("ROI", pct(kpi.roi_pct)),
    tile("ROA", pct(kpi.roa_pct)),
    tile("Leverage", pct(kpi.leverage_pct)),
    tile("Gross margin", plain(kpi.gross_margin)),
    tile("Net profit margin", pct(kpi.net_profit_margin_pct)),
    tile("Share price", money(kpi.share_price)),
    tile("Market cap", money(kpi.market_cap)),
    tile("Market share", pct(kpi.market_share_pct)),
    tile("Fill rate", pct(kpi.fill_rate_pct)),
    tile("Capacity utilization", pct(kpi.capacity_utilization_pct)),
    tile("Sales forecast error", pct(kpi.sales_forecast_error_pct)),
    tile("Profit forecast error", pct(kpi.profit_forecast_error_pct)),
    tile("Staff", plain(kpi.total_staff)),
    tile("Worker wages", money(kpi.worker_wages)),
    tile("Productivity / hour", plain(kpi.productivity_hourly)),
    tile("Carbon (t CO2)", plain(kpi.carbon_tons)),
    tile("Environmental index", plain(kpi.env_index)),
    tile("Average inventory", units(kpi.avg_inventory_units)),
    tile("Freight cost", money(kpi.freight_cost)),
    tile("GDP growth", pct(kpi.gdp_pct)),
    `</div>`,
  ].join("");
}

/**
 * Defensive rendering: the cockpit trusts the gateway but compares the
 * document's own identity fields; a mismatch beyond a cent shows a badge.
 */
export function integrityIssues(report: ReportDoc): string[] {
  const issues: string[] = [];
  const bal = report.statements.balance;
  const cf = report.statements.cash_flow;
  if (Math.abs(bal.total_assets - bal.total_liabilities_and_equity) > 0.01) {
    issues.push("balance sheet does not balance");
  }
  if (Math.abs(cf.cash_begin + cf.net_cash_change - cf.cash_end) > 0.01) {
    issues.push("cash flow does not tie out");
  }
  if (Math.abs(bal.cash - cf.cash_end) > 0.01) {
    issues.push("balance cash differs from cash-flow end");
  }
  return issues;
}

export function integrityBadge(report: ReportDoc): string {
  const issues = integrityIssues(report);
  if (issues.length === 0) return "";
  return `<div class="integrity-warning" role="alert">⚠ Report integrity warning: ` +
    `${escapeHtml(issues.join("; "))}</div>`;
}

export function adjustmentNotes(notes: string[]): string {
  if (notes.length === 0) return "";
  const items = notes.map(n => `<li>${escapeHtml(n)}</li>`).join("");
  return `<div class="adjustments" role="status"><strong>Adjustments applied ` +
    `by the simulation:</strong><ul>${items}</ul></div>`;
}

export function marketPanel(report: ReportDoc): string {
  const m = report.market;
  return [
    `<table class="statement" data-statement="market">`,
    `<caption>Market — ${escapeHtml(report.month_name)}</caption>`,
    row("Industry demand", units(m.industry_demand)),
    row("Your demand", units(m.own_demand)),
    row("Units sold", units(m.own_sold)),
    row("Unmet demand (lost)", units(m.own_unmet)),
    row("Competitor sold", units(m.comp_sold)),
    `</table>`,
  ].join("");
}

export function leaderboardTable(rows: LeaderboardRow[]): string {
  const header = `<tr><th>Agent</th><th>Revenue</th><th>Net income</th>` +
    `<th>Margin</th><th>Final share</th><th>Collapse</th></tr>`;
  const body = rows.map(r =>
    `<tr><td>${escapeHtml(r.agent)}</td><td class="num">${money(r.revenue_total)}</td>` +
    `<td class="num">${money(r.net_income_total)}</td>` +
    `<td class="num">${pct(r.net_profit_margin_pct)}</td>` +
    `<td class="num">${pct(r.final_market_share_pct)}</td>` +
    `<td class="num">${r.collapse_month ?? "—"}</td></tr>`).join("");
  return `<table class="statement leaderboard">${header}${body}</table>`;
}
