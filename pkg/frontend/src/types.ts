/**
 * Wire types mirroring the gateway's JSON documents.
 *
 * The cockpit never derives financial figures: everything rendered comes
 * verbatim from these documents, formatted for display only.
 */

export interface IncomeStatementDoc {
  revenue: number;
  materials_expense: number;
  staff_costs: number;
  depreciation: number;
  other_opex: number;
  total_costs: number;
  operating_income: number;
  interest: number;
  profit_before_tax: number;
  tax: number;
  net_income: number;
}

export interface BalanceSheetDoc {
  cash: number;
  receivables: number;
  inventory_value: number;
  total_current_assets: number;
  buildings_gross: number;
  buildings_accum_depr: number;
  equipment_gross: number;
  equipment_accum_depr: number;
  intangibles: number;
  total_noncurrent_assets: number;
  total_assets: number;
  accounts_payable: number;
  long_term_debt: number;
  provisions: number;
  total_liabilities: number;
  paid_in_capital: number;
  retained_earnings: number;
  total_equity: number;
  total_liabilities_and_equity: number;
}

export interface CashFlowDoc {
  net_income: number;
  depreciation_addback: number;
  inventory_change: number;
  provisions_change: number;
  receivables_change: number;
  payables_change: number;
  loans: number;
  investing: number;
  dividends: number;
  net_cash_change: number;
  cash_begin: number;
  cash_end: number;
}

export interface KpiDoc {
  roi_pct: number | null;
  roa_pct: number | null;
  leverage_pct: number | null;
  gross_margin: number | null;
  net_profit_margin_pct: number | null;
  share_price: number;
  market_cap: number;
  sales_forecast_error_pct: number;
  profit_forecast_error_pct: number;
  market_share_pct: number | null;
  hiring: number;
  redundancy: number;
  hiring_dismissal_cost: number;
  worker_wages: number;
  sa_wages: number;
  training_expense: number;
  productivity_hourly: number;
  capacity_utilization_pct: number | null;
  carbon_tons: number;
  avg_inventory_units: number;
  env_index: number;
  storage_material_cost: number;
  freight_cost: number;
  fill_rate_pct: number | null;
  total_staff: number;
  gdp_pct: number;
}

export interface DecisionDoc {
  order_units: number;
  price: number;
  workers_hired: number;
  workers_dismissed: number;
  marketing_expense: number;
  loans: number;
  training_expense: number;
  rnd_expense: number;
  sales_forecast_next: number;
  net_income_forecast: number;
  dividend_rate: number;
}

export interface MarketDoc {
  industry_demand: number;
  own_demand: number;
  comp_demand: number;
  own_sold: number;
  comp_sold: number;
  own_unmet: number;
  market_share: number;
}

export interface ReportDoc {
  month: number;
  month_name: string;
  statements: {
    income: IncomeStatementDoc;
    balance: BalanceSheetDoc;
    cash_flow: CashFlowDoc;
  };
  kpi: KpiDoc;
  flows: Record<string, number>;
  market: MarketDoc;
  decisions_submitted: DecisionDoc;
  decisions_applied: DecisionDoc;
  adjustment_notes: string[];
  state_begin: Record<string, unknown>;
  state_end: Record<string, unknown>;
}

export interface CreateSessionResponse {
  session_id: string;
  state: string;
  month: number;
  context: {
    scenario: { id: string; description: string };
    params: Record<string, number>;
    company: Record<string, number>;
    year0: {
      income_statement: Record<string, number[]>;
      balance_sheet: Record<string, number[]>;
      cash_flow: Record<string, number[]>;
      kpi: Record<string, number[]>;
      gdp_growth: number[];
      unit_sales: number[];
    };
    decision_fields: Record<string, string>;
    briefing_text: string;
  };
}

export interface SubmitResponse {
  session_id: string;
  month_completed: number;
  report: ReportDoc;
  adjustment_notes: string[];
  state: string;
  next_month: number | null;
  annual_summary?: Record<string, unknown>;
}

export interface LeaderboardRow {
  agent: string;
  revenue_total: number;
  net_income_total: number;
  net_profit_margin_pct: number | null;
  final_market_share_pct: number | null;
  collapse_month: number | null;
  sales_forecast_error_pct: number;
  profit_forecast_error_pct: number;
  carbon_total_tons: number;
}

export interface ApiErrorBody {
  error: { code: string; message: string; fields?: string[] };
}
