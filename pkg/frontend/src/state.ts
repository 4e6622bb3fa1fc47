/**
 * Client-side view model for one game: the session id, months completed so
 * far, the live decision form, and the chart series. The chart series is
 * copied field-for-field from the reports; no client-side aggregation.
 */

import type { ChartPoint } from "./chart.js";
import { emptyForm, type FormState } from "./form.js";
import type { CreateSessionResponse, ReportDoc } from "./types.js";

export type Screen = "new-game" | "decision" | "report" | "completed";

export interface ViewModel {
  screen: Screen;
  sessionId: string | null;
  currentMonth: number;
  context: CreateSessionResponse["context"] | null;
  reports: ReportDoc[];
  form: FormState;
  lastNotes: string[];
  annualSummary: Record<string, unknown> | null;
  banner: string | null;
  submitting: boolean;
}

export function freshModel(): ViewModel {
  return {
    screen: "new-game",
    sessionId: null,
    currentMonth: 1,
    context: null,
    reports: [],
    form: emptyForm(),
    lastNotes: [],
    annualSummary: null,
    banner: null,
    submitting: false,
  };
}

/** Revenue / net-income series straight out of the report documents. */
export function chartSeries(reports: ReportDoc[]): ChartPoint[] {
  return reports.map(report => ({
    label: report.month_name,
    revenue: report.statements.income.revenue,
    netIncome: report.statements.income.net_income,
  }));
}

export function ingestReport(model: ViewModel, report: ReportDoc,
                             notes: string[]): void {
  if (model.reports.some(r => r.month === report.month)) {
    model.reports = model.reports.map(r => (r.month === report.month ? report : r));
  } else {
    model.reports.push(report);
  }
  model.lastNotes = notes;
}
