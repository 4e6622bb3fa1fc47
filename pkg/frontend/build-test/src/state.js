/**
 * Client-side view model for one game: the session id, months completed so
 * far, the live decision form, and the chart series. The chart series is
 * copied field-for-field from the reports; no client-side aggregation.
 */
import { emptyForm } from "./form.js";
export function freshModel() {
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
export function chartSeries(reports) {
    return reports.map(report => ({
        label: report.month_name,
        revenue: report.statements.income.revenue,
        netIncome: report.statements.income.net_income,
    }));
}
export function ingestReport(model, report, notes) {
    if (model.reports.some(r => r.month === report.month)) {
        model.reports = model.reports.map(r => (r.month === report.month ? report : r));
    }
    else {
        model.reports.push(report);
    }
    model.lastNotes = notes;
}
