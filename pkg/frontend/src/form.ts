/**
 * Decision form state and validation.
 *
 * The form enforces the same numeric domains as the engine's decision vector
 * before anything is submitted: every reachable form state either serializes
 * to a valid submission or is blocked with a field-level message. Dash-style
 * empty inputs ("-", "") mean zero, mirroring the decision-table convention.
 */

export const DECISION_FIELDS = [
  "order_units", "price", "workers_hired", "workers_dismissed",
  "marketing_expense", "loans", "training_expense", "rnd_expense",
  "sales_forecast_next", "net_income_forecast",
] as const;

export type DecisionField = (typeof DECISION_FIELDS)[number] | "dividend_pct";

export const FIELD_LABELS: Record<DecisionField, string> = {
  order_units: "Your order in units (required)",
  price: "Price $ (required)",
  workers_hired: "Workers hired",
  workers_dismissed: "Workers dismissed",
  marketing_expense: "Marketing expense $",
  loans: "Loans $",
  training_expense: "Training expense $",
  rnd_expense: "R&D expense $",
  sales_forecast_next: "Sales forecast next period $",
  net_income_forecast: "Net income forecast $",
  dividend_pct: "Dividends % (optional)",
};

export type FormState = Record<DecisionField, string>;

export function emptyForm(): FormState {
  const state = {} as FormState;
  for (const field of DECISION_FIELDS) state[field] = "";
  state.dividend_pct = "";
  return state;
}

const DASHES = new Set(["", "-", "--", "–", "—"]);

/** Parse one input string; dashes and blanks are zero; null means unparseable. */
export function parseInput(raw: string): number | null {
  const text = raw.trim();
  if (DASHES.has(text)) return 0;
  const cleaned = text.replace(/[$,\s]/g, "").replace(/^−/, "-");
  if (!/^[-+]?\d+(\.\d+)?$/.test(cleaned)) return null;
  return Number(cleaned);
}

export interface FieldIssue {
  field: DecisionField;
  message: string;
}

const NON_NEGATIVE: DecisionField[] = [
  "order_units", "workers_hired", "workers_dismissed",
  "marketing_expense", "loans", "training_expense", "rnd_expense",
];
const INTEGER_FIELDS: DecisionField[] = [
  "order_units", "workers_hired", "workers_dismissed",
];

/** Field-level validation; an empty list means the form can be submitted. */
export function validateForm(form: FormState): FieldIssue[] {
  const issues: FieldIssue[] = [];
  const values = new Map<DecisionField, number>();

  for (const field of [...DECISION_FIELDS, "dividend_pct" as const]) {
    const parsed = parseInput(form[field]);
    if (parsed === null) {
      issues.push({ field, message: "enter a number (or - for zero)" });
      continue;
    }
    values.set(field, parsed);
  }

  const price = values.get("price");
  if (price !== undefined && price <= 0) {
    issues.push({ field: "price", message: "price must be greater than zero" });
  }
  for (const field of NON_NEGATIVE) {
    const value = values.get(field);
    if (value !== undefined && value < 0) {
      issues.push({ field, message: "cannot be negative" });
    }
  }
  for (const field of INTEGER_FIELDS) {
    const value = values.get(field);
    if (value !== undefined && value >= 0 && !Number.isInteger(value)) {
      issues.push({ field, message: "whole units only" });
    }
  }
  const dividend = values.get("dividend_pct");
  if (dividend !== undefined && (dividend < 0 || dividend > 100)) {
    issues.push({ field: "dividend_pct", message: "percentage between 0 and 100" });
  }
  return issues;
}

/**
 * Serialize a validated form into the submission payload. Throws if called on
 * a form that validateForm would block (screens must check first).
 */
export function toSubmission(form: FormState): Record<string, number> {
  const issues = validateForm(form);
  if (issues.length > 0) {
    throw new Error(`form has blocking issues: ${issues.map(i => i.field).join(", ")}`);
  }
  const payload: Record<string, number> = {};
  for (const field of DECISION_FIELDS) {
    payload[field] = parseInput(form[field]) as number;
  }
  payload.dividend_rate = (parseInput(form.dividend_pct) as number) / 100;
  return payload;
}

/** Prefill a form from an existing decision document (numbers to strings). */
export function fromDecision(decision: Record<string, number>): FormState {
  const form = emptyForm();
  for (const field of DECISION_FIELDS) {
    const value = decision[field];
    form[field] = value === undefined || value === 0 ? "" : String(value);
  }
  const rate = decision.dividend_rate ?? 0;
  form.dividend_pct = rate === 0 ? "" : String(rate * 100);
  return form;
}
