/**
 * Display formatting only. No arithmetic beyond sign inspection: every number
 * shown in the cockpit is a gateway-provided field run through one of these.
 */

export function money(value: number): string {
  const negative = value < 0;
  const text = Math.abs(value).toLocaleString("en-US", {
    minimumFractionDigits: 2,
    maximumFractionDigits: 2,
  });
  return negative ? `(${text})` : text;
}

export function units(value: number): string {
  return value.toLocaleString("en-US", { maximumFractionDigits: 1 });
}

export function pct(value: number | null): string {
  return value === null ? "n/a" : `${value.toFixed(2)}%`;
}

export function plain(value: number | null, digits = 2): string {
  return value === null ? "n/a" : value.toFixed(digits);
}

export function escapeHtml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
