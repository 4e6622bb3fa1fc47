/**
 * Display formatting only. No arithmetic beyond sign inspection: every number
 * shown in the cockpit is a gateway-provided field run through one of these.
 */
export function money(value) {
    const negative = value < 0;
    const text = Math.abs(value).toLocaleString("en-US", {
        minimumFractionDigits: 2,
        maximumFractionDigits: 2,
    });
    return negative ? `(${text})` : text;
}
export function units(value) {
    return value.toLocaleString("en-US", { maximumFractionDigits: 1 });
}
export function pct(value) {
    return value === null ? "n/a" : `${value.toFixed(2)}%`;
}
export function plain(value, digits = 2) {
    return value === null ? "n/a" : value.toFixed(digits);
}
export function escapeHtml(text) {
    return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}
