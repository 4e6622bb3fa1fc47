/**
 * Decision form: numeric domains, dash conventions, and the totality
 * guarantee (every reachable form state serializes or is blocked with a
 * field-level message).
 */
import assert from "node:assert/strict";
import { test } from "node:test";
import { DECISION_FIELDS, emptyForm, fromDecision, parseInput, toSubmission, validateForm, } from "../src/form.js";
function filledForm(overrides = {}) {
    const form = emptyForm();
    form.order_units = "3000";
    form.price = "110";
    return { ...form, ...overrides };
}
test("dash and empty inputs mean zero", () => {
    assert.equal(parseInput("-"), 0);
    assert.equal(parseInput(""), 0);
    assert.equal(parseInput("—"), 0);
    const payload = toSubmission(filledForm({ marketing_expense: "-" }));
    assert.equal(payload.marketing_expense, 0);
});
test("currency formatting in inputs is tolerated", () => {
    assert.equal(parseInput("$25,000"), 25_000);
    assert.equal(parseInput(" 1 500 "), 1500);
    assert.equal(parseInput("-20,000"), -20_000);
});
test("negative price is rejected inline before submit", () => {
    const issues = validateForm(filledForm({ price: "-5" }));
    assert.ok(issues.some(i => i.field === "price" && /greater than zero/.test(i.message)));
    assert.throws(() => toSubmission(filledForm({ price: "-5" })));
});
test("zero price is rejected too", () => {
    const issues = validateForm(filledForm({ price: "0" }));
    assert.ok(issues.some(i => i.field === "price"));
});
test("negative spend fields are blocked with field-level messages", () => {
    const issues = validateForm(filledForm({ loans: "-100", training_expense: "-1" }));
    assert.deepEqual(new Set(issues.map(i => i.field)), new Set(["loans", "training_expense"]));
});
test("fractional workers are blocked", () => {
    const issues = validateForm(filledForm({ workers_hired: "1.5" }));
    assert.ok(issues.some(i => i.field === "workers_hired"));
});
test("negative forecasts are legal", () => {
    const payload = toSubmission(filledForm({ net_income_forecast: "-140,000" }));
    assert.equal(payload.net_income_forecast, -140_000);
});
test("dividend percent maps to a rate", () => {
    const payload = toSubmission(filledForm({ dividend_pct: "40" }));
    assert.equal(payload.dividend_rate, 0.4);
    const issues = validateForm(filledForm({ dividend_pct: "140" }));
    assert.ok(issues.some(i => i.field === "dividend_pct"));
});
test("gibberish is blocked, never silently coerced", () => {
    const issues = validateForm(filledForm({ order_units: "lots" }));
    assert.ok(issues.some(i => i.field === "order_units"));
    assert.throws(() => toSubmission(filledForm({ order_units: "lots" })));
});
test("form-to-decision mapping is total over random form states", () => {
    // pseudo-random but deterministic exploration of the reachable input space
    const samples = ["", "-", "0", "12", "-7", "3.5", "abc", "$9,000", "  44  ",
        "–", "1e3", "0.01", "100", "9999999"];
    let seed = 0x2f6e2b1;
    const next = () => {
        seed = (seed * 1103515245 + 12345) & 0x7fffffff;
        return seed % samples.length;
    };
    for (let round = 0; round < 500; round++) {
        const form = emptyForm();
        for (const field of DECISION_FIELDS)
            form[field] = samples[next()];
        form.dividend_pct = samples[next()];
        const issues = validateForm(form);
        if (issues.length === 0) {
            const payload = toSubmission(form);
            for (const field of DECISION_FIELDS) {
                assert.ok(Number.isFinite(payload[field]), field);
            }
            assert.ok(payload.dividend_rate >= 0 && payload.dividend_rate <= 1);
        }
        else {
            for (const issue of issues) {
                assert.ok(issue.message.length > 0);
                assert.throws(() => toSubmission(form));
            }
        }
    }
});
test("prefill from an applied decision round-trips", () => {
    const decision = {
        order_units: 2500, price: 112, workers_hired: 1, workers_dismissed: 0,
        marketing_expense: 10_000, loans: 0, training_expense: 5000,
        rnd_expense: 10_000, sales_forecast_next: 350_000,
        net_income_forecast: 10_000, dividend_rate: 0.4,
    };
    const form = fromDecision(decision);
    const payload = toSubmission(form);
    assert.deepEqual(payload, { ...decision });
});
