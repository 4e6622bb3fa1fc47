/**
 * Screen orchestration: new game -> monthly decision form -> report dashboard
 * -> final summary. The gateway is the single source of truth; this module
 * only routes its documents into the renderers and sends form submissions.
 */
import { GatewayError } from "./api.js";
import { chartSeries } from "./state.js";
import { revenueNetIncomeChart } from "./chart.js";
import { DECISION_FIELDS, FIELD_LABELS, emptyForm, fromDecision, toSubmission, validateForm, } from "./form.js";
import { escapeHtml, money, plain, units } from "./format.js";
import { adjustmentNotes, balanceTable, cashFlowTable, incomeTable, integrityBadge, kpiTiles, leaderboardTable, marketPanel, } from "./render.js";
import { freshModel, ingestReport } from "./state.js";
const ALL_FIELDS = [...DECISION_FIELDS, "dividend_pct"];
export class CockpitApp {
    root;
    client;
    model = freshModel();
    constructor(root, client) {
        this.root = root;
        this.client = client;
    }
    async start() {
        await this.showNewGame();
    }
    // -- new game ------------------------------------------------------------
    async showNewGame() {
        this.model = freshModel();
        let scenarios;
        try {
            scenarios = (await this.client.listScenarios()).scenarios;
        }
        catch (err) {
            this.renderBanner(`Gateway unreachable: ${err.message}`, () => this.showNewGame());
            return;
        }
        const options = scenarios.map(s => `<option value="${escapeHtml(s)}"${s === "default" ? " selected" : ""}>` +
            `${escapeHtml(s)}</option>`).join("");
        this.root.innerHTML = `
      <section class="screen new-game">
        <h1>Retailer One — management cockpit</h1>
        <p>Run the company for twelve months: set prices, order stock ahead of
           the two-month lead time, manage people and cash, and answer to the
           market every month.</p>
        <label>Scenario
          <select id="scenario-picker">${options}</select>
        </label>
        <button id="start-game">Start a new game</button>
        <div id="new-game-error"></div>
        <div id="briefing"></div>
      </section>`;
        this.root.querySelector("#start-game")
            .addEventListener("click", () => void this.createSession());
    }
    async createSession() {
        const picker = this.root.querySelector("#scenario-picker");
        try {
            const created = await this.client.createSession(picker.value);
            this.model.sessionId = created.session_id;
            this.model.currentMonth = created.month;
            this.model.context = created.context;
            this.model.form = emptyForm();
            this.model.screen = "decision";
            this.renderDecisionScreen();
        }
        catch (err) {
            const box = this.root.querySelector("#new-game-error");
            box.innerHTML = `<div class="banner error">Could not create the session: ` +
                `${escapeHtml(err.message)}</div>`;
        }
    }
    briefingHtml() {
        const context = this.model.context;
        if (!context)
            return "";
        const headers = ["General information", "Market", "Finance", "Suppliers",
            "Logistics service providers", "Workforce and capacity",
            "Environmental sustainability",
            "Market capitalization and share price", "Technology"];
        const paragraphs = context.briefing_text.split(/\n\n+/);
        const inventory = context.company.inventory_units;
        const cash = context.company.cash;
        const facts = `<div class="tiles">` +
            `<div class="tile"><span class="tile-label">Starting inventory</span>` +
            `<span class="tile-value">${units(inventory)} units</span></div>` +
            `<div class="tile"><span class="tile-label">Starting cash</span>` +
            `<span class="tile-value">${money(cash)}</span></div>` +
            `<div class="tile"><span class="tile-label">December revenue last year</span>` +
            `<span class="tile-value">${money(context.year0.income_statement.revenue[11])}</span></div>` +
            `</div>`;
        const nav = `<nav class="briefing-nav">` + headers.map(h => `<a href="#briefing-${h.toLowerCase().replace(/[^a-z]+/g, "-")}">` +
            `${escapeHtml(h)}</a>`).join(" · ") + `</nav>`;
        const body = paragraphs.map(p => {
            const trimmed = p.trim();
            if (headers.includes(trimmed)) {
                const id = `briefing-${trimmed.toLowerCase().replace(/[^a-z]+/g, "-")}`;
                return `<h3 id="${id}">${escapeHtml(trimmed)}</h3>`;
            }
            return `<p>${escapeHtml(p)}</p>`;
        }).join("");
        return `<details class="briefing" open><summary>Company briefing and last
      year's report</summary>${facts}${nav}<div class="briefing-text">${body}</div></details>`;
    }
    // -- decision form ---------------------------------------------------------
    renderDecisionScreen() {
        const month = this.model.currentMonth;
        const fields = ALL_FIELDS.map(field => `
      <label class="field" data-field="${field}">
        <span>${escapeHtml(FIELD_LABELS[field])}</span>
        <input name="${field}" inputmode="decimal" autocomplete="off"
               value="${escapeHtml(this.model.form[field])}"
               placeholder="-" />
        <em class="field-error" data-error-for="${field}"></em>
      </label>`).join("");
        this.root.innerHTML = `
      <section class="screen decision">
        <h1>Month ${month} of 12 — your decisions</h1>
        ${adjustmentNotes(this.model.lastNotes)}
        <form id="decision-form" novalidate>
          <div class="field-grid">${fields}</div>
          <button id="submit-decisions" type="submit">Submit decisions for
            month ${month}</button>
          <div id="submit-error"></div>
        </form>
        ${this.model.reports.length > 0 ? this.dashboardHtml() : this.briefingHtml()}
      </section>`;
        const form = this.root.querySelector("#decision-form");
        for (const input of form.querySelectorAll("input")) {
            input.addEventListener("input", () => {
                this.model.form[input.name] = input.value;
                this.showFieldIssues();
            });
        }
        form.addEventListener("submit", event => {
            event.preventDefault();
            void this.submit();
        });
    }
    showFieldIssues() {
        const issues = validateForm(this.model.form);
        for (const field of ALL_FIELDS) {
            const slot = this.root.querySelector(`[data-error-for="${field}"]`);
            if (slot)
                slot.textContent = "";
        }
        for (const issue of issues) {
            const slot = this.root.querySelector(`[data-error-for="${issue.field}"]`);
            if (slot)
                slot.textContent = issue.message;
        }
        return issues.length === 0;
    }
    async submit() {
        if (this.model.submitting || !this.model.sessionId)
            return;
        if (!this.showFieldIssues())
            return;
        const button = this.root.querySelector("#submit-decisions");
        this.model.submitting = true;
        button.disabled = true;
        try {
            const payload = toSubmission(this.model.form);
            const key = `m${this.model.currentMonth}-${Date.now()}`;
            const reply = await this.client.submitDecisions(this.model.sessionId, this.model.currentMonth, payload, key);
            this.applySubmitReply(reply);
        }
        catch (err) {
            if (err instanceof GatewayError && err.isConflict) {
                await this.reconcile();
            }
            else {
                const box = this.root.querySelector("#submit-error");
                box.innerHTML = `<div class="banner error">${escapeHtml(err.message)}</div>`;
            }
        }
        finally {
            this.model.submitting = false;
            button.disabled = false;
        }
    }
    applySubmitReply(reply) {
        ingestReport(this.model, reply.report, reply.adjustment_notes);
        if (reply.state === "completed" || reply.next_month === null) {
            this.model.screen = "completed";
            this.model.annualSummary = reply.annual_summary ?? null;
            this.renderCompleted();
            return;
        }
        this.model.currentMonth = reply.next_month;
        this.model.form = fromDecision({ ...reply.report.decisions_applied });
        this.model.screen = "decision";
        this.renderDecisionScreen();
    }
    /** Double submit: the gateway already stepped; fetch the stored report. */
    async reconcile() {
        if (!this.model.sessionId)
            return;
        const status = await this.client.getSession(this.model.sessionId);
        const lastMonth = status.months_completed;
        if (lastMonth >= 1) {
            const report = await this.client.getReport(this.model.sessionId, lastMonth);
            ingestReport(this.model, report, report.adjustment_notes);
        }
        if (status.state === "completed") {
            this.model.screen = "completed";
            this.renderCompleted();
        }
        else {
            this.model.currentMonth = status.month ?? lastMonth + 1;
            this.renderDecisionScreen();
        }
    }
    // -- dashboard -------------------------------------------------------------
    dashboardHtml() {
        const last = this.model.reports[this.model.reports.length - 1];
        if (!last)
            return "";
        return `
      <section class="dashboard">
        <h2>Results — ${escapeHtml(last.month_name)}</h2>
        ${integrityBadge(last)}
        ${revenueNetIncomeChart(chartSeries(this.model.reports))}
        ${kpiTiles(last.kpi)}
        <div class="statements">
          ${incomeTable(last)}${balanceTable(last)}${cashFlowTable(last)}
          ${marketPanel(last)}
        </div>
      </section>`;
    }
    renderCompleted() {
        const summary = this.model.annualSummary;
        const income = summary ? summary["income_statement_total"] : null;
        const kpis = summary ? summary["kpis"] : null;
        const annualRows = income
            ? Object.entries(income).map(([label, value]) => `<tr><td>${escapeHtml(label)}</td><td class="num">${money(value)}</td></tr>`).join("")
            : "";
        const kpiRows = kpis
            ? Object.entries(kpis).map(([label, value]) => `<tr><td>${escapeHtml(label)}</td><td class="num">` +
                `${typeof value === "number" ? plain(value) : "n/a"}</td></tr>`).join("")
            : "";
        const last = this.model.reports[this.model.reports.length - 1];
        this.root.innerHTML = `
      <section class="screen completed">
        <h1>Year complete</h1>
        ${revenueNetIncomeChart(chartSeries(this.model.reports))}
        ${last ? kpiTiles(last.kpi) : ""}
        <div class="statements">
          <table class="statement"><caption>Annual income statement</caption>${annualRows}</table>
          <table class="statement"><caption>Session indicators</caption>${kpiRows}</table>
        </div>
        <div id="leaderboard">Loading leaderboard…</div>
        <button id="again">Play again</button>
      </section>`;
        this.root.querySelector("#again").addEventListener("click", () => void this.showNewGame());
        void this.client.leaderboard().then(board => {
            const slot = this.root.querySelector("#leaderboard");
            if (slot)
                slot.innerHTML = `<h2>Leaderboard</h2>${leaderboardTable(board.rows)}`;
        }).catch(() => undefined);
    }
    renderBanner(message, retry) {
        this.root.innerHTML = `
      <section class="screen">
        <div class="banner error">${escapeHtml(message)}</div>
        <button id="retry">Retry</button>
      </section>`;
        this.root.querySelector("#retry").addEventListener("click", retry);
    }
}
