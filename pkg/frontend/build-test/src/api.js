/**
 * Typed client for the gateway's /v1 API. The conflict branch (double submit)
 * is surfaced as a distinct error so screens can reconcile by refetching the
 * stored report.
 */
export class GatewayError extends Error {
    status;
    code;
    fields;
    constructor(status, code, message, fields = []) {
        super(message);
        this.status = status;
        this.code = code;
        this.fields = fields;
    }
    get isConflict() {
        return this.status === 409;
    }
}
async function request(base, method, path, body) {
    let response;
    try {
        response = await fetch(base + path, {
            method,
            headers: body === undefined ? undefined : { "Content-Type": "application/json" },
            body: body === undefined ? undefined : JSON.stringify(body),
        });
    }
    catch (err) {
        throw new GatewayError(0, "unreachable", `gateway unreachable: ${String(err)}`);
    }
    const text = await response.text();
    let doc = null;
    try {
        doc = text ? JSON.parse(text) : null;
    }
    catch {
        throw new GatewayError(response.status, "bad_payload", "gateway returned non-JSON");
    }
    if (!response.ok) {
        const err = doc?.error;
        throw new GatewayError(response.status, err?.code ?? "error", err?.message ?? `HTTP ${response.status}`, err?.fields ?? []);
    }
    return doc;
}
export class GatewayClient {
    base;
    constructor(base) {
        this.base = base;
    }
    listScenarios() {
        return request(this.base, "GET", "/v1/scenarios");
    }
    createSession(scenario, mode = "human") {
        return request(this.base, "POST", "/v1/sessions", { scenario, mode });
    }
    submitDecisions(sessionId, month, decisions, idempotencyKey) {
        return request(this.base, "POST", `/v1/sessions/${sessionId}/decisions`, {
            month,
            decisions,
            ...(idempotencyKey ? { idempotency_key: idempotencyKey } : {}),
        });
    }
    getReport(sessionId, month) {
        return request(this.base, "GET", `/v1/sessions/${sessionId}/reports/${month}`);
    }
    getSession(sessionId) {
        return request(this.base, "GET", `/v1/sessions/${sessionId}`);
    }
    leaderboard() {
        return request(this.base, "GET", "/v1/leaderboard");
    }
}
