/**
 * Typed client for the gateway's /v1 API. The conflict branch (double submit)
 * is surfaced as a distinct error so screens can reconcile by refetching the
 * stored report.
 */

import type {
  ApiErrorBody, CreateSessionResponse, LeaderboardRow, ReportDoc, SubmitResponse,
} from "./types.js";

export class GatewayError extends Error {
  constructor(public status: number, public code: string, message: string,
              public fields: string[] = []) {
    super(message);
  }

  get isConflict(): boolean {
    return this.status === 409;
  }
}

async function request<T>(base: string, method: string, path: string,
                          body?: unknown): Promise<T> {
  let response: Response;
  try {
    response = await fetch(base + path, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
  } catch (err) {
    throw new GatewayError(0, "unreachable", `gateway unreachable: ${String(err)}`);
  }
  const text = await response.text();
  let doc: unknown = null;
  try {
    doc = text ? JSON.parse(text) : null;
  } catch {
    throw new GatewayError(response.status, "bad_payload", "gateway returned non-JSON");
  }
  if (!response.ok) {
    const err = (doc as ApiErrorBody)?.error;
    throw new GatewayError(response.status, err?.code ?? "error",
                           err?.message ?? `HTTP ${response.status}`,
                           err?.fields ?? []);
  }
  return doc as T;
}

export class GatewayClient {
  constructor(public base: string) {}

  listScenarios(): Promise<{ scenarios: string[] }> {
    return request(this.base, "GET", "/v1/scenarios");
  }

  createSession(scenario: string, mode = "human"): Promise<CreateSessionResponse> {
    return request(this.base, "POST", "/v1/sessions", { scenario, mode });
  }

  submitDecisions(sessionId: string, month: number,
                  decisions: Record<string, number>,
                  idempotencyKey?: string): Promise<SubmitResponse> {
    return request(this.base, "POST", `/v1/sessions/${sessionId}/decisions`, {
      month,
      decisions,
      ...(idempotencyKey ? { idempotency_key: idempotencyKey } : {}),
    });
  }

  getReport(sessionId: string, month: number): Promise<ReportDoc> {
    return request(this.base, "GET", `/v1/sessions/${sessionId}/reports/${month}`);
  }

  getSession(sessionId: string): Promise<{ state: string; month: number | null;
                                           months_completed: number }> {
    return request(this.base, "GET", `/v1/sessions/${sessionId}`);
  }

  leaderboard(): Promise<{ rows: LeaderboardRow[] }> {
    return request(this.base, "GET", "/v1/leaderboard");
  }
}
