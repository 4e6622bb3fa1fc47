"""HTTP gateway: session lifecycle for interactive play plus read access to
benchmark results.

Plain JSON over HTTP under the /v1 prefix; the monthly cadence needs no
streaming. Every interactive session runs the same SessionEngine and persists
through the same session-directory format as the benchmark harness, so a human
game lands on the leaderboard next to the agents.
"""

from __future__ import annotations

import json
import re
import threading
import time
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Any, Optional

from . import year0
from .agents.parsing import CANONICAL_LABELS
from .agents.prompts import render_initial_prompt
from .engine import DecisionError, DecisionVector
from .harness import (MonthRecord, SessionStore, build_leaderboard, build_summary,
                      SessionLog)
from .scenario import Scenario, ScenarioError, builtin_scenario_ids, get_scenario
from .session import SessionEngine

DEFAULT_IDLE_DEADLINE_S = 24 * 3600.0


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str,
                 fields: Optional[list[str]] = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.fields = fields or []

    def body(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"error": {"code": self.code, "message": str(self)}}
        if self.fields:
            doc["error"]["fields"] = self.fields
        return doc


@dataclass
class InteractiveSession:
    session_id: str
    scenario: Scenario
    mode: str
    engine: SessionEngine
    store: SessionStore
    log: SessionLog
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_access: float = field(default_factory=time.monotonic)
    idempotency: dict[str, dict[str, Any]] = field(default_factory=dict)
    state: str = "awaiting_decisions"

    @property
    def month(self) -> int:
        return self.engine.month

    def status_doc(self) -> dict[str, Any]:
        return {
            "session_id": self.session_id,
            "state": self.state,
            "month": self.month if self.state == "awaiting_decisions" else None,
            "months_completed": len(self.engine.history),
            "scenario_id": self.scenario.scenario_id,
            "mode": self.mode,
        }


class GatewayApp:
    """Route handling, independent of the HTTP plumbing (unit-testable)."""

    def __init__(self, sessions_root: str | Path,
                 idle_deadline_s: float = DEFAULT_IDLE_DEADLINE_S):
        self.sessions_root = Path(sessions_root)
        self.sessions_root.mkdir(parents=True, exist_ok=True)
        self.idle_deadline_s = idle_deadline_s
        self.sessions: dict[str, InteractiveSession] = {}
        self._registry_lock = threading.Lock()

    # -- session lifecycle -------------------------------------------------

    def create_session(self, body: dict[str, Any]) -> dict[str, Any]:
        scenario_name = body.get("scenario", "default")
        mode = body.get("mode", "human")
        if mode not in ("human", "spectate"):
            raise ApiError(400, "bad_request", f"unknown mode '{mode}'")
        try:
            scenario = get_scenario(str(scenario_name))
        except ScenarioError as exc:
            raise ApiError(404, "not_found", str(exc)) from exc

        session_id = uuid.uuid4().hex[:12]
        engine = SessionEngine(scenario=scenario)
        store = SessionStore(self.sessions_root / session_id)
        log = SessionLog(session_id=session_id,
                         agent={"kind": "interactive", "name": f"{mode}:{session_id}"},
                         scenario_id=scenario.scenario_id,
                         schema_version=scenario.schema_version, seed=0)
        store.create(log, engine.snapshot())
        session = InteractiveSession(session_id=session_id, scenario=scenario,
                                     mode=mode, engine=engine, store=store, log=log)
        with self._registry_lock:
            self.sessions[session_id] = session
        return {
            "session_id": session_id,
            "state": session.state,
            "month": 1,
            "context": self._month1_context(scenario),
        }

    def _month1_context(self, scenario: Scenario) -> dict[str, Any]:
        params = scenario.params
        return {
            "scenario": scenario.to_dict(),
            "params": params.to_dict(),
            "company": {
                "inventory_units": params.initial_inventory_units,
                "cash": params.initial_cash,
                "workers": params.initial_workers,
                "long_term_debt": params.initial_long_term_debt,
                "env_index": params.initial_env_index,
            },
            "year0": {
                "income_statement": {k: list(v) for k, v in year0.INCOME_STATEMENT.items()},
                "balance_sheet": {k: list(v) for k, v in year0.BALANCE_SHEET.items()},
                "cash_flow": {k: list(v) for k, v in year0.CASH_FLOW.items()},
                "kpi": {k: list(v) for k, v in year0.KPI_ROWS.items()},
                "gdp_growth": list(year0.GDP_GROWTH),
                "unit_sales": list(year0.UNIT_SALES),
            },
            "decision_fields": dict(CANONICAL_LABELS),
            "briefing_text": render_initial_prompt(params, scenario),
        }

    def _get_session(self, session_id: str) -> InteractiveSession:
        with self._registry_lock:
            session = self.sessions.get(session_id)
        if session is None:
            raise ApiError(404, "not_found", f"unknown session {session_id}")
        if (session.state == "awaiting_decisions"
                and time.monotonic() - session.last_access > self.idle_deadline_s):
            session.state = "abandoned"
        return session

    def submit_decisions(self, session_id: str, body: dict[str, Any]) -> dict[str, Any]:
        session = self._get_session(session_id)
        with session.lock:
            session.last_access = time.monotonic()
            if session.state == "completed":
                raise ApiError(409, "conflict", "session already completed")
            if session.state == "abandoned":
                raise ApiError(409, "conflict", "session expired as abandoned")

            key = body.get("idempotency_key")
            if key and key in session.idempotency:
                return session.idempotency[key]

            month = body.get("month")
            if month is not None:
                try:
                    month = int(month)
                except (TypeError, ValueError):
                    raise ApiError(400, "bad_request",
                                   f"month must be an integer, got {month!r}") from None
                if month != session.month:
                    raise ApiError(409, "conflict",
                                   f"session awaits decisions for month {session.month}, "
                                   f"got a submission for month {month}")

            decisions_doc = body.get("decisions")
            if not isinstance(decisions_doc, dict):
                raise ApiError(400, "bad_request", "body needs a 'decisions' object")
            bad_fields = [k for k, v in decisions_doc.items()
                          if not isinstance(v, (int, float)) or isinstance(v, bool)]
            if bad_fields:
                raise ApiError(400, "validation", "non-numeric decision values",
                               fields=sorted(bad_fields))
            decision = DecisionVector.from_dict(
                {k: float(v) for k, v in decisions_doc.items()})

            try:
                report = session.engine.play_month(decision)
            except DecisionError as exc:
                raise ApiError(400, "validation", str(exc),
                               fields=exc.bad_fields) from exc

            record = MonthRecord(month=report.month, report=report,
                                 raw_text="", diagnostics=[], attempts=1)
            session.log.months.append(record)
            session.store.write_month(record, session.engine.snapshot())

            response: dict[str, Any] = {
                "session_id": session_id,
                "month_completed": report.month,
                "report": report.to_dict(),
                "adjustment_notes": list(report.adjustment_notes),
            }
            if session.engine.completed:
                session.state = "completed"
                session.log.summary = build_summary(session.log, session.scenario)
                session.store.write_summary(session.log.summary)
                response["state"] = "completed"
                response["next_month"] = None
                response["annual_summary"] = session.log.summary
            else:
                response["state"] = "awaiting_decisions"
                response["next_month"] = session.engine.month
            if key:
                session.idempotency[key] = response
            return response

    def get_session(self, session_id: str) -> dict[str, Any]:
        return self._get_session(session_id).status_doc()

    def get_report(self, session_id: str, month: int) -> dict[str, Any]:
        session = self._get_session(session_id)
        with session.lock:
            if not 1 <= month <= len(session.log.months):
                raise ApiError(404, "not_found",
                               f"no report for month {month} in session {session_id}")
            return session.log.months[month - 1].report.to_dict()

    def list_scenarios(self) -> dict[str, Any]:
        return {"scenarios": builtin_scenario_ids()}

    def leaderboard(self) -> dict[str, Any]:
        logs = []
        for summary_path in sorted(self.sessions_root.glob("*/summary.json")):
            try:
                logs.append(SessionStore(summary_path.parent).load_log())
            except (OSError, json.JSONDecodeError, KeyError):
                continue
        return {"rows": build_leaderboard(logs)}

    # -- dispatch ----------------------------------------------------------

    ROUTES = (
        ("GET", re.compile(r"^/v1/scenarios$"), "route_scenarios"),
        ("GET", re.compile(r"^/v1/leaderboard$"), "route_leaderboard"),
        ("POST", re.compile(r"^/v1/sessions$"), "route_create"),
        ("GET", re.compile(r"^/v1/sessions/(?P<sid>[0-9a-f]+)$"), "route_status"),
        ("POST", re.compile(r"^/v1/sessions/(?P<sid>[0-9a-f]+)/decisions$"), "route_submit"),
        ("GET", re.compile(r"^/v1/sessions/(?P<sid>[0-9a-f]+)/reports/(?P<month>-?\d+)$"),
         "route_report"),
    )

    def dispatch(self, method: str, path: str, body: Optional[dict[str, Any]]
                 ) -> tuple[int, dict[str, Any]]:
        try:
            for verb, pattern, handler in self.ROUTES:
                if verb != method:
                    continue
                match = pattern.match(path)
                if match:
                    return getattr(self, handler)(match, body)
            raise ApiError(404, "not_found", f"no route for {method} {path}")
        except ApiError as exc:
            return exc.status, exc.body()
        except Exception as exc:   # never leak a traceback over the wire
            return 500, {"error": {"code": "internal",
                                   "message": f"{type(exc).__name__}: {exc}"}}

    def route_scenarios(self, match, body):
        return 200, self.list_scenarios()

    def route_leaderboard(self, match, body):
        return 200, self.leaderboard()

    def route_create(self, match, body):
        return 201, self.create_session(body or {})

    def route_status(self, match, body):
        return 200, self.get_session(match.group("sid"))

    def route_submit(self, match, body):
        if body is None:
            raise ApiError(400, "bad_request", "request body must be JSON")
        return 200, self.submit_decisions(match.group("sid"), body)

    def route_report(self, match, body):
        return 200, self.get_report(match.group("sid"), int(match.group("month")))


def make_server(app: GatewayApp, host: str = "127.0.0.1", port: int = 0,
                static_dir: Optional[str | Path] = None) -> ThreadingHTTPServer:
    """Build the HTTP server; port 0 picks a free port (inspect .server_address)."""
    static_root = Path(static_dir).resolve() if static_dir else None

    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):   # quiet by default
            pass

        def _send_json(self, status: int, doc: dict[str, Any]) -> None:
            payload = json.dumps(doc).encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(payload)))
            self.end_headers()
            self.wfile.write(payload)

        def _read_body(self) -> Optional[dict[str, Any]]:
            length = int(self.headers.get("Content-Length") or 0)
            if length == 0:
                return None
            raw = self.rfile.read(length)
            try:
                doc = json.loads(raw.decode())
            except (UnicodeDecodeError, json.JSONDecodeError):
                return None
            return doc if isinstance(doc, dict) else None

        def _serve_static(self) -> bool:
            if static_root is None or not self.path.startswith(("/", "/index.html")):
                return False
            rel = self.path.lstrip("/") or "index.html"
            rel = rel.split("?", 1)[0]
            target = (static_root / rel).resolve()
            if not str(target).startswith(str(static_root)) or not target.is_file():
                return False
            types = {".html": "text/html", ".js": "text/javascript",
                     ".css": "text/css", ".json": "application/json",
                     ".svg": "image/svg+xml", ".map": "application/json"}
            payload = target.read_bytes()
            self.send_response(200)
            self.send_header("Content-Type",
                             types.get(target.suffix, "application/octet-stream"))
            self.send_header("Content-Length", str(len(payload)))
            self.end_headers()
            self.wfile.write(payload)
            return True

        def do_GET(self):
            if self.path.startswith("/v1/"):
                status, doc = app.dispatch("GET", self.path.split("?", 1)[0], None)
                self._send_json(status, doc)
            elif not self._serve_static():
                self._send_json(404, {"error": {"code": "not_found",
                                                "message": "no such resource"}})

        def do_POST(self):
            body = self._read_body()
            if body is None and int(self.headers.get("Content-Length") or 0) > 0:
                self._send_json(400, {"error": {"code": "bad_request",
                                                "message": "request body must be JSON"}})
                return
            status, doc = app.dispatch("POST", self.path.split("?", 1)[0], body)
            self._send_json(status, doc)

    return ThreadingHTTPServer((host, port), Handler)


def serve(sessions_root: str | Path, host: str = "127.0.0.1", port: int = 8720,
          static_dir: Optional[str | Path] = None) -> None:
    app = GatewayApp(sessions_root)
    server = make_server(app, host, port, static_dir)
    print(f"gateway listening on http://{server.server_address[0]}:{server.server_address[1]}"
          f" (sessions in {sessions_root})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
