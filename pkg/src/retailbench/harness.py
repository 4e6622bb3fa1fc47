"""Session orchestration: run agents through 12-month games, persist crash-safe
trajectories, detect collapse, score coherence, and build leaderboards.

A session directory is append-only: a manifest, one JSON document per month
(flushed before the next agent call), and a terminal summary. Killing the
process after month k and resuming replays months 1..k bit-identically from
disk because nothing is recomputed.
"""

from __future__ import annotations

import hashlib
import json
import math
import statistics
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from . import year0
from .agents import AgentDescriptor
from .agents.parsing import CANONICAL_LABELS
from .engine import DecisionVector
from .kpi import logistics_metrics, net_profit_margin
from .market import MONTHS, competitor_policy
from .report import MonthlyReport
from .scenario import Scenario
from .session import SESSION_MONTHS, SessionEngine

COLLAPSE_THRESHOLD = round(0.01 * year0.MEAN_MONTHLY_REVENUE, 2)   # 3,758.33


def canonical_json(obj: Any) -> str:
    """Deterministic JSON encoding used for hashing and byte-stable exports."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


@dataclass
class MonthRecord:
    month: int
    report: MonthlyReport
    raw_text: str = ""
    diagnostics: list = field(default_factory=list)
    attempts: int = 1
    fallback: bool = False
    timing_s: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "month": self.month,
            "report": self.report.to_dict(),
            "agent": {"raw_text": self.raw_text,
                      "diagnostics": [list(d) for d in self.diagnostics],
                      "attempts": self.attempts,
                      "fallback": self.fallback},
            "timing": {"elapsed_s": self.timing_s},
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "MonthRecord":
        agent = data.get("agent", {})
        return cls(
            month=int(data["month"]),
            report=MonthlyReport.from_dict(data["report"]),
            raw_text=agent.get("raw_text", ""),
            diagnostics=[tuple(d) for d in agent.get("diagnostics", [])],
            attempts=int(agent.get("attempts", 1)),
            fallback=bool(agent.get("fallback", False)),
            timing_s=float(data.get("timing", {}).get("elapsed_s", 0.0)),
        )


@dataclass
class SessionLog:
    session_id: str
    agent: dict[str, Any]
    scenario_id: str
    schema_version: int
    seed: int
    months: list[MonthRecord] = field(default_factory=list)
    summary: Optional[dict[str, Any]] = None

    @property
    def reports(self) -> list[MonthlyReport]:
        return [m.report for m in self.months]

    def revenues(self) -> list[float]:
        return [m.report.flows.revenue for m in self.months]

    def to_dict(self) -> dict[str, Any]:
        return {
            "session_id": self.session_id,
            "agent": self.agent,
            "scenario_id": self.scenario_id,
            "schema_version": self.schema_version,
            "seed": self.seed,
            "months": [m.to_dict() for m in self.months],
            "summary": self.summary,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SessionLog":
        return cls(
            session_id=data["session_id"],
            agent=dict(data["agent"]),
            scenario_id=data["scenario_id"],
            schema_version=int(data["schema_version"]),
            seed=int(data["seed"]),
            months=[MonthRecord.from_dict(m) for m in data["months"]],
            summary=data.get("summary"),
        )

    def content_hash(self) -> str:
        """Hash of the deterministic content (timing and raw latencies excluded)."""
        stripped = []
        for record in self.months:
            doc = record.to_dict()
            doc.pop("timing", None)
            stripped.append(doc)
        payload = canonical_json({
            "agent": self.agent, "scenario_id": self.scenario_id,
            "seed": self.seed, "months": stripped,
        })
        return hashlib.sha256(payload.encode()).hexdigest()


# ---------------------------------------------------------------------------
# Persistence

class SessionStore:
    """One directory per session: manifest.json, month_XX.json, summary.json."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def create(self, log: SessionLog, engine_snapshot: dict[str, Any]) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        manifest = {
            "session_id": log.session_id,
            "agent": log.agent,
            "scenario_id": log.scenario_id,
            "schema_version": log.schema_version,
            "seed": log.seed,
            "initial_snapshot": engine_snapshot,
        }
        self._write("manifest.json", manifest)

    def write_month(self, record: MonthRecord, engine_snapshot: dict[str, Any]) -> None:
        doc = record.to_dict()
        doc["engine_snapshot"] = engine_snapshot
        self._write(f"month_{record.month:02d}.json", doc)

    def write_summary(self, summary: dict[str, Any]) -> None:
        self._write("summary.json", summary)

    def _write(self, name: str, doc: dict[str, Any]) -> None:
        tmp = self.directory / (name + ".tmp")
        tmp.write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")
        tmp.replace(self.directory / name)

    def load_manifest(self) -> dict[str, Any]:
        return json.loads((self.directory / "manifest.json").read_text())

    def load_months(self) -> list[dict[str, Any]]:
        docs = []
        for month in range(1, SESSION_MONTHS + 1):
            path = self.directory / f"month_{month:02d}.json"
            if not path.is_file():
                break
            docs.append(json.loads(path.read_text()))
        return docs

    def load_log(self) -> SessionLog:
        manifest = self.load_manifest()
        months = [MonthRecord.from_dict(doc) for doc in self.load_months()]
        summary_path = self.directory / "summary.json"
        summary = json.loads(summary_path.read_text()) if summary_path.is_file() else None
        return SessionLog(
            session_id=manifest["session_id"], agent=manifest["agent"],
            scenario_id=manifest["scenario_id"],
            schema_version=manifest["schema_version"], seed=manifest["seed"],
            months=months, summary=summary,
        )


# ---------------------------------------------------------------------------
# Running sessions

def _fallback_decision(engine: SessionEngine, month: int) -> DecisionVector:
    """Previous month's applied decisions; month 1 falls back to the
    competitor-style neutral vector."""
    if engine.history:
        return engine.history[-1].decisions_applied
    return competitor_policy(month, engine.scenario.competitor)


def run_session(agent, scenario: Scenario, seed: int = 0,
                out_dir: Optional[str | Path] = None,
                agent_descriptor: Optional[AgentDescriptor] = None,
                session_id: Optional[str] = None,
                decision_hook: Optional[Callable[[int, DecisionVector], None]] = None,
                ) -> SessionLog:
    """Play 12 months of one agent against a scenario.

    An agent that raises (or keeps returning garbage) never aborts the session:
    the harness substitutes the fallback decision and flags the month. With
    ``out_dir`` every month is flushed before the next agent call; an existing
    directory is resumed, never recomputed.
    """
    agent_info = (agent_descriptor.to_dict() if agent_descriptor
                  else {"kind": "programmatic", "name": getattr(agent, "name", "agent")})
    store = SessionStore(out_dir) if out_dir else None
    engine = SessionEngine(scenario=scenario)
    log = SessionLog(
        session_id=session_id or uuid.uuid4().hex[:12],
        agent=agent_info,
        scenario_id=scenario.scenario_id,
        schema_version=scenario.schema_version,
        seed=seed,
    )

    start_month = 1
    if store and (store.directory / "manifest.json").is_file():
        manifest = store.load_manifest()
        log.session_id = manifest["session_id"]
        log.agent = manifest["agent"]
        log.seed = manifest["seed"]
        docs = store.load_months()
        if docs:
            snapshot = docs[-1]["engine_snapshot"]
            records = [MonthRecord.from_dict(d) for d in docs]
            engine = SessionEngine.resume(scenario, snapshot,
                                          [r.report for r in records])
            log.months = records
            start_month = len(docs) + 1
    elif store:
        store.create(log, engine.snapshot())

    for month in range(start_month, SESSION_MONTHS + 1):
        started = time.monotonic()
        raw_text, diagnostics, attempts, fallback = "", [], 1, False
        try:
            decision = agent.decide(engine.history, month)
        except Exception as exc:   # agent failure is a logged event, not a crash
            decision = _fallback_decision(engine, month)
            diagnostics = [("agent", str(exc))]
            fallback = True
        last_result = getattr(agent, "last_result", None)
        if last_result is not None:
            raw_text = last_result.raw_text
            attempts = last_result.attempts
            diagnostics = diagnostics + list(last_result.diagnostics)
        if decision_hook:
            decision_hook(month, decision)

        report = engine.play_month(decision)
        record = MonthRecord(month=month, report=report, raw_text=raw_text,
                             diagnostics=diagnostics, attempts=attempts,
                             fallback=fallback,
                             timing_s=time.monotonic() - started)
        log.months.append(record)
        if store:
            store.write_month(record, engine.snapshot())

    log.summary = build_summary(log, scenario)
    if store:
        store.write_summary(log.summary)
    return log


# ---------------------------------------------------------------------------
# Trajectory analytics

def detect_collapse(revenues: Sequence[float],
                    threshold: float = COLLAPSE_THRESHOLD) -> Optional[int]:
    """Smallest month from which revenue stays below the threshold; None if it
    recovers (or never drops)."""
    collapse = None
    for month, revenue in enumerate(revenues, start=1):
        if revenue < threshold:
            if collapse is None:
                collapse = month
        else:
            collapse = None
    return collapse


def _relative_changes(series: Sequence[float]) -> list[float]:
    changes = []
    for prev, cur in zip(series, series[1:]):
        if prev == 0:
            changes.append(0.0 if cur == 0 else 1.0)
        else:
            changes.append((cur - prev) / abs(prev))
    return changes


def _volatility(series: Sequence[float]) -> float:
    changes = _relative_changes(series)
    if len(changes) < 2:
        return 0.0
    return statistics.pstdev(changes)


def _reversals(series: Sequence[float], threshold: float = 0.20) -> int:
    """Sign flips of consecutive changes where the flip leg exceeds the threshold."""
    changes = _relative_changes(series)
    count = 0
    for prev, cur in zip(changes, changes[1:]):
        if prev * cur < 0 and abs(cur) > threshold:
            count += 1
    return count


def coherence_metrics(log: SessionLog) -> dict[str, float]:
    prices = [m.report.decisions_applied.price for m in log.months]
    orders = [m.report.decisions_applied.order_units for m in log.months]
    return {
        "price_volatility": _volatility(prices),
        "order_volatility": _volatility(orders),
        "price_reversals": _reversals(prices),
        "order_reversals": _reversals(orders),
        "reversal_count": _reversals(prices) + _reversals(orders),
    }


def build_summary(log: SessionLog, scenario: Scenario) -> dict[str, Any]:
    """Terminal summary: annual statements plus the session KPI block."""
    reports = log.reports
    flows = [r.flows for r in reports]
    params = scenario.params

    def total(getter) -> float:
        return round(sum(getter(r) for r in reports), 2)

    def average(getter) -> float:
        return round(sum(getter(r) for r in reports) / len(reports), 2)

    income_total = {
        "REVENUE": total(lambda r: r.statements.income.revenue),
        "Materials expense": total(lambda r: r.statements.income.materials_expense),
        "Staff costs": total(lambda r: r.statements.income.staff_costs),
        "Depreciation expense": total(lambda r: r.statements.income.depreciation),
        "Other operating expenses": total(lambda r: r.statements.income.other_opex),
        "TOTAL COSTS AND EXPENSES": total(lambda r: r.statements.income.total_costs),
        "OPERATING INCOME": total(lambda r: r.statements.income.operating_income),
        "Interest expense": total(lambda r: r.statements.income.interest),
        "PROFIT BEFORE TAX": total(lambda r: r.statements.income.profit_before_tax),
        "Income tax expense": total(lambda r: r.statements.income.tax),
        "NET INCOME": total(lambda r: r.statements.income.net_income),
    }
    balance_avg = {
        "Cash (overdraft if negative)": average(lambda r: r.statements.balance.cash),
        "Accounts receivable": average(lambda r: r.statements.balance.receivables),
        "Inventory": average(lambda r: r.statements.balance.inventory_value),
        "Total current assets": average(lambda r: r.statements.balance.total_current_assets),
        "Accumulated depreciation (buildings)": average(
            lambda r: r.statements.balance.buildings_accum_depr),
        "Accumulated depreciation (equipment)": average(
            lambda r: r.statements.balance.equipment_accum_depr),
        "TOTAL ASSETS": average(lambda r: r.statements.balance.total_assets),
        "Long-term debt": average(lambda r: r.statements.balance.long_term_debt),
        "Provisions": average(lambda r: r.statements.balance.provisions),
        "Retained earnings": average(lambda r: r.statements.balance.retained_earnings),
        "Total equity": average(lambda r: r.statements.balance.total_equity),
    }
    cash_flow_avg = {
        "Net income": average(lambda r: r.statements.cash_flow.net_income),
        "Depreciation and amortization": average(
            lambda r: r.statements.cash_flow.depreciation_addback),
        "Changes in inventory": average(lambda r: r.statements.cash_flow.inventory_change),
        "Changes in provisions": average(lambda r: r.statements.cash_flow.provisions_change),
        "Changes in receivables": average(lambda r: r.statements.cash_flow.receivables_change),
        "Loans": average(lambda r: r.statements.cash_flow.loans),
        "Dividends": average(lambda r: r.statements.cash_flow.dividends),
        "Net increase (decrease) in cash and cash equivalents": average(
            lambda r: r.statements.cash_flow.net_cash_change),
        "Cash and cash equivalents at end of period": average(
            lambda r: r.statements.cash_flow.cash_end),
    }

    revenue_total = income_total["REVENUE"]
    ni_total = income_total["NET INCOME"]
    own_sold = sum(r.market.own_sold for r in reports)
    comp_sold = sum(r.market.comp_sold for r in reports)
    logistics = logistics_metrics(flows, params)
    kpis = {
        "ROI%": average(lambda r: r.kpi.roi_pct or 0.0),
        "ROA%": average(lambda r: r.kpi.roa_pct or 0.0),
        "Leverage %": average(lambda r: r.kpi.leverage_pct or 0.0),
        "Gross profit margin (%)": (
            None if revenue_total == 0 else round(
                100.0 * sum(
                    r.statements.income.revenue - r.statements.income.materials_expense
                    - r.statements.income.staff_costs - r.statements.income.other_opex
                    for r in reports) / revenue_total, 2)),
        "Net profit margin %": (None if revenue_total == 0
                                else round(100.0 * ni_total / revenue_total, 2)),
        "Share price": reports[-1].kpi.share_price if reports else None,
        "Market capitalization": reports[-1].kpi.market_cap if reports else None,
        "Sales forecast error % (missing target)": average(
            lambda r: r.kpi.sales_forecast_error_pct),
        "Profit forecast error % (missing target)": average(
            lambda r: r.kpi.profit_forecast_error_pct),
        "Market share %": (round(100.0 * own_sold / (own_sold + comp_sold), 2)
                           if own_sold + comp_sold else 0.0),
        "Hiring": sum(r.kpi.hiring for r in reports),
        "Redundancy": sum(r.kpi.redundancy for r in reports),
        "Hiring and dismissal cost": total(lambda r: r.kpi.hiring_dismissal_cost),
        "Worker wages": total(lambda r: r.kpi.worker_wages),
        "Sales and administrative wages": total(lambda r: r.kpi.sa_wages),
        "Training expense $": total(lambda r: r.kpi.training_expense),
        "Productivity (hourly per worker)": logistics["productivity_hourly"],
        "Capacity utilization %": logistics["capacity_utilization_pct"],
        "Carbon footprint metric (tons of CO2)": total(lambda r: r.kpi.carbon_tons),
        "Average physical inventory": logistics["avg_inventory_units"],
        "Environmental index": reports[-1].kpi.env_index if reports else None,
        "Total storage and material cost": logistics["storage_material_cost"],
        "Freight cost (fixed plus variable)": logistics["freight_cost"],
        "Inventory service level % (Fill Rate)": logistics["fill_rate_pct"],
    }

    return {
        "income_statement_total": income_total,
        "balance_sheet_avg": balance_avg,
        "cash_flow_avg": cash_flow_avg,
        "kpis": kpis,
        "collapse_month": detect_collapse(log.revenues()),
        "coherence": coherence_metrics(log),
        "months_completed": len(reports),
        "fallback_months": [m.month for m in log.months if m.fallback],
        "session_hash": log.content_hash(),
    }


# ---------------------------------------------------------------------------
# Leaderboard

LEADERBOARD_COLUMNS = (
    "agent", "revenue_total", "net_income_total", "net_profit_margin_pct",
    "final_market_share_pct", "collapse_month", "sales_forecast_error_pct",
    "profit_forecast_error_pct", "carbon_total_tons",
)


def build_leaderboard(logs: Sequence[SessionLog]) -> list[dict[str, Any]]:
    """Table-shaped rows, best net-profit-margin first, ties by net income."""
    if not logs:
        return []
    rows = []
    for log in logs:
        revenue = round(sum(log.revenues()), 2)
        net_income = round(sum(m.report.flows.net_income for m in log.months), 2)
        margin = net_profit_margin(net_income, revenue)
        final_share = (log.months[-1].report.kpi.market_share_pct
                       if log.months else None)
        rows.append({
            "agent": log.agent.get("name", log.session_id),
            "revenue_total": revenue,
            "net_income_total": net_income,
            "net_profit_margin_pct": None if margin is None else round(margin, 2),
            "final_market_share_pct": final_share,
            "collapse_month": detect_collapse(log.revenues()),
            "sales_forecast_error_pct": round(statistics.fmean(
                m.report.kpi.sales_forecast_error_pct for m in log.months), 2),
            "profit_forecast_error_pct": round(statistics.fmean(
                m.report.kpi.profit_forecast_error_pct for m in log.months), 2),
            "carbon_total_tons": round(sum(
                m.report.kpi.carbon_tons for m in log.months), 2),
        })
    rows.sort(key=lambda r: (
        -(r["net_profit_margin_pct"] if r["net_profit_margin_pct"] is not None
          else -math.inf),
        -r["net_income_total"]))
    return rows


# ---------------------------------------------------------------------------
# Export

CSV_HEADERS = ("Current year",) + tuple(CANONICAL_LABELS.values()) \
    + ("Revenue", "Net income from operations")


def _csv_cell(value: Any) -> str:
    if isinstance(value, float) and value == int(value):
        return str(int(value))
    return str(value)


def export_session_json(log: SessionLog, path: str | Path) -> Path:
    """Structured export: the full session log as one canonical JSON document."""
    path = Path(path)
    try:
        path.write_text(canonical_json(log.to_dict()) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write session export to {path}: {exc}") from exc
    return path


def import_session_json(path: str | Path) -> SessionLog:
    return SessionLog.from_dict(json.loads(Path(path).read_text()))


def export_session_csv(log: SessionLog, path: str | Path) -> Path:
    """Tabular export: submitted decisions plus the two plotted series."""
    lines = [",".join(f'"{h}"' for h in CSV_HEADERS)]
    for record in log.months:
        d = record.report.decisions_submitted
        cells = [MONTHS[record.month - 1]]
        cells += [_csv_cell(getattr(d, name)) for name in DecisionVector.FIELD_ORDER]
        cells += [_csv_cell(record.report.flows.revenue),
                  _csv_cell(record.report.flows.net_income)]
        lines.append(",".join(cells))
    path = Path(path)
    try:
        path.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write CSV export to {path}: {exc}") from exc
    return path


def export_leaderboard_csv(rows: Sequence[dict[str, Any]], path: str | Path) -> Path:
    lines = [",".join(LEADERBOARD_COLUMNS)]
    for row in rows:
        lines.append(",".join(_csv_cell(row[c]) if row[c] is not None else ""
                              for c in LEADERBOARD_COLUMNS))
    path = Path(path)
    path.write_text("\n".join(lines) + "\n")
    return path
