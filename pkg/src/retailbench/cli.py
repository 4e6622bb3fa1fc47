"""Command-line entry point wrapping every workflow.

Subcommands: bench (manifest -> sessions -> leaderboard), replay <fixture>,
play (terminal game over the same engine the HTTP flow uses), serve (start the
gateway), validate <scenario>, calibrate (fit the demand baseline and print
residuals), export <session dir>.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Optional

from . import year0
from .agents import AgentDescriptor, build_agent
from .engine import DecisionVector
from .harness import (MonthRecord, SessionLog, SessionStore, build_leaderboard,
                      build_summary, export_leaderboard_csv, export_session_csv,
                      export_session_json, run_session)
from .market import calibrate_base_units, calibration_residuals
from .params import SimParams
from .scenario import ScenarioError, get_scenario
from .session import SESSION_MONTHS, SessionEngine
from .statements import render_statements_text


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        scenario = get_scenario(args.scenario)
    except ScenarioError as exc:
        print(f"invalid scenario: {exc}", file=sys.stderr)
        return 1
    print(f"scenario '{scenario.scenario_id}' ok "
          f"(schema_version {scenario.schema_version}, "
          f"{len(scenario.param_overrides)} parameter overrides)")
    return 0


def cmd_calibrate(args: argparse.Namespace) -> int:
    params = SimParams()
    bulk = (5, 1000)
    base = calibrate_base_units(year0.UNIT_SALES, year0.GDP_GROWTH, params, bulk)
    residuals = calibration_residuals(base, year0.UNIT_SALES, year0.GDP_GROWTH,
                                      params, bulk)
    print("calibrated industry baseline (units per month):")
    for month, (value, residual) in enumerate(zip(base, residuals), start=1):
        marker = " (bulk month, excluded)" if month == bulk[0] else ""
        print(f"  month {month:2d}: {value:7d}   residual {100 * residual:6.3f}%{marker}")
    checked = [r for m, r in enumerate(residuals, start=1) if m != bulk[0]]
    worst = max(checked)
    print(f"max relative residual (bulk month excluded): {100 * worst:.3f}%")
    if worst > 0.02:
        print("calibration failed the 2% gate", file=sys.stderr)
        return 1
    return 0


def cmd_replay(args: argparse.Namespace) -> int:
    scenario = get_scenario(args.scenario)
    descriptor = AgentDescriptor(kind="replay", name=args.fixture, fixture=args.fixture)
    try:
        agent = build_agent(descriptor, scenario)
    except Exception as exc:
        print(f"cannot load fixture: {exc}", file=sys.stderr)
        return 1
    out_dir = Path(args.out) if args.out else Path("sessions") / f"replay-{agent.name}"
    log = run_session(agent, scenario, seed=args.seed, out_dir=out_dir,
                      agent_descriptor=descriptor)
    export_session_csv(log, out_dir / "decisions.csv")
    export_session_json(log, out_dir / "session.json")
    totals = log.summary["income_statement_total"]
    print(f"replayed '{agent.name}': revenue {totals['REVENUE']:,.0f}, "
          f"net income {totals['NET INCOME']:,.0f}, "
          f"collapse month {log.summary['collapse_month']}")
    print(f"session directory: {out_dir}")
    return 0


def _load_manifest(path: Path) -> dict[str, Any]:
    doc = json.loads(path.read_text())
    if "agents" not in doc or not isinstance(doc["agents"], list):
        raise ValueError("manifest needs an 'agents' list")
    doc.setdefault("scenarios", ["default"])
    doc.setdefault("repetitions", 1)
    return doc


def cmd_bench(args: argparse.Namespace) -> int:
    manifest_path = Path(args.manifest)
    if not manifest_path.is_file():
        print(f"manifest not found: {manifest_path}", file=sys.stderr)
        return 1
    try:
        manifest = _load_manifest(manifest_path)
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"bad manifest: {exc}", file=sys.stderr)
        return 1

    out_root = Path(args.out)
    out_root.mkdir(parents=True, exist_ok=True)
    jobs = []
    for agent_doc in manifest["agents"]:
        if args.endpoint_env and agent_doc.get("kind") == "llm" and agent_doc.get("endpoint"):
            agent_doc = {**agent_doc,
                         "endpoint": {**agent_doc["endpoint"],
                                      "api_key_env": args.endpoint_env}}
        descriptor = AgentDescriptor.from_dict(agent_doc)
        for scenario_name in manifest["scenarios"]:
            for rep in range(int(manifest["repetitions"])):
                jobs.append((descriptor, scenario_name, args.seed + rep))

    def run_one(job):
        descriptor, scenario_name, seed = job
        scenario = get_scenario(scenario_name)
        agent = build_agent(descriptor, scenario)
        out_dir = out_root / f"{descriptor.name}-{scenario_name}-s{seed}"
        return run_session(agent, scenario, seed=seed, out_dir=out_dir,
                           agent_descriptor=descriptor)

    with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
        logs = list(pool.map(run_one, jobs))

    rows = build_leaderboard(logs)
    export_leaderboard_csv(rows, out_root / "leaderboard.csv")
    (out_root / "leaderboard.json").write_text(json.dumps(rows, indent=1) + "\n")
    width = max((len(r["agent"]) for r in rows), default=5)
    print(f"{'agent':<{width}}  margin%  net income    revenue  collapse")
    for row in rows:
        margin = row["net_profit_margin_pct"]
        print(f"{row['agent']:<{width}}  "
              f"{margin if margin is not None else 'n/a':>7}  "
              f"{row['net_income_total']:>10,.0f}  {row['revenue_total']:>9,.0f}  "
              f"{row['collapse_month'] or '-'}")
    print(f"wrote {out_root / 'leaderboard.csv'}")
    return 0


def cmd_play(args: argparse.Namespace) -> int:
    scenario = get_scenario(args.scenario)
    engine = SessionEngine(scenario=scenario)
    scripted: Optional[list[dict[str, Any]]] = None
    if args.decisions_file:
        scripted = json.loads(Path(args.decisions_file).read_text())
        if not isinstance(scripted, list) or len(scripted) < SESSION_MONTHS:
            print("decisions file must hold a list of 12 decision objects",
                  file=sys.stderr)
            return 1

    print(f"New game on scenario '{scenario.scenario_id}'. "
          f"Starting inventory {scenario.params.initial_inventory_units:,} units, "
          f"cash {scenario.params.initial_cash:,.0f}.")
    while not engine.completed:
        month = engine.month
        if scripted is not None:
            decision = DecisionVector.from_dict(scripted[month - 1])
        else:
            print(f"\n--- Month {month}: enter decisions "
                  f"(blank line keeps the shown default 0) ---")
            values = {}
            for name in DecisionVector.FIELD_ORDER:
                raw = input(f"{name} [0]: ").strip()
                values[name] = float(raw) if raw else 0.0
            decision = DecisionVector(**values)
        report = engine.play_month(decision)
        print(render_statements_text(report.statements, report.month_name))
        if report.adjustment_notes:
            print("adjustments: " + "; ".join(report.adjustment_notes))
    print("\nYear complete.")
    if args.out:
        log = SessionLog(session_id="play", agent={"kind": "interactive", "name": "play"},
                         scenario_id=scenario.scenario_id,
                         schema_version=scenario.schema_version, seed=0,
                         months=[MonthRecord(month=r.month, report=r)
                                 for r in engine.history])
        log.summary = build_summary(log, scenario)
        store = SessionStore(args.out)
        store.create(log, engine.snapshot())
        for record in log.months:
            store.write_month(record, engine.snapshot())
        store.write_summary(log.summary)
        print(f"session directory: {args.out}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from .gateway import serve
    serve(args.sessions, host=args.host, port=args.port, static_dir=args.static)
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    store = SessionStore(args.session_dir)
    try:
        log = store.load_log()
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot load session from {args.session_dir}: {exc}", file=sys.stderr)
        return 1
    out = Path(args.out) if args.out else Path(args.session_dir)
    try:
        if args.format in ("structured", "both"):
            path = export_session_json(log, out / "session.json" if out.is_dir() else out)
            print(f"wrote {path}")
        if args.format in ("tabular", "both"):
            path = export_session_csv(log, out / "decisions.csv" if out.is_dir() else out)
            print(f"wrote {path}")
    except OSError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="retailbench",
        description="Month-stepped retail management simulation and agent benchmark.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a scenario file")
    p.add_argument("scenario", help="built-in scenario id or path to a scenario file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("calibrate",
                       help="fit the demand baseline to the reference year and print residuals")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("replay", help="replay a bundled or custom decision fixture")
    p.add_argument("fixture", help="fixture id (e.g. chatgpt, mistral) or path")
    p.add_argument("--scenario", default="default")
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("bench", help="run a benchmark manifest and build the leaderboard")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", default="bench-out")
    p.add_argument("--workers", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--endpoint-env", default=None,
                   help="override the auth-token env var for every llm agent")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("play", help="play a 12-month game in the terminal")
    p.add_argument("--scenario", default="default")
    p.add_argument("--decisions-file", default=None,
                   help="JSON list of 12 decision objects for scripted play")
    p.add_argument("--out", default=None, help="write a session directory here")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("serve", help="start the HTTP gateway")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8720)
    p.add_argument("--sessions", default="sessions")
    p.add_argument("--static", default=None, help="serve cockpit assets from this directory")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("export", help="re-export a persisted session")
    p.add_argument("session_dir")
    p.add_argument("--format", choices=("structured", "tabular", "both"), default="both")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
