from __future__ import annotations

import pytest

from retailbench.engine import DecisionVector
from retailbench.params import SimParams
from retailbench.scenario import builtin_scenario
from retailbench.session import SessionEngine

_acceptance_lines: list[str] = []


def pytest_runtest_logreport(report):
    """Collect one PASS/FAIL line per acceptance criterion."""
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    verdict = "PASS" if report.passed else "FAIL"
    _acceptance_lines.append(f"ACCEPTANCE {verdict}  {name}")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.write_line("")
        terminalreporter.write_line("=" * 72)
        terminalreporter.write_line("Acceptance criteria")
        terminalreporter.write_line("=" * 72)
        for line in _acceptance_lines:
            terminalreporter.write_line(line)

YEAR0_ORDERS = [4000] * 6 + [3000] * 6


@pytest.fixture(scope="session")
def params() -> SimParams:
    return SimParams()


@pytest.fixture(scope="session")
def default_scenario():
    return builtin_scenario("default")


@pytest.fixture(scope="session")
def year0_scenario():
    return builtin_scenario("year0-replay")


def play_year0_replay(scenario):
    """Replay the reference year: price 110, the reconstructed order stream,
    all other decisions zero."""
    engine = SessionEngine(scenario=scenario)
    reports = []
    for month in range(1, 13):
        decision = DecisionVector(order_units=YEAR0_ORDERS[month - 1], price=110.0)
        reports.append(engine.play_month(decision))
    return reports


@pytest.fixture(scope="session")
def year0_reports(year0_scenario):
    return play_year0_replay(year0_scenario)
