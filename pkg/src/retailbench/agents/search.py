"""Local search over the 12x10 decision tensor, simulator in the loop.

Seeded from the heuristic baseline, the hill climb perturbs one (month, field)
coordinate at a time and keeps the change only when cumulative net income
improves. Everything is driven by a seeded RNG, so a (seed, budget) pair gives
identical output on every run.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace as dc_replace
from typing import Callable, Sequence

from ..engine import DecisionVector
from ..scenario import Scenario
from ..session import SESSION_MONTHS, SessionEngine
from .base import HeuristicAgent

# Fields the climber may perturb, with (kind, step scale).
_MUTABLE = (
    ("order_units", "units"),
    ("price", "price"),
    ("workers_hired", "count"),
    ("workers_dismissed", "count"),
    ("marketing_expense", "money"),
    ("loans", "money"),
    ("training_expense", "money"),
    ("rnd_expense", "money"),
)


@dataclass(frozen=True)
class SearchResult:
    sequence: tuple[DecisionVector, ...]
    score: float
    evaluations: int
    best_curve: tuple[float, ...]   # best-so-far after each evaluation


def evaluate_sequence(scenario: Scenario, sequence: Sequence[DecisionVector]) -> float:
    """Cumulative net income of a full 12-month run of the sequence."""
    engine = SessionEngine(scenario=scenario)
    total = 0.0
    for month in range(1, SESSION_MONTHS + 1):
        report = engine.play_month(sequence[month - 1])
        total += report.flows.net_income
    return total


def heuristic_seed_sequence(scenario: Scenario) -> list[DecisionVector]:
    """The heuristic baseline's own trajectory, replayed open-loop."""
    agent = HeuristicAgent(scenario)
    engine = SessionEngine(scenario=scenario)
    sequence = []
    for month in range(1, SESSION_MONTHS + 1):
        decision = agent.decide(engine.history, month)
        sequence.append(decision)
        engine.play_month(decision)
    return sequence


def _perturb(rng: random.Random, decision: DecisionVector, fld: str, kind: str) -> DecisionVector:
    value = float(getattr(decision, fld))
    if kind == "count":
        new = max(0.0, value + rng.choice((-2, -1, 1, 2)))
    elif kind == "price":
        factor = rng.choice((0.8, 0.9, 0.95, 1.05, 1.1, 1.25))
        new = max(1.0, round(value * factor, 2)) if value > 0 else float(rng.randint(60, 160))
    elif kind == "units":
        if value > 0:
            new = max(0.0, round(value * rng.choice((0.5, 0.75, 0.9, 1.1, 1.25, 1.5))))
        else:
            new = float(rng.choice((0, 1000, 2000, 4000)))
    else:  # money
        if value > 0:
            new = max(0.0, round(value * rng.choice((0.0, 0.5, 0.8, 1.25, 2.0)), 2))
        else:
            new = float(rng.choice((0, 2500, 5000, 10000, 25000)))
    return dc_replace(decision, **{fld: new})


def search_policy(evaluate: Callable[[Sequence[DecisionVector]], float],
                  budget: int, seed: int,
                  seed_sequence: Sequence[DecisionVector]) -> SearchResult:
    """Hill-climb ``seed_sequence`` under an evaluation budget (the seed's own
    evaluation counts, so budget 1 returns the seed unchanged)."""
    if budget < 1:
        raise ValueError("search budget must be >= 1")
    rng = random.Random(seed)
    best = list(seed_sequence)
    best_score = evaluate(best)
    curve = [best_score]
    for _ in range(budget - 1):
        month = rng.randrange(SESSION_MONTHS)
        fld, kind = _MUTABLE[rng.randrange(len(_MUTABLE))]
        candidate = list(best)
        candidate[month] = _perturb(rng, candidate[month], fld, kind)
        score = evaluate(candidate)
        if score > best_score:
            best, best_score = candidate, score
        curve.append(best_score)
    return SearchResult(sequence=tuple(best), score=best_score,
                        evaluations=len(curve), best_curve=tuple(curve))


class SearchAgent:
    """Runs the hill climb up front, then plays the best sequence."""

    def __init__(self, scenario: Scenario, budget: int, seed: int = 0,
                 name: str = "search"):
        self.name = name
        result = search_policy(
            lambda seq: evaluate_sequence(scenario, seq),
            budget=budget, seed=seed,
            seed_sequence=heuristic_seed_sequence(scenario))
        self.result = result

    def decide(self, history, month: int) -> DecisionVector:
        return self.result.sequence[month - 1]
