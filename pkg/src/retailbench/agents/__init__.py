"""Decision policies: replay fixtures, heuristics, local search, live LLMs."""

from .base import Agent, AgentDescriptor, FailingAgent, HeuristicAgent, ScriptedAgent
from .llm import ChatEndpoint, EndpointConfigError, LlmAgent, TransportError, llm_decide
from .parsing import (DecisionParseResult, parse_decision_block,
                      serialize_decision_block)
from .prompts import render_followup_prompt, render_initial_prompt, render_year0_block
from .replay import FixtureError, ReplayAgent, ReplayFixture, bundled_fixture_ids, load_fixture
from .search import SearchAgent, SearchResult, evaluate_sequence, search_policy

__all__ = [
    "Agent", "AgentDescriptor", "FailingAgent", "HeuristicAgent", "ScriptedAgent",
    "ChatEndpoint", "EndpointConfigError", "LlmAgent", "TransportError", "llm_decide",
    "DecisionParseResult", "parse_decision_block", "serialize_decision_block",
    "render_followup_prompt", "render_initial_prompt", "render_year0_block",
    "FixtureError", "ReplayAgent", "ReplayFixture", "bundled_fixture_ids", "load_fixture",
    "SearchAgent", "SearchResult", "evaluate_sequence", "search_policy",
]


def build_agent(descriptor: AgentDescriptor, scenario):
    """Construct an agent from its descriptor for a given scenario."""
    if descriptor.kind == "replay":
        return ReplayAgent(descriptor.fixture, name=descriptor.name)
    if descriptor.kind == "heuristic":
        return HeuristicAgent(scenario, name=descriptor.name)
    if descriptor.kind == "search":
        return SearchAgent(scenario, budget=max(1, descriptor.search_budget),
                           seed=int(descriptor.options.get("seed", 0)),
                           name=descriptor.name)
    if descriptor.kind == "llm":
        endpoint = ChatEndpoint.from_dict(descriptor.endpoint)
        return LlmAgent(endpoint, scenario, name=descriptor.name,
                        keep_months=descriptor.options.get("keep_months"))
    raise ValueError(f"unknown agent kind {descriptor.kind}")
