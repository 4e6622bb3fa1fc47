"""LLM adapter tests against a local scripted endpoint: happy path, re-ask on
malformed output, transport failure, and auth errors."""

from __future__ import annotations

import json
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from retailbench.agents.llm import (ChatEndpoint, EndpointConfigError, LlmAgent,
                                    TransportError, chat_completion, llm_decide)

VALID_BLOCK = "\n".join([
    "Your order in units (required): 4,000",
    "Price $ (required): 108",
    "Workers hired: 1",
    "Workers dismissed: -",
    "Marketing expense $: 12,000",
    "Loans $: -",
    "Training expense $: 5,000",
    "R&D expense $: 5,000",
    "Sales forecast next period $: 400,000",
    "Net income forecast $: 15,000",
])


class ScriptedEndpoint:
    """Serves canned chat-completion replies in order; records requests."""

    def __init__(self, replies):
        self.replies = list(replies)
        self.requests = []
        self.lock = threading.Lock()
        endpoint_self = self

        class Handler(BaseHTTPRequestHandler):
            def log_message(self, fmt, *args):
                pass

            def do_POST(self):
                length = int(self.headers.get("Content-Length") or 0)
                body = json.loads(self.rfile.read(length)) if length else {}
                with endpoint_self.lock:
                    endpoint_self.requests.append(body)
                    action = (endpoint_self.replies.pop(0)
                              if endpoint_self.replies else {"text": ""})
                if action.get("sleep"):
                    time.sleep(action["sleep"])
                status = action.get("status", 200)
                if status != 200:
                    self.send_response(status)
                    self.end_headers()
                    return
                doc = {"choices": [{"message": {"role": "assistant",
                                                "content": action["text"]}}],
                       "usage": {"total_tokens": 42}, "model": "scripted"}
                payload = json.dumps(doc).encode()
                self.send_response(200)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(payload)))
                self.end_headers()
                self.wfile.write(payload)

        self.server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)
        self.thread.start()

    @property
    def base_url(self) -> str:
        host, port = self.server.server_address
        return f"http://{host}:{port}/v1"

    def close(self):
        self.server.shutdown()


@pytest.fixture()
def api_key(monkeypatch):
    monkeypatch.setenv("RETAILBENCH_API_KEY", "test-token")


def make_endpoint(base_url, **overrides):
    defaults = dict(base_url=base_url, model="scripted", max_retries=1,
                    request_timeout_s=2.0, deadline_s=10.0)
    defaults.update(overrides)
    return ChatEndpoint(**defaults)


class TestChatCompletion:
    def test_happy_path_carries_usage(self, api_key):
        server = ScriptedEndpoint([{"text": "hello"}])
        try:
            reply = chat_completion(make_endpoint(server.base_url),
                                    [{"role": "user", "content": "hi"}])
            assert reply["text"] == "hello"
            assert reply["usage"]["total_tokens"] == 42
            sent = server.requests[0]
            assert sent["model"] == "scripted"
            assert sent["messages"][0]["content"] == "hi"
        finally:
            server.close()

    def test_missing_token_is_config_error(self, monkeypatch):
        monkeypatch.delenv("RETAILBENCH_API_KEY", raising=False)
        with pytest.raises(EndpointConfigError):
            chat_completion(make_endpoint("http://127.0.0.1:1/v1"), [])

    def test_auth_rejection_is_immediate(self, api_key):
        server = ScriptedEndpoint([{"status": 401}, {"text": "never"}])
        try:
            with pytest.raises(EndpointConfigError):
                chat_completion(make_endpoint(server.base_url),
                                [{"role": "user", "content": "hi"}])
            assert len(server.requests) == 1   # no retry on auth failure
        finally:
            server.close()

    def test_transport_retries_then_fails(self, api_key):
        server = ScriptedEndpoint([{"status": 500}, {"status": 500}, {"status": 500}])
        try:
            endpoint = make_endpoint(server.base_url, max_retries=2, deadline_s=5.0)
            with pytest.raises(TransportError):
                chat_completion(endpoint, [{"role": "user", "content": "hi"}])
            assert len(server.requests) == 3   # initial call + two retries
        finally:
            server.close()

    def test_retry_then_success(self, api_key):
        server = ScriptedEndpoint([{"status": 500}, {"text": "recovered"}])
        try:
            endpoint = make_endpoint(server.base_url, max_retries=2)
            assert chat_completion(endpoint, [{"role": "user", "content": "x"}])["text"] \
                == "recovered"
        finally:
            server.close()


class TestLlmDecide:
    def test_valid_block_first_attempt(self, api_key):
        server = ScriptedEndpoint([{"text": VALID_BLOCK}])
        try:
            result, transcript = llm_decide(make_endpoint(server.base_url),
                                            [{"role": "user", "content": "go"}])
            assert result.ok and result.attempts == 1
            assert result.decision.order_units == 4000
            assert len(transcript) == 1
        finally:
            server.close()

    def test_prose_then_valid_block_counts_two_attempts(self, api_key):
        server = ScriptedEndpoint([
            {"text": "Let me think about strategy in general terms..."},
            {"text": VALID_BLOCK},
        ])
        try:
            result, transcript = llm_decide(make_endpoint(server.base_url),
                                            [{"role": "user", "content": "go"}])
            assert result.ok and result.attempts == 2
            assert len(transcript) == 2
            # the re-ask carried a format reminder
            reminder = server.requests[1]["messages"][-1]["content"]
            assert "could not be parsed" in reminder
        finally:
            server.close()

    def test_timeouts_exhaust_to_absent_decision(self, api_key):
        server = ScriptedEndpoint([{"sleep": 3.0, "text": "late"}] * 4)
        try:
            endpoint = make_endpoint(server.base_url, max_retries=2,
                                     request_timeout_s=0.3, deadline_s=2.0)
            result, transcript = llm_decide(endpoint, [{"role": "user", "content": "go"}])
            assert not result.ok
            assert any(field == "transport" for field, _ in result.diagnostics)
        finally:
            server.close()

    def test_wall_clock_deadline_bounds_the_call(self, api_key):
        server = ScriptedEndpoint([{"sleep": 5.0, "text": "late"}] * 6)
        try:
            endpoint = make_endpoint(server.base_url, max_retries=5,
                                     request_timeout_s=0.4, deadline_s=1.5)
            started = time.monotonic()
            result, _ = llm_decide(endpoint, [{"role": "user", "content": "go"}])
            elapsed = time.monotonic() - started
            assert not result.ok
            assert elapsed < 6.0
        finally:
            server.close()


class TestLlmAgent:
    def test_conversation_accumulates_all_turns(self, api_key, default_scenario):
        server = ScriptedEndpoint([{"text": VALID_BLOCK}] * 3)
        try:
            endpoint = make_endpoint(server.base_url)
            agent = LlmAgent(endpoint, default_scenario, name="scripted")
            from retailbench.session import SessionEngine
            engine = SessionEngine(scenario=default_scenario)
            for month in (1, 2, 3):
                decision = agent.decide(engine.history, month)
                engine.play_month(decision)
            # month 3 request resends the initial briefing plus both prior turns
            third = server.requests[2]["messages"]
            assert len(third) == 1 + 2 * 2 + 1
            assert "Retailer One" in third[0]["content"]
        finally:
            server.close()

    def test_truncation_keeps_last_n_months(self, api_key, default_scenario):
        server = ScriptedEndpoint([{"text": VALID_BLOCK}] * 5)
        try:
            endpoint = make_endpoint(server.base_url)
            agent = LlmAgent(endpoint, default_scenario, keep_months=1)
            from retailbench.session import SessionEngine
            engine = SessionEngine(scenario=default_scenario)
            for month in (1, 2, 3, 4):
                engine.play_month(agent.decide(engine.history, month))
            fourth = server.requests[3]["messages"]
            assert len(fourth) == 1 + 2 * 1 + 1
        finally:
            server.close()


class TestLlmInHarness:
    def test_llm_agent_through_run_session(self, api_key, default_scenario, tmp_path):
        """Full integration: 12 months of an endpoint-backed agent, including
        one re-ask month and one transport-failure month that falls back."""
        replies = []
        for month in range(1, 13):
            if month == 4:
                replies.append({"text": "Hmm, strategy thoughts, no numbers."})
                replies.append({"text": VALID_BLOCK})
            elif month == 7:
                replies.extend([{"status": 500}] * 2)
            else:
                replies.append({"text": VALID_BLOCK})
        server = ScriptedEndpoint(replies)
        try:
            from retailbench.agents import AgentDescriptor, build_agent
            from retailbench.harness import run_session
            descriptor = AgentDescriptor(
                kind="llm", name="scripted-endpoint",
                endpoint={"base_url": server.base_url, "model": "scripted",
                          "max_retries": 1, "request_timeout_s": 2.0,
                          "deadline_s": 8.0})
            agent = build_agent(descriptor, default_scenario)
            log = run_session(agent, default_scenario, seed=0,
                              out_dir=tmp_path / "llm-session",
                              agent_descriptor=descriptor)
            assert len(log.months) == 12
            assert log.months[3].attempts == 2            # re-ask month
            assert log.months[6].fallback                 # transport-failure month
            assert log.months[0].raw_text.startswith("Your order in units")
            assert not log.months[0].fallback
            for record in log.months:
                assert record.report.verify(default_scenario.params) == []
        finally:
            server.close()
