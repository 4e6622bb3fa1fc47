"""Live LLM adapter speaking the OpenAI-compatible chat-completion contract.

One benchmark session is one independent conversation: every month's request
re-sends the prior turns (optionally truncated to the last N months for small
context windows). Transport failures retry with exponential backoff under a
hard wall-clock deadline; a malformed reply gets exactly one re-ask with a
format reminder before the harness falls back.
"""

from __future__ import annotations

import json
import os
import time
import urllib.error
import urllib.request
from dataclasses import dataclass
from typing import Any, Optional

from ..report import MonthlyReport
from ..scenario import Scenario
from .parsing import DecisionParseResult, parse_decision_block
from .prompts import render_followup_prompt, render_initial_prompt


class EndpointConfigError(RuntimeError):
    """Unusable endpoint configuration (e.g. the auth variable is not set)."""


class TransportError(RuntimeError):
    """Network-level failure after exhausting retries."""


@dataclass(frozen=True)
class ChatEndpoint:
    base_url: str
    model: str
    api_key_env: str = "RETAILBENCH_API_KEY"
    temperature: float = 0.2
    max_retries: int = 3
    request_timeout_s: float = 60.0
    deadline_s: float = 240.0        # wall-clock budget for one decision, re-ask included

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ChatEndpoint":
        return cls(
            base_url=data["base_url"],
            model=data["model"],
            api_key_env=data.get("api_key_env", "RETAILBENCH_API_KEY"),
            temperature=float(data.get("temperature", 0.2)),
            max_retries=int(data.get("max_retries", 3)),
            request_timeout_s=float(data.get("request_timeout_s", 60.0)),
            deadline_s=float(data.get("deadline_s", 240.0)),
        )

    def to_dict(self) -> dict[str, Any]:
        return {"base_url": self.base_url, "model": self.model,
                "api_key_env": self.api_key_env, "temperature": self.temperature,
                "max_retries": self.max_retries,
                "request_timeout_s": self.request_timeout_s,
                "deadline_s": self.deadline_s}


def _resolve_key(endpoint: ChatEndpoint) -> str:
    key = os.environ.get(endpoint.api_key_env, "")
    if not key:
        raise EndpointConfigError(
            f"auth token variable {endpoint.api_key_env} is not set")
    return key


def chat_completion(endpoint: ChatEndpoint, messages: list[dict[str, str]],
                    deadline: Optional[float] = None) -> dict[str, Any]:
    """POST one chat completion; returns {text, latency_s, usage, model}.

    Retries transport failures with exponential backoff until max_retries or
    the deadline; auth problems surface immediately as EndpointConfigError.
    """
    key = _resolve_key(endpoint)
    url = endpoint.base_url.rstrip("/") + "/chat/completions"
    payload = json.dumps({
        "model": endpoint.model,
        "messages": messages,
        "temperature": endpoint.temperature,
    }).encode()
    deadline = deadline if deadline is not None else time.monotonic() + endpoint.deadline_s

    backoff = 1.0
    last_error: Exception | None = None
    for attempt in range(endpoint.max_retries + 1):
        remaining = deadline - time.monotonic()
        if remaining <= 0:
            break
        request = urllib.request.Request(
            url, data=payload,
            headers={"Content-Type": "application/json",
                     "Authorization": f"Bearer {key}"})
        started = time.monotonic()
        try:
            with urllib.request.urlopen(
                    request, timeout=min(endpoint.request_timeout_s, remaining)) as resp:
                body = json.loads(resp.read().decode())
            text = body["choices"][0]["message"]["content"]
            return {"text": text, "latency_s": time.monotonic() - started,
                    "usage": body.get("usage"), "model": body.get("model", endpoint.model)}
        except urllib.error.HTTPError as exc:
            if exc.code in (401, 403):
                raise EndpointConfigError(f"endpoint rejected credentials ({exc.code})") from exc
            last_error = exc
        except (urllib.error.URLError, TimeoutError, OSError, KeyError,
                json.JSONDecodeError, IndexError) as exc:
            last_error = exc
        if attempt < endpoint.max_retries:
            time.sleep(min(backoff, max(0.0, deadline - time.monotonic())))
            backoff *= 2
    raise TransportError(f"chat completion failed after retries: {last_error}")


FORMAT_REMINDER = (
    "Your previous reply could not be parsed. Respond again with ONLY the decision "
    "block: one 'Field: value' line for each of the ten fields, numbers only."
)


def llm_decide(endpoint: ChatEndpoint, messages: list[dict[str, str]]) -> tuple[
        DecisionParseResult, list[dict[str, Any]]]:
    """Ask for a decision; on a parse failure, re-ask once with a reminder.

    Returns the parse result (attempts counted) and the transcript of raw
    exchanges for the session log.
    """
    deadline = time.monotonic() + endpoint.deadline_s
    transcript: list[dict[str, Any]] = []
    conversation = list(messages)
    try:
        reply = chat_completion(endpoint, conversation, deadline)
    except TransportError as exc:
        result = DecisionParseResult(decision=None,
                                     diagnostics=[("transport", str(exc))],
                                     raw_text="", attempts=1)
        return result, transcript
    transcript.append(reply)
    result = parse_decision_block(reply["text"])
    if result.ok:
        return result, transcript

    conversation = conversation + [
        {"role": "assistant", "content": reply["text"]},
        {"role": "user", "content": FORMAT_REMINDER},
    ]
    try:
        retry = chat_completion(endpoint, conversation, deadline)
    except TransportError as exc:
        result.attempts = 2
        result.diagnostics.append(("transport", str(exc)))
        return result, transcript
    transcript.append(retry)
    second = parse_decision_block(retry["text"])
    second.attempts = 2
    return second, transcript


class LlmAgent:
    """Policy backed by a live chat endpoint.

    ``keep_months`` truncates the resent conversation to the system framing
    plus the last N month exchanges (None resends everything).
    """

    def __init__(self, endpoint: ChatEndpoint, scenario: Scenario,
                 name: str = "llm", keep_months: Optional[int] = None):
        self.endpoint = endpoint
        self.scenario = scenario
        self.name = name
        self.keep_months = keep_months
        self._turns: list[tuple[dict[str, str], dict[str, str]]] = []
        self._initial: Optional[dict[str, str]] = None
        self.last_result: Optional[DecisionParseResult] = None
        self.last_transcript: list[dict[str, Any]] = []

    def _messages_for(self, history: list[MonthlyReport], month: int) -> list[dict[str, str]]:
        if month == 1 or self._initial is None:
            self._initial = {"role": "user",
                             "content": render_initial_prompt(self.scenario.params,
                                                              self.scenario)}
        if month == 1:
            return [self._initial]
        prompt = render_followup_prompt(history[-1], month)
        messages = [self._initial]
        turns = self._turns if self.keep_months is None else self._turns[-self.keep_months:]
        for user, assistant in turns:
            messages.extend([user, assistant])
        messages.append({"role": "user", "content": prompt})
        return messages

    def decide(self, history: list[MonthlyReport], month: int):
        messages = self._messages_for(history, month)
        result, transcript = llm_decide(self.endpoint, messages)
        self.last_result = result
        self.last_transcript = transcript
        reply_text = transcript[-1]["text"] if transcript else ""
        self._turns.append((messages[-1], {"role": "assistant", "content": reply_text}))
        if not result.ok:
            problems = "; ".join(f"{f}: {p}" for f, p in result.diagnostics)
            raise RuntimeError(f"no parseable decision from endpoint ({problems})")
        return result.decision
