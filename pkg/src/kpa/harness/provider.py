"""Completion-provider hook: the seam where a language model could drive
the harness. The default is scripted; an external provider is opt-in and
must behave identically from the harness's point of view."""

from __future__ import annotations

import json
import subprocess
from abc import ABC, abstractmethod

from .client import KnowledgeClient

QUERY_TOOL = {
    "name": "query",
    "description": "GET a knowledge endpoint path and observe the JSON response",
    "args": {"path": "string"},
}


class CompletionProvider(ABC):
    """One operation: given context and available tools, produce either the
    next tool call or a final answer."""

    @abstractmethod
    def complete(self, context: str, tools: list[dict]) -> dict:
        """Returns {"tool": name, "args": {...}} or {"answer": text}."""


class ScriptedCompletionProvider(CompletionProvider):
    def __init__(self, steps: list[dict]):
        self._steps = list(steps)

    def complete(self, context: str, tools: list[dict]) -> dict:
        if not self._steps:
            return {"answer": "done"}
        return self._steps.pop(0)


class ExternalCommandProvider(CompletionProvider):
    """Shells out to a command that reads {context, tools} JSON on stdin and
    writes one decision JSON on stdout. Excluded from scripted CI runs."""

    def __init__(self, command: str):
        self.command = command

    def complete(self, context: str, tools: list[dict]) -> dict:
        raw = subprocess.run(
            self.command,
            shell=True,
            input=json.dumps({"context": context, "tools": tools}),
            capture_output=True,
            text=True,
            timeout=120,
            check=True,
        ).stdout
        return json.loads(raw)


def run_agent(
    provider: CompletionProvider,
    client: KnowledgeClient,
    task: str,
    max_steps: int = 20,
) -> str:
    """Provider-driven loop over the knowledge query tool. The transcript
    records exactly what a scripted run would record for the same calls."""
    context_parts = [f"task: {task}"]
    for _ in range(max_steps):
        decision = provider.complete("\n".join(context_parts), [QUERY_TOOL])
        if "answer" in decision:
            return decision["answer"]
        if decision.get("tool") != "query":
            raise ValueError(f"unknown tool request: {decision}")
        path = decision["args"]["path"]
        status, payload = client.query(path)
        context_parts.append(f"observed {path} -> {status}: {json.dumps(payload)[:400]}")
    return ""
