"""Deterministic agent harness: query tool, explorer, scripted scenarios."""

from .client import KnowledgeClient
from .explorer import bfs_depth, docs_collected, explore, snippet_collected
from .provider import (
    CompletionProvider,
    ExternalCommandProvider,
    ScriptedCompletionProvider,
    run_agent,
)
from .scenarios import (
    HANDOVER_CHAIN_DOCS,
    POWER_UP_CHAIN_DOCS,
    SCENARIOS,
    Scenario,
    apply_setup,
    run_scenario,
)
from .transcript import Transcript, TranscriptEntry

__all__ = [
    "CompletionProvider",
    "ExternalCommandProvider",
    "HANDOVER_CHAIN_DOCS",
    "KnowledgeClient",
    "POWER_UP_CHAIN_DOCS",
    "SCENARIOS",
    "Scenario",
    "ScriptedCompletionProvider",
    "Transcript",
    "TranscriptEntry",
    "apply_setup",
    "bfs_depth",
    "docs_collected",
    "explore",
    "run_agent",
    "run_scenario",
    "snippet_collected",
]
