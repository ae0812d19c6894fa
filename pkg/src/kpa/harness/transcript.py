"""Transcripts: the auditable record of every query a scenario makes."""

from __future__ import annotations

import re
from dataclasses import dataclass, field


@dataclass
class TranscriptEntry:
    method: str
    path: str
    status: int
    digest: str
    tick: int | None
    round_label: str
    discovered_at_query: bool

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "path": self.path,
            "status": self.status,
            "digest": self.digest,
            "tick": self.tick,
            "round": self.round_label,
            "discovered_at_query": self.discovered_at_query,
        }


@dataclass
class Assertion:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def template_pattern(template: str) -> re.Pattern:
    return re.compile("^" + re.sub(r"\{[^/}]+\}", "[^/]+", template) + "$")


@dataclass
class Transcript:
    scenario_id: str
    entry_paths: list[str] = field(default_factory=list)
    entries: list[TranscriptEntry] = field(default_factory=list)
    discovered_endpoints: set[str] = field(default_factory=set)
    assertions: list[Assertion] = field(default_factory=list)
    collected_docs: dict[str, dict] = field(default_factory=dict)

    @property
    def query_count(self) -> int:
        return len(self.entries)

    def queries_in_round(self, round_label: str) -> int:
        return sum(1 for e in self.entries if e.round_label == round_label)

    def is_discovered(self, path: str) -> bool:
        """Known either literally or as a {placeholder} template instance."""
        if path in self.discovered_endpoints:
            return True
        for endpoint in self.discovered_endpoints:
            if "{" in endpoint and template_pattern(endpoint).match(path):
                return True
        return False

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.assertions.append(Assertion(name, bool(passed), detail))
        return bool(passed)

    @property
    def verdict_ok(self) -> bool:
        return all(a.passed for a in self.assertions)

    def failing_step(self) -> str | None:
        for assertion in self.assertions:
            if not assertion.passed:
                return assertion.name
        return None

    def to_dict(self) -> dict:
        return {
            "scenario_id": self.scenario_id,
            "entry_paths": self.entry_paths,
            "entries": [e.to_dict() for e in self.entries],
            "discovered_endpoints": sorted(self.discovered_endpoints),
            "assertions": [a.to_dict() for a in self.assertions],
            "verdict": "pass" if self.verdict_ok else f"fail:{self.failing_step()}",
            "query_count": self.query_count,
        }
