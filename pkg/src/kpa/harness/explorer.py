"""Link-following exploration over the docs graph.

The frontier is a queue of discovered-but-unvisited doc links, ordered
goal-relevant-first (paths mentioning a goal token) with lexicographic
ties, so budgets stay tight even though entity docs fan out to every
attribute. Only the entry path and discovered links are ever queried.
"""

from __future__ import annotations

from typing import Callable

from .client import KnowledgeClient
from .transcript import Transcript

GoalPredicate = Callable[[Transcript], bool]


def explore(
    client: KnowledgeClient,
    start_path: str,
    goal: GoalPredicate,
    budget: int,
    relevance_tokens: tuple[str, ...] = (),
    round_label: str = "main",
) -> bool:
    """Walk related links from start_path until the goal holds or the
    budget is exhausted; returns goal attainment (never raises for misses)."""
    transcript = client.transcript

    def rank(path: str) -> tuple[int, str]:
        relevant = any(token in path for token in relevance_tokens)
        return (0 if relevant else 1, path)

    frontier = [start_path]
    visited: set[str] = set()
    spent = 0
    while frontier and spent < budget:
        frontier.sort(key=rank)
        path = frontier.pop(0)
        if path in visited:
            continue
        visited.add(path)
        client.query(path, round_label=round_label)
        spent += 1
        if goal(transcript):
            return True
        for link in sorted(transcript.discovered_endpoints):
            if link.startswith("/docs") and link not in visited and link not in frontier:
                frontier.append(link)
    return goal(transcript)


def docs_collected(*paths: str) -> GoalPredicate:
    def predicate(transcript: Transcript) -> bool:
        return all(p in transcript.collected_docs for p in paths)

    return predicate


def snippet_collected(method_name: str) -> GoalPredicate:
    def predicate(transcript: Transcript) -> bool:
        return any(
            method_name in doc.get("source_snippet", "")
            for doc in transcript.collected_docs.values()
        )

    return predicate


def bfs_depth(client: KnowledgeClient, start_path: str, target_path: str, max_depth: int = 6) -> int | None:
    """Structural BFS distance from start to target over related links;
    independent of the budgeted exploration above."""
    level = [start_path]
    seen = {start_path}
    for depth in range(max_depth + 1):
        next_level = []
        for path in level:
            if path == target_path:
                return depth
            status, payload = client.query(path, round_label="bfs_probe")
            if status != 200 or payload is None:
                continue
            for link in payload.get("related", []):
                child = link.get("path")
                if child and child.startswith("/docs") and child not in seen:
                    seen.add(child)
                    next_level.append(child)
        level = next_level
        if not level:
            break
    return None
