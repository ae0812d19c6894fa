"""Route templates: the service's public surface, used for metrics
normalization and ontology live-path validation."""

from __future__ import annotations

import re

ROUTE_TEMPLATES = [
    "/sim/tick",
    "/sim/command",
    "/live/network/summary",
    "/live/{entity_type}/{entity_id}/attributes/{attribute}",
    "/live/{entity_type}/{entity_id}",
    "/docs/{entity_type}/attributes/{attribute}",
    "/docs/{entity_type}/methods/{method}",
    "/docs/{entity_type}",
    "/docs",
    "/graph/{entity_type}/{node}/related",
    "/insights/current",
    "/subscriptions/{sub_id}/stream",
    "/subscriptions/{sub_id}",
    "/subscriptions",
    "/catalog/services",
    "/catalog/match",
    "/catalog/subscriptions/{sub_id}",
    "/catalog/subscriptions",
    "/infer/{sub_id}",
    "/audit",
    "/metrics",
    "/ontology/bundle",
]

_COMPILED = [
    (template, re.compile("^" + re.sub(r"\{[^/}]+\}", "[^/]+", template) + "$"))
    for template in ROUTE_TEMPLATES
]


def normalize_route(path: str) -> str:
    """Collapse a concrete path onto its route template; unknown paths pass
    through unchanged (they still get audited and counted)."""
    for template, pattern in _COMPILED:
        if pattern.match(path):
            return template
    return path


def live_attribute_routable(live_path: str) -> bool:
    """True when an ontology live_path template resolves against the routing
    table once its {id} placeholder is substituted."""
    probe = live_path.replace("{id}", "probe")
    return normalize_route(probe) == "/live/{entity_type}/{entity_id}/attributes/{attribute}"
