"""Rule-based insights over the snapshot history.

An insight exists iff its rule's predicate held over the stated window; the
engine re-derives everything from retained snapshots on each query, so an
offline pass over the same history reproduces the served results exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..catalog.services import Catalog
from ..ran.entities import NetworkState
from .values import attribute_value, entity_ids, resolve_entity

COMPARATORS = {
    ">": lambda v, t: v > t,
    ">=": lambda v, t: v >= t,
    "<": lambda v, t: v < t,
    "<=": lambda v, t: v <= t,
}


@dataclass(frozen=True)
class InsightRule:
    id: str
    subject_selector: str  # entity type
    attribute: str
    comparator: str  # ">", ">=", "<", "<=" (sustained) or "drop>=" (delta)
    threshold: float
    window_ticks: int
    insight_type: str

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "subject_selector": self.subject_selector,
            "attribute": self.attribute,
            "comparator": self.comparator,
            "threshold": self.threshold,
            "window_ticks": self.window_ticks,
            "insight_type": self.insight_type,
        }


DEFAULT_RULES = [
    InsightRule(
        id="congestion_risk_default",
        subject_selector="cell",
        attribute="load",
        comparator=">",
        threshold=0.8,
        window_ticks=3,
        insight_type="CONGESTION_RISK",
    ),
    InsightRule(
        id="cqi_anomaly_default",
        subject_selector="ue",
        attribute="cqi",
        comparator="drop>=",
        threshold=8.0,
        window_ticks=2,
        insight_type="CQI_ANOMALY",
    ),
]


def evaluate_rule(
    rule: InsightRule,
    history: dict[int, NetworkState],
    at_tick: int,
    catalog: Catalog,
) -> list[dict]:
    """Insights for one rule at one tick, from whatever history is given.

    Sustained rules need every tick of the window present; drop rules fire
    when any retained tick within the lookback shows a drop of at least the
    threshold down to the evaluated tick.
    """
    current = history.get(at_tick)
    if current is None:
        return []
    insights = []
    for subject in entity_ids(current, catalog, rule.subject_selector):
        evidence = None
        if rule.comparator == "drop>=":
            now_value = _value(current, catalog, rule, subject)
            if now_value is None:
                continue
            for lag in range(1, rule.window_ticks + 1):
                past = history.get(at_tick - lag)
                if past is None:
                    continue
                past_value = _value(past, catalog, rule, subject)
                if past_value is None:
                    continue
                if past_value - now_value >= rule.threshold:
                    evidence = [
                        {"tick": at_tick - lag, "value": past_value},
                        {"tick": at_tick, "value": now_value},
                    ]
                    break
        else:
            compare = COMPARATORS[rule.comparator]
            window = range(at_tick - rule.window_ticks + 1, at_tick + 1)
            values = []
            for tick in window:
                frame = history.get(tick)
                value = _value(frame, catalog, rule, subject) if frame is not None else None
                if value is None or not compare(value, rule.threshold):
                    values = None
                    break
                values.append({"tick": tick, "value": value})
            evidence = values
        if evidence:
            insights.append(
                {
                    "rule_id": rule.id,
                    "insight_type": rule.insight_type,
                    "subject": subject,
                    "fired_tick": at_tick,
                    "evidence": evidence,
                }
            )
    return insights


def _value(state: NetworkState, catalog: Catalog, rule: InsightRule, subject: str):
    try:
        entity = resolve_entity(state, catalog, rule.subject_selector, subject)
    except KeyError:
        return None
    return attribute_value(rule.subject_selector, entity, rule.attribute)


def evaluate_all(
    rules: list[InsightRule],
    history: dict[int, NetworkState],
    at_tick: int,
    catalog: Catalog,
    subject: str | None = None,
) -> list[dict]:
    results = []
    for rule in rules:
        results.extend(evaluate_rule(rule, history, at_tick, catalog))
    if subject is not None:
        results = [i for i in results if i["subject"] == subject]
    results.sort(key=lambda i: (i["rule_id"], i["subject"]))
    return results
