"""Scripted scenarios reproducing the two demos and four Q&A families.

Every scenario runs without any language model: goals are structural
(documents and values collected), entry points are explicit, and every
other queried path must have been discovered through served links first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import httpx

from .client import KnowledgeClient
from .explorer import docs_collected, explore
from .transcript import Transcript

HANDOVER_CHAIN_DOCS = (
    "/docs/ue/methods/execute_handover",
    "/docs/ue/methods/evaluate_a3",
    "/docs/cell/attributes/cio",
    "/docs/ric/methods/load_balance",
)

POWER_UP_CHAIN_DOCS = (
    "/docs/ue/methods/power_up",
    "/docs/ue/methods/connect",
    "/docs/cell/methods/allocate_prbs",
)

ENDPOINT_URL_RE = re.compile(r"^http://[A-Za-z0-9_.-]+\.edge\.local/infer/[A-Za-z0-9_]+$")


@dataclass(frozen=True)
class Scenario:
    id: str
    description: str
    budget: int
    params: dict = field(default_factory=dict)


SCENARIOS: dict[str, Scenario] = {
    s.id: s
    for s in [
        Scenario(
            "S1_single_attr",
            "single-attribute question answered with exactly one live query",
            budget=1,
            params={"ue_id": "IMSI_1"},
        ),
        Scenario(
            "S2_multi_method",
            "power-up chain docs collected from the ue entity doc",
            budget=6,
        ),
        Scenario(
            "S3_cross_entity",
            "full handover chain docs plus one live CIO read",
            budget=10,
            params={"cell_id": "cell_gnb1_0"},
        ),
        Scenario(
            "S4_reusability",
            "round two reuses an endpoint discovered in round one",
            budget=6,
            params={"ue_id": "IMSI_1"},
        ),
        Scenario(
            "D1_engineer_chat",
            "handover mechanism explained with code plus a live summary read",
            budget=12,
        ),
        Scenario(
            "D2_provisioning",
            "profile, match, and provision an edge AI service",
            budget=4,
            params={
                "ue_ids": ["IMSI_1", "IMSI_2", "IMSI_3"],
                "profile": {
                    "modalities": ["wide_angle_camera"],
                    "realtime": True,
                    "target_classes": ["dog", "cat"],
                },
            },
        ),
    ]
}


def apply_setup(server_url: str, token: str, ticks: int) -> None:
    """Advance a --manual-tick server before a scenario; not part of the
    knowledge transcript."""
    httpx.post(
        f"{server_url}/sim/tick",
        json={"count": ticks},
        headers={"Authorization": f"Bearer {token}"},
        timeout=30.0,
    ).raise_for_status()


def run_scenario(
    scenario_id: str, server_url: str, token: str, params: dict | None = None
) -> Transcript:
    scenario = SCENARIOS.get(scenario_id)
    if scenario is None:
        raise KeyError(f"unknown scenario: {scenario_id} (have {sorted(SCENARIOS)})")
    merged = {**scenario.params, **(params or {})}
    transcript = Transcript(scenario_id=scenario_id)
    client = KnowledgeClient(server_url, token, transcript)
    try:
        runner = _RUNNERS[scenario_id]
        runner(client, transcript, scenario, merged)
        transcript.check(
            "no_hardcoded_paths",
            all(e.discovered_at_query for e in transcript.entries),
            "every queried path except entry points was discovered first",
        )
    finally:
        client.close()
    return transcript


def _run_s1(client: KnowledgeClient, transcript: Transcript, scenario: Scenario, params: dict):
    path = f"/live/ue/{params['ue_id']}/attributes/serving_cell"
    transcript.entry_paths.append(path)
    status, payload = client.query(path)
    transcript.check("live_query_ok", status == 200, f"status {status}")
    transcript.check(
        "answer_present",
        payload is not None and payload.get("value") is not None,
        str(payload),
    )
    transcript.check("exactly_one_query", transcript.query_count == 1)


def _run_s2(client: KnowledgeClient, transcript: Transcript, scenario: Scenario, params: dict):
    transcript.entry_paths.append("/docs/ue")
    achieved = explore(
        client,
        "/docs/ue",
        docs_collected(*POWER_UP_CHAIN_DOCS),
        budget=scenario.budget,
        relevance_tokens=("power_up", "connect", "allocate_prbs"),
    )
    transcript.check("power_up_chain_collected", achieved)
    transcript.check("within_budget", transcript.query_count <= scenario.budget)


def _collect_handover_chain(client: KnowledgeClient, transcript: Transcript, budget: int) -> bool:
    transcript.entry_paths.append("/docs/ue")
    return explore(
        client,
        "/docs/ue",
        docs_collected(*HANDOVER_CHAIN_DOCS),
        budget=budget,
        relevance_tokens=("execute_handover", "evaluate_a3", "cio", "load_balance"),
    )


def _run_s3(client: KnowledgeClient, transcript: Transcript, scenario: Scenario, params: dict):
    achieved = _collect_handover_chain(client, transcript, scenario.budget - 1)
    transcript.check("handover_chain_collected", achieved)
    snippet_doc = transcript.collected_docs.get("/docs/ue/methods/execute_handover", {})
    transcript.check(
        "snippet_is_code",
        "execute_handover" in snippet_doc.get("source_snippet", ""),
    )
    cio_doc = transcript.collected_docs.get("/docs/cell/attributes/cio", {})
    template = cio_doc.get("live_path", "")
    live_path = template.replace("{id}", params["cell_id"])
    status, payload = client.query(live_path)
    transcript.check("live_cio_read_ok", status == 200, f"{live_path} -> {status}")
    transcript.check(
        "cio_value_is_offset_map",
        payload is not None and isinstance(payload.get("value"), dict),
    )
    transcript.check("within_budget", transcript.query_count <= scenario.budget)


def _run_s4(client: KnowledgeClient, transcript: Transcript, scenario: Scenario, params: dict):
    transcript.entry_paths.append("/docs/ue")
    achieved = explore(
        client,
        "/docs/ue",
        docs_collected("/docs/ue/attributes/serving_cell"),
        budget=scenario.budget - 1,
        relevance_tokens=("serving_cell",),
        round_label="round1",
    )
    transcript.check("round1_found_attribute_doc", achieved)
    doc = transcript.collected_docs.get("/docs/ue/attributes/serving_cell", {})
    template = doc.get("live_path", "")
    transcript.check("round1_discovered_live_endpoint", bool(template), template)
    # Round two asks the live question directly through the endpoint learned
    # in round one; no fresh exploration.
    live_path = template.replace("{id}", params["ue_id"])
    status, payload = client.query(live_path, round_label="round2")
    transcript.check("round2_reused_discovered_endpoint", status == 200)
    transcript.check(
        "round2_fewer_queries_than_round1",
        transcript.queries_in_round("round2") < transcript.queries_in_round("round1"),
    )


def _run_d1(client: KnowledgeClient, transcript: Transcript, scenario: Scenario, params: dict):
    achieved = _collect_handover_chain(client, transcript, scenario.budget - 1)
    transcript.check("handover_chain_collected", achieved)
    summary_path = "/live/network/summary"
    transcript.entry_paths.append(summary_path)
    status, payload = client.query(summary_path)
    transcript.check(
        "live_summary_read",
        status == 200 and payload is not None and "ue_connected" in payload,
    )


def _run_d2(client: KnowledgeClient, transcript: Transcript, scenario: Scenario, params: dict):
    transcript.entry_paths.extend(["/catalog/match", "/catalog/subscriptions"])
    status, match = client.query("/catalog/match", method="POST", body=params["profile"])
    transcript.check("match_ok", status == 200 and bool(match and match.get("matches")))
    if not (match and match.get("matches")):
        return
    service_id = match["matches"][0]["id"]
    transcript.check("yolo_recommended_first", service_id == "yolov8_det", service_id)
    status, created = client.query(
        "/catalog/subscriptions",
        method="POST",
        body={"ue_ids": params["ue_ids"], "service_id": service_id},
    )
    transcript.check("subscription_created", status == 201, f"status {status}")
    if created is None:
        return
    sub = created.get("subscription", {})
    transcript.check("subscription_active", sub.get("status") == "ACTIVE")
    transcript.check(
        "endpoint_url_well_formed",
        bool(ENDPOINT_URL_RE.match(sub.get("endpoint_url", ""))),
        sub.get("endpoint_url", ""),
    )
    transcript.check(
        "snippet_contains_endpoint",
        sub.get("endpoint_url", "") in created.get("integration_snippet", ""),
    )


_RUNNERS = {
    "S1_single_attr": _run_s1,
    "S2_multi_method": _run_s2,
    "S3_cross_entity": _run_s3,
    "S4_reusability": _run_s4,
    "D1_engineer_chat": _run_d1,
    "D2_provisioning": _run_d2,
}
