"""Agent harness: query tool, explorer semantics, scenario verdicts,
transcript/audit consistency, and the completion-provider hook."""

import httpx
import pytest

from kpa.config import SimConfig
from kpa.harness import (
    HANDOVER_CHAIN_DOCS,
    KnowledgeClient,
    ScriptedCompletionProvider,
    Transcript,
    apply_setup,
    bfs_depth,
    docs_collected,
    explore,
    run_agent,
    run_scenario,
)
from kpa.service import AuthTable, ServiceConfig
from kpa.service.app import create_app
from tests.util import LiveServer

ADMIN = {"Authorization": "Bearer admintok"}


def harness_auth() -> AuthTable:
    return AuthTable(
        [
            {"token": "admintok", "id": "root", "role": "admin"},
            {"token": "optok", "id": "op", "role": "operator"},
        ]
    )


def fixture_config() -> SimConfig:
    return SimConfig(seed=5, ue_count=5, gnbs=2, cells_per_gnb=2)


@pytest.fixture(scope="module")
def server():
    app = create_app(fixture_config(), ServiceConfig(manual_tick=True, auth=harness_auth()))
    with LiveServer(app) as live:
        apply_setup(live.url, "optok", 5)
        yield live


def fresh_client(server, scenario_id="probe") -> KnowledgeClient:
    return KnowledgeClient(server.url, "optok", Transcript(scenario_id=scenario_id))


class TestQueryTool:
    def test_docs_query_harvests_links(self, server):
        client = fresh_client(server)
        client.transcript.entry_paths.append("/docs/ue")
        client.query("/docs/ue")
        discovered = client.transcript.discovered_endpoints
        assert "/docs/ue/methods/execute_handover" in discovered
        assert "/docs/ue/attributes/cqi" in discovered
        client.close()

    def test_404_recorded_without_crash(self, server):
        client = fresh_client(server)
        client.transcript.entry_paths.append("/docs/ue/methods/warp")
        status, _ = client.query("/docs/ue/methods/warp")
        assert status == 404
        assert client.transcript.entries[-1].status == 404
        client.close()

    def test_repeated_query_served_again(self, server):
        client = fresh_client(server)
        client.transcript.entry_paths.append("/docs/cell")
        client.query("/docs/cell")
        client.query("/docs/cell")
        entries = client.transcript.entries
        assert len(entries) == 2
        assert entries[0].digest == entries[1].digest
        client.close()

    def test_undiscovered_query_flagged(self, server):
        client = fresh_client(server)
        client.query("/docs/ric")  # not an entry, never discovered
        assert client.transcript.entries[-1].discovered_at_query is False
        client.close()


class TestExplorer:
    def test_budget_exhaustion_is_failure_not_exception(self, server):
        client = fresh_client(server)
        client.transcript.entry_paths.append("/docs/ue")
        achieved = explore(
            client, "/docs/ue", docs_collected("/docs/ric/methods/load_balance"), budget=1
        )
        assert achieved is False
        assert client.transcript.query_count == 1
        client.close()

    def test_goal_satisfied_by_start_doc(self, server):
        client = fresh_client(server)
        client.transcript.entry_paths.append("/docs/ue/methods/power_up")
        achieved = explore(
            client,
            "/docs/ue/methods/power_up",
            docs_collected("/docs/ue/methods/power_up"),
            budget=5,
        )
        assert achieved is True
        assert client.transcript.query_count == 1
        client.close()

    def test_snippet_reachable_within_two_rounds(self, server):
        # Structural version of the two-round exploration claim.
        client = fresh_client(server)
        depth = bfs_depth(client, "/docs/ue", "/docs/ue/methods/execute_handover")
        assert depth is not None and depth <= 2
        client.close()


class TestScenarios:
    def test_s1_answer_equals_live_ground_truth(self, server):
        transcript = run_scenario("S1_single_attr", server.url, "optok")
        assert transcript.verdict_ok, transcript.failing_step()
        assert transcript.query_count == 1
        truth = httpx.get(
            f"{server.url}/live/ue/IMSI_1/attributes/serving_cell", headers=ADMIN
        ).json()["value"]
        assert truth is not None
        # The transcript's only entry digests the same response the ground
        # truth endpoint serves.
        entry = transcript.entries[0]
        assert entry.path == "/live/ue/IMSI_1/attributes/serving_cell"
        assert entry.status == 200

    def test_s2_collects_power_up_chain_within_budget(self, server):
        transcript = run_scenario("S2_multi_method", server.url, "optok")
        assert transcript.verdict_ok, transcript.failing_step()
        assert transcript.query_count <= 6
        for path in (
            "/docs/ue/methods/power_up",
            "/docs/ue/methods/connect",
            "/docs/cell/methods/allocate_prbs",
        ):
            assert path in transcript.collected_docs

    def test_s3_collects_full_handover_chain(self, server):
        transcript = run_scenario("S3_cross_entity", server.url, "optok")
        assert transcript.verdict_ok, transcript.failing_step()
        assert transcript.query_count <= 10
        for path in HANDOVER_CHAIN_DOCS:
            assert path in transcript.collected_docs
        snippet = transcript.collected_docs["/docs/ue/methods/execute_handover"]["source_snippet"]
        assert "execute_handover" in snippet

    def test_s4_round2_reuses_round1_discovery(self, server):
        transcript = run_scenario("S4_reusability", server.url, "optok")
        assert transcript.verdict_ok, transcript.failing_step()
        round1 = transcript.queries_in_round("round1")
        round2 = transcript.queries_in_round("round2")
        assert round2 < round1
        round2_entries = [e for e in transcript.entries if e.round_label == "round2"]
        assert all(e.discovered_at_query for e in round2_entries)

    def test_d1_combines_docs_and_live(self, server):
        transcript = run_scenario("D1_engineer_chat", server.url, "optok")
        assert transcript.verdict_ok, transcript.failing_step()
        assert any(e.path == "/live/network/summary" for e in transcript.entries)

    def test_d2_provisions_active_subscription(self, server):
        transcript = run_scenario("D2_provisioning", server.url, "optok")
        assert transcript.verdict_ok, transcript.failing_step()

    def test_unknown_scenario_raises(self, server):
        with pytest.raises(KeyError):
            run_scenario("S9_nope", server.url, "optok")

    def test_transcript_paths_subsequence_of_audit(self, server):
        transcript = run_scenario("S3_cross_entity", server.url, "optok")
        audit = httpx.get(f"{server.url}/audit", headers=ADMIN, timeout=10.0).json()["records"]
        op_requests = [(r["method"], r["path"]) for r in audit if r["principal"] == "op"]
        wanted = [(e.method, e.path) for e in transcript.entries]
        it = iter(op_requests)
        assert all(step in it for step in wanted), "transcript is not a subsequence of audit"


class TestDeterminism:
    def test_identical_fixture_identical_transcripts(self):
        def run_once(scenario_id):
            app = create_app(
                fixture_config(), ServiceConfig(manual_tick=True, auth=harness_auth())
            )
            with LiveServer(app) as live:
                apply_setup(live.url, "optok", 5)
                return run_scenario(scenario_id, live.url, "optok").to_dict()

        for scenario_id in ("S1_single_attr", "S3_cross_entity", "D2_provisioning"):
            assert run_once(scenario_id) == run_once(scenario_id), scenario_id


class TestCompletionProvider:
    def test_scripted_provider_matches_direct_queries(self, server):
        steps = [
            {"tool": "query", "args": {"path": "/docs/ue"}},
            {"tool": "query", "args": {"path": "/docs/ue/methods/power_up"}},
            {"answer": "power_up selects the strongest cell"},
        ]
        provider_client = fresh_client(server, "provider_run")
        provider_client.transcript.entry_paths.append("/docs/ue")
        answer = run_agent(
            ScriptedCompletionProvider(steps), provider_client, task="explain power up"
        )
        assert answer == "power_up selects the strongest cell"

        direct_client = fresh_client(server, "direct_run")
        direct_client.transcript.entry_paths.append("/docs/ue")
        direct_client.query("/docs/ue")
        direct_client.query("/docs/ue/methods/power_up")

        provider_entries = [(e.method, e.path, e.digest) for e in provider_client.transcript.entries]
        direct_entries = [(e.method, e.path, e.digest) for e in direct_client.transcript.entries]
        assert provider_entries == direct_entries
        provider_client.close()
        direct_client.close()
