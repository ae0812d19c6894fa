"""Durability: append-only persistence, corrupt-tail recovery, kill -9."""

import json
import os
import signal
import subprocess
import sys
import time

import httpx
import pytest

from kpa.config import SimConfig
from kpa.service import ServiceConfig
from kpa.service.context import ServiceContext
from kpa.service.persistence import PersistentStore
from tests.test_service import auth_table
from tests.util import free_port


def sim_config() -> SimConfig:
    return SimConfig(seed=21, ue_count=4, gnbs=2, cells_per_gnb=1, area=(500.0, 500.0))


class TestPersistentStore:
    def test_fresh_store_starts_at_zero(self, tmp_path):
        ctx = ServiceContext(sim_config(), ServiceConfig(persist_dir=str(tmp_path)))
        try:
            assert ctx.store.latest_tick == 0
        finally:
            ctx.shutdown()

    def test_restart_resumes_from_last_tick(self, tmp_path):
        ctx = ServiceContext(sim_config(), ServiceConfig(persist_dir=str(tmp_path)))
        ctx.tick(7)
        ctx.audit.append(sim_tick=7, principal="p", method="GET", path="/x", outcome=200, latency_ms=1.0)
        ctx.shutdown()

        ctx2 = ServiceContext(sim_config(), ServiceConfig(persist_dir=str(tmp_path)))
        try:
            assert ctx2.store.latest_tick == 7
            # History preloaded: old ticks still queryable.
            assert ctx2.store.get(3).tick == 3
            # Audit seq continues without gaps.
            record = ctx2.audit.append(
                sim_tick=7, principal="p", method="GET", path="/y", outcome=200, latency_ms=1.0
            )
            assert record.seq == 2
            ctx2.tick()
            assert ctx2.store.latest_tick == 8
        finally:
            ctx2.shutdown()

    def test_corrupt_tail_truncated_with_warning(self, tmp_path, caplog):
        store = PersistentStore(str(tmp_path))
        ctx = ServiceContext(sim_config(), ServiceConfig(persist_dir=str(tmp_path)))
        ctx.tick(3)
        ctx.shutdown()
        path = os.path.join(str(tmp_path), "snapshots.jsonl")
        with open(path, "a") as fh:
            fh.write('{"tick": 4, "state": {"broken...')
        with caplog.at_level("WARNING"):
            states = store.load_snapshots()
        assert [s.tick for s in states] == [1, 2, 3]
        assert any("truncating" in r.message for r in caplog.records)
        # The file is now clean: a second load parses fully.
        assert [s.tick for s in PersistentStore(str(tmp_path)).load_snapshots()] == [1, 2, 3]


@pytest.mark.slow
class TestKillRecovery:
    @staticmethod
    def start_server(port: int, persist: str, auth_file: str) -> subprocess.Popen:
        proc = subprocess.Popen(
            [
                sys.executable,
                "-m",
                "kpa.cli",
                "serve",
                "--manual-tick",
                "--port",
                str(port),
                "--persist",
                persist,
                "--auth-table",
                auth_file,
                "--seed",
                "21",
                "--ues",
                "4",
                "--gnbs",
                "2",
            ],
            stdout=subprocess.DEVNULL,
            stderr=subprocess.DEVNULL,
        )
        deadline = time.time() + 15.0
        while time.time() < deadline:
            try:
                httpx.get(f"http://127.0.0.1:{port}/metrics", timeout=1.0)
                return proc
            except Exception:
                if proc.poll() is not None:
                    raise RuntimeError("server exited during startup")
                time.sleep(0.1)
        proc.kill()
        raise RuntimeError("server did not come up")

    def test_kill_dash_nine_then_restart(self, tmp_path):
        auth_file = tmp_path / "auth.json"
        auth_file.write_text(
            json.dumps({"principals": [{"token": "admintok", "id": "root", "role": "admin"}]})
        )
        persist = str(tmp_path / "store")
        headers = {"Authorization": "Bearer admintok"}

        port = free_port()
        proc = self.start_server(port, persist, str(auth_file))
        url = f"http://127.0.0.1:{port}"
        try:
            httpx.post(f"{url}/sim/tick", json={"count": 50}, headers=headers, timeout=30.0)
            observed_tick = httpx.get(f"{url}/metrics", timeout=5.0).json()["latest_tick"]
            assert observed_tick == 50
            audit_before = httpx.get(f"{url}/audit", headers=headers, timeout=5.0).json()["records"]
        finally:
            os.kill(proc.pid, signal.SIGKILL)
            proc.wait(timeout=10)

        port2 = free_port()
        proc2 = self.start_server(port2, persist, str(auth_file))
        url2 = f"http://127.0.0.1:{port2}"
        try:
            latest = httpx.get(f"{url2}/metrics", timeout=5.0).json()["latest_tick"]
            assert latest >= observed_tick, "latest_tick regressed across kill/restart"
            httpx.post(f"{url2}/sim/tick", headers=headers, timeout=10.0)
            records = httpx.get(f"{url2}/audit", headers=headers, timeout=5.0).json()["records"]
            # Gap-free continuation: fresh seqs start after every persisted one.
            persisted_seqs = [
                json.loads(line)["seq"]
                for line in open(os.path.join(persist, "audit.jsonl"))
                if line.strip()
            ]
            assert persisted_seqs == list(range(1, len(persisted_seqs) + 1))
            assert audit_before[-1]["seq"] < records[0]["seq"]
        finally:
            os.kill(proc2.pid, signal.SIGKILL)
            proc2.wait(timeout=10)
