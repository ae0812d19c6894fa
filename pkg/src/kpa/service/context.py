"""Service runtime: simulator ownership, the tick clock, and shared stores."""

from __future__ import annotations

import logging
import threading
import time
from dataclasses import dataclass, field

from ..catalog import Catalog, create_subscription, teardown
from ..config import SimConfig
from ..ontology import build_seed_registry
from ..ran.entities import NetworkState, ServiceSubscription
from ..ran.sim import Simulator
from .audit import AuditLog
from .auth import AuthTable
from .insights import DEFAULT_RULES, InsightRule
from .metrics import Metrics
from .persistence import PersistentStore
from .snapshots import DEFAULT_CAPACITY, SnapshotStore
from .subscriptions import SubscriptionBroker

logger = logging.getLogger(__name__)


@dataclass
class ServiceConfig:
    manual_tick: bool = True
    persist_dir: str | None = None
    auth: AuthTable = field(default_factory=AuthTable)
    heartbeat_s: float = 5.0
    snapshot_capacity: int = DEFAULT_CAPACITY
    insight_rules: list[InsightRule] = field(default_factory=lambda: list(DEFAULT_RULES))


class StoreHistory:
    """Read-only tick -> snapshot view over the store, for the insight engine."""

    def __init__(self, store: SnapshotStore):
        self._store = store

    def get(self, tick: int) -> NetworkState | None:
        try:
            return self._store.get(tick)
        except Exception:
            return None


class ServiceContext:
    def __init__(self, sim_config: SimConfig, service_config: ServiceConfig):
        self.sim_config = sim_config
        self.config = service_config
        self.simulator = Simulator(sim_config)
        self.registry = build_seed_registry()
        self.catalog = Catalog()
        self.store = SnapshotStore(capacity=service_config.snapshot_capacity)
        self.history = StoreHistory(self.store)
        self.broker = SubscriptionBroker(self.simulator.bus)
        self.metrics = Metrics()
        self.lock = threading.RLock()
        self._clock_thread: threading.Thread | None = None
        self._stop = threading.Event()

        self.persistence: PersistentStore | None = None
        audit_start = 1
        if service_config.persist_dir:
            self.persistence = PersistentStore(service_config.persist_dir)
            restored = self.persistence.load_snapshots()
            audit_records = self.persistence.load_audit()
            if audit_records:
                audit_start = max(r["seq"] for r in audit_records) + 1
            if restored:
                logger.info("recovered %d snapshots, resuming at tick %d", len(restored), restored[-1].tick)
                self.simulator.restore_state(restored[-1].clone())
                for snapshot in restored:
                    self.store.publish(snapshot)

        sink = self.persistence.append_audit if self.persistence else None
        self.audit = AuditLog(start_seq=audit_start, sink=sink)
        self._insight_cache: dict[int, list[dict]] = {}

        if self.store.latest_tick < 0:
            # Fresh start: tick-0 snapshot is queryable before any step runs.
            self.store.publish(self.simulator.state.clone())

    # -- clock ----------------------------------------------------------------------

    def tick(self, count: int = 1) -> int:
        """Advance the simulation; the snapshot is persisted, then published,
        before the call returns, so no observer ever sees an unpersisted tick."""
        with self.lock:
            for _ in range(count):
                started = time.perf_counter()
                self.simulator.step()
                snapshot = self.simulator.state.clone()
                if self.persistence is not None:
                    self.persistence.append_snapshot(snapshot)
                self.store.publish(snapshot)
                self.metrics.record_tick((time.perf_counter() - started) * 1000.0)
            return self.store.latest_tick

    def start_clock(self) -> None:
        if self.config.manual_tick or self._clock_thread is not None:
            return

        def loop():
            interval = self.sim_config.tick_duration_ms / 1000.0
            while not self._stop.wait(interval):
                self.tick()

        self._clock_thread = threading.Thread(target=loop, name="kpa-clock", daemon=True)
        self._clock_thread.start()

    def shutdown(self) -> None:
        self._stop.set()
        if self._clock_thread is not None:
            self._clock_thread.join(timeout=2.0)
            self._clock_thread = None
        if self.persistence is not None:
            self.persistence.close()

    # -- provisioning (serialized with the tick pipeline) ---------------------------

    def provision(self, ue_ids: list[str], service_id: str) -> tuple[ServiceSubscription, str]:
        with self.lock:
            record, snippet, events = create_subscription(
                self.simulator.state, self.catalog, ue_ids, service_id
            )
            self.simulator.publish_external(events)
            return record, snippet

    def teardown_subscription(self, sub_id: str) -> ServiceSubscription:
        with self.lock:
            events = teardown(self.simulator.state, sub_id)
            self.simulator.publish_external(events)
            return self.simulator.state.service_subscriptions[sub_id]

    def queue_command(self, command: dict) -> int:
        with self.lock:
            self.simulator.queue_command(command)
            return self.store.latest_tick + 1

    def insights_at(self, tick: int) -> list[dict]:
        """Insights are a pure function of (rules, snapshot history, tick);
        cache per tick so hot reads stop re-evaluating."""
        cached = self._insight_cache.get(tick)
        if cached is None:
            from .insights import evaluate_all

            cached = evaluate_all(self.config.insight_rules, self.history, tick, self.catalog)
            self._insight_cache[tick] = cached
            while len(self._insight_cache) > 256:
                self._insight_cache.pop(next(iter(self._insight_cache)))
        return cached
