"""Per-tick immutable snapshot ring with at-time lookup."""

from __future__ import annotations

import threading
import time
from collections import OrderedDict

from ..ran.entities import NetworkState

DEFAULT_CAPACITY = 10_000


class SnapshotError(Exception):
    pass


class EvictedTickError(SnapshotError):
    """The tick existed but fell out of the retention ring."""


class UnknownTickError(SnapshotError):
    """The tick was never published."""


class SnapshotStore:
    def __init__(self, capacity: int = DEFAULT_CAPACITY):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self._ring: OrderedDict[int, NetworkState] = OrderedDict()
        self._lock = threading.Lock()
        self._published_at: float | None = None

    def publish(self, state: NetworkState) -> None:
        """Insert an immutable snapshot; ticks must strictly increase."""
        with self._lock:
            if self._ring and state.tick <= next(reversed(self._ring)):
                raise SnapshotError(
                    f"snapshot ticks must increase: got {state.tick} after {next(reversed(self._ring))}"
                )
            self._ring[state.tick] = state
            while len(self._ring) > self.capacity:
                self._ring.popitem(last=False)
            self._published_at = time.monotonic()

    @property
    def latest_tick(self) -> int:
        with self._lock:
            if not self._ring:
                return -1
            return next(reversed(self._ring))

    def latest(self) -> NetworkState:
        with self._lock:
            if not self._ring:
                raise UnknownTickError("no snapshot published yet")
            return self._ring[next(reversed(self._ring))]

    def get(self, tick: int) -> NetworkState:
        with self._lock:
            if tick in self._ring:
                return self._ring[tick]
            if not self._ring:
                raise UnknownTickError("no snapshot published yet")
            oldest = next(iter(self._ring))
            latest = next(reversed(self._ring))
            if tick < oldest:
                raise EvictedTickError(f"tick {tick} evicted (oldest retained: {oldest})")
            raise UnknownTickError(f"tick {tick} not published (latest: {latest})")

    def retained_ticks(self) -> list[int]:
        with self._lock:
            return list(self._ring)

    def age_ms(self) -> float | None:
        with self._lock:
            if self._published_at is None:
                return None
            return (time.monotonic() - self._published_at) * 1000.0
