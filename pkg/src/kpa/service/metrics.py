"""Observability counters: per-route traffic/latency, tick timing."""

from __future__ import annotations

import threading
from collections import defaultdict, deque

LATENCY_WINDOW = 2048


def percentile(samples: list[float], p: float) -> float:
    """Nearest-rank percentile; samples must be non-empty."""
    ordered = sorted(samples)
    rank = max(1, int(round(p / 100.0 * len(ordered) + 0.5)))
    return ordered[min(rank, len(ordered)) - 1]


class Metrics:
    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._query_count: dict[str, int] = defaultdict(int)
        self._latency: dict[str, deque] = defaultdict(lambda: deque(maxlen=LATENCY_WINDOW))
        self._tick_ms: deque = deque(maxlen=LATENCY_WINDOW)
        self._tick_count = 0

    def record_request(self, route: str, latency_ms: float) -> None:
        with self._lock:
            self._query_count[route] += 1
            self._latency[route].append(latency_ms)

    def record_tick(self, duration_ms: float) -> None:
        with self._lock:
            self._tick_ms.append(duration_ms)
            self._tick_count += 1

    def render(self) -> dict:
        with self._lock:
            latency = {
                route: {
                    "p50": percentile(list(samples), 50.0),
                    "p99": percentile(list(samples), 99.0),
                }
                for route, samples in self._latency.items()
                if samples
            }
            tick = (
                {
                    "p50": percentile(list(self._tick_ms), 50.0),
                    "p99": percentile(list(self._tick_ms), 99.0),
                    "count": self._tick_count,
                }
                if self._tick_ms
                else {"p50": None, "p99": None, "count": self._tick_count}
            )
            return {
                "query_count": dict(self._query_count),
                "latency_ms": latency,
                "tick_ms": tick,
            }
