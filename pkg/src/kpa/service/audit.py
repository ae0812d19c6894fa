"""Append-only audit log: one record per served request, any outcome."""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from typing import Callable


@dataclass
class AuditRecord:
    seq: int
    wall_time: float
    sim_tick: int
    principal: str
    method: str
    path: str
    outcome: int
    latency_ms: float

    def to_dict(self) -> dict:
        return {
            "seq": self.seq,
            "wall_time": self.wall_time,
            "sim_tick": self.sim_tick,
            "principal": self.principal,
            "method": self.method,
            "path": self.path,
            "outcome": self.outcome,
            "latency_ms": self.latency_ms,
        }


class AuditLog:
    """Gap-free monotone seq; appends are serialized, reads are cheap copies."""

    def __init__(self, start_seq: int = 1, sink: Callable[[dict], None] | None = None):
        self._records: list[AuditRecord] = []
        self._next_seq = start_seq
        self._lock = threading.Lock()
        self._sink = sink

    def append(
        self,
        *,
        sim_tick: int,
        principal: str,
        method: str,
        path: str,
        outcome: int,
        latency_ms: float,
    ) -> AuditRecord:
        with self._lock:
            record = AuditRecord(
                seq=self._next_seq,
                wall_time=time.time(),
                sim_tick=sim_tick,
                principal=principal,
                method=method,
                path=path,
                outcome=outcome,
                latency_ms=latency_ms,
            )
            self._next_seq += 1
            self._records.append(record)
            if self._sink is not None:
                self._sink(record.to_dict())
            return record

    def records(self, since_seq: int = 0) -> list[dict]:
        with self._lock:
            return [r.to_dict() for r in self._records if r.seq > since_seq]

    def __len__(self) -> int:
        with self._lock:
            return len(self._records)

    @property
    def next_seq(self) -> int:
        with self._lock:
            return self._next_seq
