"""Consumer-facing event subscriptions deduplicated onto the internal bus.

However many consumers subscribe to one event type, the bus sees exactly one
upstream subscription; filters apply at fan-out. Events published while a
type has no consumers are dropped, never buffered.
"""

from __future__ import annotations

import queue
import threading
from dataclasses import dataclass, field

from ..ran.bus import EventBus, Subscription
from ..ran.events import EventType, NetworkEvent
from .wire import canonical_json


class UnknownEventTypeError(ValueError):
    pass


class UnknownConsumerError(KeyError):
    pass


@dataclass
class ConsumerSubscription:
    id: str
    consumer: str  # principal id
    event_type: EventType
    filter_subject: str | None
    created_tick: int
    inbox: queue.Queue = field(default_factory=queue.Queue)
    active: bool = True

    def matches(self, event: NetworkEvent) -> bool:
        if self.filter_subject is None:
            return True
        import fnmatch

        return fnmatch.fnmatchcase(event.subject, self.filter_subject)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "consumer": self.consumer,
            "event_type": self.event_type.value,
            "filter": self.filter_subject,
            "created_tick": self.created_tick,
            "stream_path": f"/subscriptions/{self.id}/stream",
        }


class SubscriptionBroker:
    def __init__(self, bus: EventBus):
        self._bus = bus
        self._lock = threading.Lock()
        self._consumers: dict[str, ConsumerSubscription] = {}
        self._by_type: dict[EventType, list[str]] = {}
        self._upstream: dict[EventType, Subscription] = {}
        self._counter = 0

    def create(
        self,
        consumer: str,
        event_type: str,
        filter_subject: str | None,
        created_tick: int,
    ) -> ConsumerSubscription:
        try:
            etype = EventType(event_type)
        except ValueError:
            raise UnknownEventTypeError(f"unknown event_type: {event_type}") from None
        with self._lock:
            self._counter += 1
            record = ConsumerSubscription(
                id=f"evsub_{self._counter}",
                consumer=consumer,
                event_type=etype,
                filter_subject=filter_subject,
                created_tick=created_tick,
            )
            self._consumers[record.id] = record
            self._by_type.setdefault(etype, []).append(record.id)
            if etype not in self._upstream:
                # The single upstream subscription this event type will ever hold.
                self._upstream[etype] = self._bus.subscribe(
                    etype, lambda event, _t=etype: self._fan_out(_t, event)
                )
            return record

    def _fan_out(self, etype: EventType, event: NetworkEvent) -> None:
        with self._lock:
            targets = [self._consumers[cid] for cid in self._by_type.get(etype, [])]
        for record in targets:
            if record.active and record.matches(event):
                record.inbox.put(event.to_record())

    def get(self, sub_id: str) -> ConsumerSubscription:
        with self._lock:
            record = self._consumers.get(sub_id)
        if record is None:
            raise UnknownConsumerError(sub_id)
        return record

    def delete(self, sub_id: str) -> None:
        with self._lock:
            record = self._consumers.pop(sub_id, None)
            if record is None:
                raise UnknownConsumerError(sub_id)
            record.active = False
            ids = self._by_type.get(record.event_type, [])
            if sub_id in ids:
                ids.remove(sub_id)
            if not ids:
                # Last consumer gone: release the upstream subscription.
                upstream = self._upstream.pop(record.event_type, None)
                if upstream is not None:
                    upstream.unsubscribe()
                self._by_type.pop(record.event_type, None)

    def stream(self, sub_id: str, heartbeat_s: float = 5.0):
        """Line-delimited event stream; emits a heartbeat line when idle."""
        record = self.get(sub_id)
        while record.active:
            try:
                item = record.inbox.get(timeout=heartbeat_s)
            except queue.Empty:
                yield canonical_json({"heartbeat": True}) + b"\n"
                continue
            yield canonical_json(item) + b"\n"

    def upstream_counts(self) -> dict[str, int]:
        with self._lock:
            counts = {etype.value: 0 for etype in EventType}
            for etype in self._upstream:
                counts[etype.value] = 1
            return counts

    def consumer_counts(self) -> dict[str, int]:
        with self._lock:
            counts = {etype.value: 0 for etype in EventType}
            for etype, ids in self._by_type.items():
                counts[etype.value] = len(ids)
            return counts

    def list_for(self, consumer: str) -> list[dict]:
        with self._lock:
            return [r.to_dict() for r in self._consumers.values() if r.consumer == consumer]
