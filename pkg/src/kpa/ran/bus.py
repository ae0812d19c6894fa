"""Internal event bus: typed publish/subscribe with in-tick-order delivery."""

from __future__ import annotations

from collections import defaultdict
from typing import Callable

from .events import EventType, NetworkEvent

Consumer = Callable[[NetworkEvent], None]


class Subscription:
    """Handle returned by subscribe(); call unsubscribe() to stop delivery."""

    def __init__(self, bus: "EventBus", event_type: EventType, consumer: Consumer):
        self._bus = bus
        self.event_type = event_type
        self.consumer = consumer
        self.active = True

    def unsubscribe(self) -> None:
        if self.active:
            self._bus._remove(self)
            self.active = False


class EventBus:
    """Synchronous fan-out to every subscriber of the matching event type.

    Delivery is at-least-once and in non-decreasing tick order: batches are
    stably sorted by tick before fan-out, and the simulator flushes once per
    tick.
    """

    def __init__(self) -> None:
        self._subs: dict[EventType, list[Subscription]] = defaultdict(list)

    def subscribe(self, event_type: EventType, consumer: Consumer) -> Subscription:
        sub = Subscription(self, event_type, consumer)
        self._subs[event_type].append(sub)
        return sub

    def _remove(self, sub: Subscription) -> None:
        subs = self._subs.get(sub.event_type, [])
        if sub in subs:
            subs.remove(sub)

    def subscriber_count(self, event_type: EventType) -> int:
        return len(self._subs.get(event_type, []))

    def publish(self, event: NetworkEvent) -> None:
        # Copy: a consumer may unsubscribe during delivery.
        for sub in list(self._subs.get(event.type, [])):
            if sub.active:
                sub.consumer(event)

    def publish_batch(self, events: list[NetworkEvent]) -> None:
        for event in sorted(events, key=lambda e: e.tick):
            self.publish(event)
