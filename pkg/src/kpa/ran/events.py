"""Network event records emitted by the simulator."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class EventType(str, Enum):
    UE_ATTACHED = "UE_ATTACHED"
    HANDOVER_TRIGGERED = "HANDOVER_TRIGGERED"
    HANDOVER_COMPLETE = "HANDOVER_COMPLETE"
    CELL_LOAD_REPORT = "CELL_LOAD_REPORT"
    CIO_ADJUSTED = "CIO_ADJUSTED"
    UE_DETACHED = "UE_DETACHED"
    AI_SUB_CREATED = "AI_SUB_CREATED"
    AI_SUB_TORN_DOWN = "AI_SUB_TORN_DOWN"


@dataclass
class NetworkEvent:
    tick: int
    type: EventType
    subject: str
    payload: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        return {
            "tick": self.tick,
            "type": self.type.value,
            "subject": self.subject,
            "payload": self.payload,
        }

    @classmethod
    def from_record(cls, record: dict) -> "NetworkEvent":
        return cls(
            tick=record["tick"],
            type=EventType(record["type"]),
            subject=record["subject"],
            payload=record.get("payload", {}),
        )
