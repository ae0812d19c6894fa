"""Simulator entities: UEs, cells, gNBs, edge servers, RIC policy, full state."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class ConnectionState(str, Enum):
    DETACHED = "DETACHED"
    ATTACHING = "ATTACHING"
    CONNECTED = "CONNECTED"
    HANDOVER = "HANDOVER"


@dataclass
class UE:
    """A user terminal. rsrp_map holds the latest per-cell measurement in dBm."""

    id: str
    position: tuple[float, float]
    serving_cell: str | None = None
    connection_state: ConnectionState = ConnectionState.DETACHED
    cqi: int = 0
    rsrp_map: dict[str, float] = field(default_factory=dict)
    prb_allocated: int = 0
    demand_prbs: int = 0
    a3_counters: dict[str, int] = field(default_factory=dict)
    ai_subscriptions: list[str] = field(default_factory=list)
    # Mobility internals (random waypoint), not exposed as knowledge attributes.
    speed_mps: float = 0.0
    waypoint: tuple[float, float] = (0.0, 0.0)

    def clone(self) -> "UE":
        return UE(
            id=self.id,
            position=self.position,
            serving_cell=self.serving_cell,
            connection_state=self.connection_state,
            cqi=self.cqi,
            rsrp_map=dict(self.rsrp_map),
            prb_allocated=self.prb_allocated,
            demand_prbs=self.demand_prbs,
            a3_counters=dict(self.a3_counters),
            ai_subscriptions=list(self.ai_subscriptions),
            speed_mps=self.speed_mps,
            waypoint=self.waypoint,
        )

    def to_state_dict(self) -> dict:
        return {
            "id": self.id,
            "position": list(self.position),
            "serving_cell": self.serving_cell,
            "connection_state": self.connection_state.value,
            "cqi": self.cqi,
            "rsrp_map": self.rsrp_map,
            "prb_allocated": self.prb_allocated,
            "demand_prbs": self.demand_prbs,
            "a3_counters": self.a3_counters,
            "ai_subscriptions": self.ai_subscriptions,
            "speed_mps": self.speed_mps,
            "waypoint": list(self.waypoint),
        }

    @classmethod
    def from_state_dict(cls, d: dict) -> "UE":
        return cls(
            id=d["id"],
            position=tuple(d["position"]),
            serving_cell=d["serving_cell"],
            connection_state=ConnectionState(d["connection_state"]),
            cqi=d["cqi"],
            rsrp_map=dict(d["rsrp_map"]),
            prb_allocated=d["prb_allocated"],
            demand_prbs=d["demand_prbs"],
            a3_counters=dict(d["a3_counters"]),
            ai_subscriptions=list(d["ai_subscriptions"]),
            speed_mps=d["speed_mps"],
            waypoint=tuple(d["waypoint"]),
        )


@dataclass
class Cell:
    """A radio cell. cio maps neighbor cell id -> offset in dB applied to that
    neighbor's measurements in handover evaluation."""

    id: str
    gnb_id: str
    position: tuple[float, float]
    tx_power_dbm: float
    frequency_mhz: float
    prb_capacity: int
    prb_allocated_total: int = 0
    cio: dict[str, float] = field(default_factory=dict)
    connected_ues: set[str] = field(default_factory=set)

    def clone(self) -> "Cell":
        return Cell(
            id=self.id,
            gnb_id=self.gnb_id,
            position=self.position,
            tx_power_dbm=self.tx_power_dbm,
            frequency_mhz=self.frequency_mhz,
            prb_capacity=self.prb_capacity,
            prb_allocated_total=self.prb_allocated_total,
            cio=dict(self.cio),
            connected_ues=set(self.connected_ues),
        )

    def to_state_dict(self) -> dict:
        return {
            "id": self.id,
            "gnb_id": self.gnb_id,
            "position": list(self.position),
            "tx_power_dbm": self.tx_power_dbm,
            "frequency_mhz": self.frequency_mhz,
            "prb_capacity": self.prb_capacity,
            "prb_allocated_total": self.prb_allocated_total,
            "cio": self.cio,
            "connected_ues": sorted(self.connected_ues),
        }

    @classmethod
    def from_state_dict(cls, d: dict) -> "Cell":
        return cls(
            id=d["id"],
            gnb_id=d["gnb_id"],
            position=tuple(d["position"]),
            tx_power_dbm=d["tx_power_dbm"],
            frequency_mhz=d["frequency_mhz"],
            prb_capacity=d["prb_capacity"],
            prb_allocated_total=d["prb_allocated_total"],
            cio=dict(d["cio"]),
            connected_ues=set(d["connected_ues"]),
        )


@dataclass
class GNB:
    id: str
    position: tuple[float, float]
    cell_ids: list[str] = field(default_factory=list)

    def clone(self) -> "GNB":
        return GNB(id=self.id, position=self.position, cell_ids=list(self.cell_ids))

    def to_state_dict(self) -> dict:
        return {"id": self.id, "position": list(self.position), "cell_ids": self.cell_ids}

    @classmethod
    def from_state_dict(cls, d: dict) -> "GNB":
        return cls(id=d["id"], position=tuple(d["position"]), cell_ids=list(d["cell_ids"]))


@dataclass
class EdgeServer:
    id: str
    capacity: int
    used: int = 0

    def clone(self) -> "EdgeServer":
        return EdgeServer(id=self.id, capacity=self.capacity, used=self.used)

    def to_state_dict(self) -> dict:
        return {"id": self.id, "capacity": self.capacity, "used": self.used}

    @classmethod
    def from_state_dict(cls, d: dict) -> "EdgeServer":
        return cls(id=d["id"], capacity=d["capacity"], used=d["used"])


@dataclass
class RIC:
    """Controller policy record: active apps and their parameters."""

    xapps: list[str] = field(default_factory=lambda: ["load_balance"])
    a3_policy: dict = field(default_factory=dict)
    cio_policy: dict = field(default_factory=dict)

    def clone(self) -> "RIC":
        return RIC(xapps=list(self.xapps), a3_policy=dict(self.a3_policy), cio_policy=dict(self.cio_policy))

    def to_state_dict(self) -> dict:
        return {"xapps": self.xapps, "a3_policy": self.a3_policy, "cio_policy": self.cio_policy}

    @classmethod
    def from_state_dict(cls, d: dict) -> "RIC":
        return cls(xapps=list(d["xapps"]), a3_policy=dict(d["a3_policy"]), cio_policy=dict(d["cio_policy"]))


@dataclass
class ServiceSubscription:
    """An edge AI deployment binding a UE set to a service on an edge server.

    Lives inside NetworkState so capacity accounting and UE back-references
    stay consistent with snapshots and survive crash recovery.
    """

    id: str
    service_id: str
    ue_ids: list[str]
    edge_server_id: str
    endpoint_url: str
    status: str = "ACTIVE"
    created_tick: int = 0
    resource_units_total: int = 0

    def clone(self) -> "ServiceSubscription":
        return ServiceSubscription(
            id=self.id,
            service_id=self.service_id,
            ue_ids=list(self.ue_ids),
            edge_server_id=self.edge_server_id,
            endpoint_url=self.endpoint_url,
            status=self.status,
            created_tick=self.created_tick,
            resource_units_total=self.resource_units_total,
        )

    def to_state_dict(self) -> dict:
        return {
            "id": self.id,
            "service_id": self.service_id,
            "ue_ids": self.ue_ids,
            "edge_server_id": self.edge_server_id,
            "endpoint_url": self.endpoint_url,
            "status": self.status,
            "created_tick": self.created_tick,
            "resource_units_total": self.resource_units_total,
        }

    @classmethod
    def from_state_dict(cls, d: dict) -> "ServiceSubscription":
        return cls(
            id=d["id"],
            service_id=d["service_id"],
            ue_ids=list(d["ue_ids"]),
            edge_server_id=d["edge_server_id"],
            endpoint_url=d["endpoint_url"],
            status=d["status"],
            created_tick=d["created_tick"],
            resource_units_total=d["resource_units_total"],
        )


@dataclass
class NetworkState:
    tick: int = 0
    ues: dict[str, UE] = field(default_factory=dict)
    cells: dict[str, Cell] = field(default_factory=dict)
    gnbs: dict[str, GNB] = field(default_factory=dict)
    ric: RIC = field(default_factory=RIC)
    edge_servers: dict[str, EdgeServer] = field(default_factory=dict)
    service_subscriptions: dict[str, ServiceSubscription] = field(default_factory=dict)

    def clone(self) -> "NetworkState":
        return NetworkState(
            tick=self.tick,
            ues={k: v.clone() for k, v in self.ues.items()},
            cells={k: v.clone() for k, v in self.cells.items()},
            gnbs={k: v.clone() for k, v in self.gnbs.items()},
            ric=self.ric.clone(),
            edge_servers={k: v.clone() for k, v in self.edge_servers.items()},
            service_subscriptions={k: v.clone() for k, v in self.service_subscriptions.items()},
        )

    def to_state_dict(self) -> dict:
        return {
            "tick": self.tick,
            "ues": {k: v.to_state_dict() for k, v in sorted(self.ues.items())},
            "cells": {k: v.to_state_dict() for k, v in sorted(self.cells.items())},
            "gnbs": {k: v.to_state_dict() for k, v in sorted(self.gnbs.items())},
            "ric": self.ric.to_state_dict(),
            "edge_servers": {k: v.to_state_dict() for k, v in sorted(self.edge_servers.items())},
            "service_subscriptions": {
                k: v.to_state_dict() for k, v in sorted(self.service_subscriptions.items())
            },
        }

    @classmethod
    def from_state_dict(cls, d: dict) -> "NetworkState":
        return cls(
            tick=d["tick"],
            ues={k: UE.from_state_dict(v) for k, v in d["ues"].items()},
            cells={k: Cell.from_state_dict(v) for k, v in d["cells"].items()},
            gnbs={k: GNB.from_state_dict(v) for k, v in d["gnbs"].items()},
            ric=RIC.from_state_dict(d["ric"]),
            edge_servers={k: EdgeServer.from_state_dict(v) for k, v in d["edge_servers"].items()},
            service_subscriptions={
                k: ServiceSubscription.from_state_dict(v)
                for k, v in d.get("service_subscriptions", {}).items()
            },
        )

    def check_integrity(self) -> list[str]:
        """Referential integrity and conservation checks; returns violations."""
        problems = []
        for ue in self.ues.values():
            if ue.serving_cell is not None and ue.serving_cell not in self.cells:
                problems.append(f"{ue.id}: serving_cell {ue.serving_cell} unknown")
            attached = ue.connection_state in (ConnectionState.CONNECTED, ConnectionState.HANDOVER)
            if attached != (ue.serving_cell is not None):
                problems.append(f"{ue.id}: serving_cell presence inconsistent with {ue.connection_state.value}")
            if ue.connection_state is ConnectionState.DETACHED and ue.prb_allocated != 0:
                problems.append(f"{ue.id}: DETACHED with prb_allocated={ue.prb_allocated}")
            if not 0 <= ue.cqi <= 15:
                problems.append(f"{ue.id}: cqi {ue.cqi} out of range")
            if ue.prb_allocated < 0:
                problems.append(f"{ue.id}: negative prb_allocated")
        membership: dict[str, list[str]] = {}
        for cell in self.cells.values():
            if cell.gnb_id not in self.gnbs:
                problems.append(f"{cell.id}: gnb_id {cell.gnb_id} unknown")
            if not 0 <= cell.prb_allocated_total <= cell.prb_capacity:
                problems.append(f"{cell.id}: prb_allocated_total {cell.prb_allocated_total} out of bounds")
            allocated = 0
            for uid in cell.connected_ues:
                membership.setdefault(uid, []).append(cell.id)
                ue = self.ues.get(uid)
                if ue is None:
                    problems.append(f"{cell.id}: connected UE {uid} unknown")
                elif ue.serving_cell != cell.id:
                    problems.append(f"{cell.id}: member {uid} serves {ue.serving_cell}")
                else:
                    allocated += ue.prb_allocated
            if allocated != cell.prb_allocated_total:
                problems.append(
                    f"{cell.id}: per-UE allocations {allocated} != prb_allocated_total {cell.prb_allocated_total}"
                )
        for uid, cells in membership.items():
            if len(cells) > 1:
                problems.append(f"{uid}: member of multiple cells {sorted(cells)}")
        for sub in self.service_subscriptions.values():
            if sub.edge_server_id not in self.edge_servers:
                problems.append(f"{sub.id}: edge server {sub.edge_server_id} unknown")
            for uid in sub.ue_ids:
                if uid not in self.ues:
                    problems.append(f"{sub.id}: UE {uid} unknown")
        for srv in self.edge_servers.values():
            active = sum(
                s.resource_units_total
                for s in self.service_subscriptions.values()
                if s.status == "ACTIVE" and s.edge_server_id == srv.id
            )
            if active != srv.used or srv.used > srv.capacity:
                problems.append(f"{srv.id}: used {srv.used} vs active subscriptions {active} (cap {srv.capacity})")
        return problems
