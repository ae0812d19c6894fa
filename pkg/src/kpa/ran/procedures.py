"""Attach, measurement-event, and handover procedures.

These functions are also published verbatim through the knowledge docs
endpoints, so they are written to be readable on their own.
"""

from __future__ import annotations

from .entities import Cell, ConnectionState, NetworkState, UE
from .events import EventType, NetworkEvent

ATTACH_FLOOR_DBM = -120.0


def get_load(cell: Cell) -> float:
    """Fraction of the cell's PRB capacity currently allocated (0..1)."""
    return cell.prb_allocated_total / cell.prb_capacity


def connect(state: NetworkState, ue: UE, cell: Cell) -> int:
    """Attach the UE to the cell and grant an initial PRB allocation.

    The grant is min(demand, free capacity); the per-tick scheduler will
    rebalance on the next pass. Returns the number of PRBs granted.
    """
    free = cell.prb_capacity - cell.prb_allocated_total
    granted = min(ue.demand_prbs, free)
    ue.serving_cell = cell.id
    ue.connection_state = ConnectionState.CONNECTED
    ue.prb_allocated = granted
    ue.a3_counters.clear()
    cell.connected_ues.add(ue.id)
    cell.prb_allocated_total += granted
    return granted


def power_up(
    state: NetworkState,
    ue: UE,
    *,
    attach_floor_dbm: float = ATTACH_FLOOR_DBM,
) -> list[NetworkEvent]:
    """Power-up procedure for a detached UE.

    The UE selects the cell with the strongest measured RSRP (ties broken by
    the lexicographically smaller cell id), transitions ATTACHING ->
    CONNECTED within the tick, and receives an initial PRB allocation. If no
    cell measures above the attach floor the UE stays DETACHED and no event
    is emitted.
    """
    if ue.connection_state is not ConnectionState.DETACHED:
        return []
    best_cell = None
    best_rsrp = attach_floor_dbm
    for cell_id in sorted(ue.rsrp_map):
        rsrp = ue.rsrp_map[cell_id]
        if rsrp > best_rsrp:
            best_cell, best_rsrp = cell_id, rsrp
    if best_cell is None:
        return []
    ue.connection_state = ConnectionState.ATTACHING
    granted = connect(state, ue, state.cells[best_cell])
    return [
        NetworkEvent(
            tick=state.tick,
            type=EventType.UE_ATTACHED,
            subject=ue.id,
            payload={"cell": best_cell, "rsrp_dbm": best_rsrp, "prb_granted": granted},
        )
    ]


def evaluate_a3(
    ue: UE,
    serving: Cell,
    neighbor: Cell,
    hysteresis_db: float,
    ttt_ticks: int,
) -> str | None:
    """One-tick A3 evaluation for a single neighbor.

    Condition: rsrp(neighbor) + cio(serving -> neighbor) > rsrp(serving) +
    hysteresis. The per-neighbor counter increments while the condition
    holds and resets to zero otherwise; the neighbor id is returned as a
    handover trigger exactly on the tick the counter reaches ttt_ticks.
    """
    rsrp_n = ue.rsrp_map.get(neighbor.id)
    rsrp_s = ue.rsrp_map.get(serving.id)
    if rsrp_n is None or rsrp_s is None:
        return None
    offset = serving.cio.get(neighbor.id, 0.0)
    if rsrp_n + offset > rsrp_s + hysteresis_db:
        count = ue.a3_counters.get(neighbor.id, 0) + 1
        ue.a3_counters[neighbor.id] = count
        if count == ttt_ticks:
            return neighbor.id
    else:
        ue.a3_counters[neighbor.id] = 0
    return None


def execute_handover(state: NetworkState, ue: UE, target_cell: Cell) -> list[NetworkEvent]:
    """Move a connected UE from its serving cell to target_cell.

    Admission requires at least one free PRB on the target; the grant is
    min(demand, free), so a loaded target admits at a reduced allocation.
    On admission the source releases the UE's PRBs and membership, the
    target gains both, and HANDOVER_TRIGGERED + HANDOVER_COMPLETE are
    emitted. A full target rejects the handover and leaves state unchanged
    apart from resetting the triggering A3 counter.
    """
    source = state.cells[ue.serving_cell]
    free = target_cell.prb_capacity - target_cell.prb_allocated_total
    if free < 1:
        ue.a3_counters[target_cell.id] = 0
        return [
            NetworkEvent(
                tick=state.tick,
                type=EventType.HANDOVER_TRIGGERED,
                subject=ue.id,
                payload={
                    "source": source.id,
                    "target": target_cell.id,
                    "outcome": "rejected",
                    "reason": "target_full",
                },
            )
        ]
    ue.connection_state = ConnectionState.HANDOVER
    source.connected_ues.discard(ue.id)
    source.prb_allocated_total -= ue.prb_allocated
    granted = min(ue.demand_prbs, free)
    target_cell.connected_ues.add(ue.id)
    target_cell.prb_allocated_total += granted
    ue.serving_cell = target_cell.id
    ue.prb_allocated = granted
    ue.a3_counters.clear()
    ue.connection_state = ConnectionState.CONNECTED
    return [
        NetworkEvent(
            tick=state.tick,
            type=EventType.HANDOVER_TRIGGERED,
            subject=ue.id,
            payload={"source": source.id, "target": target_cell.id, "outcome": "accepted"},
        ),
        NetworkEvent(
            tick=state.tick,
            type=EventType.HANDOVER_COMPLETE,
            subject=ue.id,
            payload={"source": source.id, "target": target_cell.id, "prb_granted": granted},
        ),
    ]


def detach(state: NetworkState, ue: UE) -> list[NetworkEvent]:
    """Detach a UE, releasing PRBs and cell membership."""
    if ue.connection_state is ConnectionState.DETACHED:
        return []
    cell = state.cells.get(ue.serving_cell)
    if cell is not None:
        cell.connected_ues.discard(ue.id)
        cell.prb_allocated_total -= ue.prb_allocated
    previous = ue.serving_cell
    ue.serving_cell = None
    ue.connection_state = ConnectionState.DETACHED
    ue.prb_allocated = 0
    ue.cqi = 0
    ue.a3_counters.clear()
    return [
        NetworkEvent(
            tick=state.tick,
            type=EventType.UE_DETACHED,
            subject=ue.id,
            payload={"cell": previous},
        )
    ]
