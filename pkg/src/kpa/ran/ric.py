"""RIC load-balancing app: nudges CIO offsets to even out cell loads."""

from __future__ import annotations

from .entities import NetworkState
from .events import EventType, NetworkEvent
from .procedures import get_load


def load_balance(
    state: NetworkState,
    *,
    imbalance_threshold: float = 0.3,
    step_db: float = 1.0,
    cap_db: float = 6.0,
) -> list[NetworkEvent]:
    """Adjust cio(source -> target) for every ordered cell pair.

    When load(source) - load(target) exceeds the imbalance threshold the
    offset grows by step_db (encouraging handovers toward the lighter cell);
    when the imbalance points the other way it shrinks by step_db. Offsets
    saturate at +/- cap_db. One CIO_ADJUSTED event is emitted per change.
    """
    events = []
    loads = {cell_id: get_load(cell) for cell_id, cell in state.cells.items()}
    cell_ids = sorted(state.cells)
    for source_id in cell_ids:
        source = state.cells[source_id]
        for target_id in cell_ids:
            if target_id == source_id:
                continue
            gap = loads[source_id] - loads[target_id]
            if gap > imbalance_threshold:
                delta = step_db
            elif -gap > imbalance_threshold:
                delta = -step_db
            else:
                continue
            old = source.cio.get(target_id, 0.0)
            new = max(-cap_db, min(cap_db, old + delta))
            if new == old:
                continue
            source.cio[target_id] = new
            events.append(
                NetworkEvent(
                    tick=state.tick,
                    type=EventType.CIO_ADJUSTED,
                    subject=source_id,
                    payload={"neighbor": target_id, "old_db": old, "new_db": new},
                )
            )
    return events
