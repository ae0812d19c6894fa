"""Per-cell PRB scheduling."""

from __future__ import annotations

from .entities import Cell, UE


def allocate_prbs(cell: Cell, ues: dict[str, UE]) -> dict[str, int]:
    """Round-robin PRB allocation over the cell's connected UEs.

    UEs are visited in id order; each pass grants one PRB to every UE that
    still has unmet demand, until capacity or all demands are exhausted.
    The returned grants always sum to at most prb_capacity.
    """
    order = sorted(cell.connected_ues)
    grants = {uid: 0 for uid in order}
    pending = {uid: max(0, ues[uid].demand_prbs) for uid in order}
    budget = cell.prb_capacity
    while budget > 0:
        progressed = False
        for uid in order:
            if budget == 0:
                break
            if pending[uid] > 0:
                grants[uid] += 1
                pending[uid] -= 1
                budget -= 1
                progressed = True
        if not progressed:
            break
    return grants


def apply_schedule(cell: Cell, ues: dict[str, UE]) -> None:
    """Run the scheduler and write grants back to the cell and its UEs."""
    grants = allocate_prbs(cell, ues)
    total = 0
    for uid, prbs in grants.items():
        ues[uid].prb_allocated = prbs
        total += prbs
    cell.prb_allocated_total = total
