"""Small builders shared across the test suite."""

from __future__ import annotations

import socket
import threading
import time

from kpa.config import SimConfig
from kpa.ran import Cell, ConnectionState, NetworkState, UE


def free_port() -> int:
    sock = socket.socket()
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    sock.close()
    return port


class LiveServer:
    """uvicorn in a background thread; required for true streaming reads
    (the in-process test client buffers response bodies)."""

    def __init__(self, app, port: int | None = None):
        import uvicorn

        self.port = port or free_port()
        self.url = f"http://127.0.0.1:{self.port}"
        config = uvicorn.Config(app, host="127.0.0.1", port=self.port, log_level="error")
        self._server = uvicorn.Server(config)
        self._thread = threading.Thread(target=self._server.run, daemon=True)

    def __enter__(self) -> "LiveServer":
        self._thread.start()
        deadline = time.time() + 10.0
        while not self._server.started:
            if time.time() > deadline:
                raise RuntimeError("server did not start")
            time.sleep(0.02)
        return self

    def __exit__(self, *exc) -> None:
        self._server.should_exit = True
        self._thread.join(timeout=5.0)


def make_cell(cell_id="cell_gnb1_0", gnb_id="gnb1", position=(0.0, 0.0), capacity=100, tx=30.0):
    return Cell(
        id=cell_id,
        gnb_id=gnb_id,
        position=position,
        tx_power_dbm=tx,
        frequency_mhz=3500.0,
        prb_capacity=capacity,
    )


def make_ue(ue_id="IMSI_1", position=(0.0, 0.0), demand=10):
    return UE(id=ue_id, position=position, demand_prbs=demand, waypoint=position)


def make_state(cells=(), ues=()) -> NetworkState:
    state = NetworkState(tick=0)
    for cell in cells:
        state.cells[cell.id] = cell
        from kpa.ran import GNB

        state.gnbs.setdefault(cell.gnb_id, GNB(id=cell.gnb_id, position=cell.position))
        state.gnbs[cell.gnb_id].cell_ids.append(cell.id)
    for ue in ues:
        state.ues[ue.id] = ue
    return state


def attach(state: NetworkState, ue: UE, cell: Cell, prbs: int | None = None) -> None:
    grant = ue.demand_prbs if prbs is None else prbs
    grant = min(grant, cell.prb_capacity - cell.prb_allocated_total)
    ue.serving_cell = cell.id
    ue.connection_state = ConnectionState.CONNECTED
    ue.prb_allocated = grant
    cell.connected_ues.add(ue.id)
    cell.prb_allocated_total += grant


def small_config(**overrides) -> SimConfig:
    base = dict(seed=11, ue_count=4, gnbs=2, cells_per_gnb=2, area=(600.0, 600.0))
    base.update(overrides)
    return SimConfig(**base)
