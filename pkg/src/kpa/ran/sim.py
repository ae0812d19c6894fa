"""Discrete-tick simulator: network construction and the per-tick pipeline."""

from __future__ import annotations

import math
import random

from ..config import ConfigError, SimConfig
from . import mobility, procedures, radio, ric, scheduler
from .bus import EventBus
from .entities import Cell, ConnectionState, EdgeServer, GNB, NetworkState, RIC, UE
from .events import EventType, NetworkEvent

# Cells of one gNB are spread on a small ring around it so their ids differ
# in RSRP and inter-gNB handovers dominate, as with sectorized deployments.
CELL_RING_RADIUS_M = 10.0
BASE_FREQUENCY_MHZ = 3500.0


def init_network(config: SimConfig) -> NetworkState:
    """Build the tick-0 state deterministically from (config, config.seed)."""
    config.validate()
    state = NetworkState(tick=0)

    positions = config.gnb_positions()
    for g, (gx, gy) in enumerate(positions, start=1):
        gnb = GNB(id=f"gnb{g}", position=(gx, gy))
        state.gnbs[gnb.id] = gnb
        for c in range(config.cells_per_gnb):
            angle = 2.0 * math.pi * c / config.cells_per_gnb
            cell = Cell(
                id=f"cell_{gnb.id}_{c}",
                gnb_id=gnb.id,
                position=(
                    gx + CELL_RING_RADIUS_M * math.cos(angle),
                    gy + CELL_RING_RADIUS_M * math.sin(angle),
                ),
                tx_power_dbm=config.tx_power_dbm,
                frequency_mhz=BASE_FREQUENCY_MHZ + 20.0 * c,
                prb_capacity=config.prb_capacity_per_cell,
            )
            state.cells[cell.id] = cell
            gnb.cell_ids.append(cell.id)

    dlo, dhi = config.demand_prbs_range
    slo, shi = config.mobility_speed_mps
    for k in range(1, config.ue_count + 1):
        ue_id = f"IMSI_{k}"
        init_rng = mobility.ue_rng(config.seed, ue_id, "init")
        move_rng = mobility.ue_rng(config.seed, ue_id, "mobility")
        state.ues[ue_id] = UE(
            id=ue_id,
            position=(init_rng.uniform(0.0, config.area[0]), init_rng.uniform(0.0, config.area[1])),
            demand_prbs=init_rng.randint(dlo, dhi),
            speed_mps=init_rng.uniform(slo, shi),
            waypoint=mobility.pick_waypoint(move_rng, config.area),
        )

    for srv in config.edge_servers:
        state.edge_servers[srv["id"]] = EdgeServer(id=srv["id"], capacity=int(srv["capacity"]))

    state.ric = RIC(
        xapps=["load_balance"],
        a3_policy={"hysteresis_db": config.a3_hysteresis_db, "ttt_ticks": config.a3_ttt_ticks},
        cio_policy={
            "step_db": config.cio_step_db,
            "cap_db": config.cio_cap_db,
            "imbalance_threshold": config.load_imbalance_threshold,
        },
    )
    return state


def default_power_up_schedule(config: SimConfig) -> dict[int, list[str]]:
    if config.power_up_schedule is not None:
        return {int(t): list(ids) for t, ids in config.power_up_schedule.items()}
    if not config.auto_power_up:
        return {}
    schedule: dict[int, list[str]] = {}
    for k in range(1, config.ue_count + 1):
        schedule.setdefault(1 + (k - 1) % 10, []).append(f"IMSI_{k}")
    return schedule


class Simulator:
    """Owns the network state and advances it one tick at a time.

    step() is never re-entered: callers (the service clock, the CLI loop)
    drive it from a single logical timeline. External commands are queued
    and applied at the start of the next tick, in arrival order after any
    scheduled commands for that tick.
    """

    def __init__(self, config: SimConfig):
        config.validate()
        self.config = config
        self.state = init_network(config)
        self.bus = EventBus()
        self.scheduled: dict[int, list[dict]] = {
            tick: [{"op": "power_up", "ue": ue_id} for ue_id in ids]
            for tick, ids in default_power_up_schedule(config).items()
        }
        self._queued: list[dict] = []
        self._move_rngs: dict[str, random.Random] = {
            ue_id: mobility.ue_rng(config.seed, ue_id, "mobility") for ue_id in self.state.ues
        }

    # -- external command surface -------------------------------------------------

    def queue_command(self, command: dict) -> None:
        self._queued.append(dict(command))

    def add_scheduled(self, tick: int, command: dict) -> None:
        self.scheduled.setdefault(tick, []).append(dict(command))

    def publish_external(self, events: list[NetworkEvent]) -> None:
        """Publish out-of-pipeline events (e.g. provisioning) on the bus."""
        self.bus.publish_batch(events)

    # -- tick pipeline --------------------------------------------------------------

    def step(self) -> list[NetworkEvent]:
        state = self.state
        state.tick += 1
        tick = state.tick
        events: list[NetworkEvent] = []

        # 1. commands
        pending_power_up: list[str] = []
        commands = list(self.scheduled.pop(tick, [])) + self._queued
        self._queued = []
        for cmd in commands:
            events.extend(self._apply_command(cmd, pending_power_up))

        # 2. mobility
        dt_s = self.config.tick_duration_ms / 1000.0
        for ue_id in sorted(state.ues):
            ue = state.ues[ue_id]
            mobility.step_ue(ue, self._move_rngs[ue_id], dt_s, self.config.area)

        # 3. measurements
        for ue_id in sorted(state.ues):
            ue = state.ues[ue_id]
            ue.rsrp_map = {
                cell_id: radio.compute_rsrp(
                    ue.position,
                    cell,
                    ref_loss_db=self.config.pathloss_ref_db,
                    exponent=self.config.pathloss_exponent,
                    ref_distance_m=self.config.ref_distance_m,
                )
                for cell_id, cell in state.cells.items()
            }
            if ue.connection_state is ConnectionState.CONNECTED:
                sinr = radio.compute_sinr(
                    ue.rsrp_map[ue.serving_cell], noise_floor_dbm=self.config.noise_floor_dbm
                )
                ue.cqi = radio.compute_cqi(sinr)
            else:
                ue.cqi = 0

        # 4. power-up, then A3 evaluation
        for ue_id in sorted(set(pending_power_up)):
            ue = state.ues.get(ue_id)
            if ue is not None:
                events.extend(
                    procedures.power_up(state, ue, attach_floor_dbm=self.config.attach_floor_dbm)
                )
        handover_intents: list[tuple[str, str]] = []
        hysteresis = self.config.a3_hysteresis_db
        ttt = self.config.a3_ttt_ticks
        for ue_id in sorted(state.ues):
            ue = state.ues[ue_id]
            if ue.connection_state is not ConnectionState.CONNECTED:
                continue
            serving = state.cells[ue.serving_cell]
            triggered: list[str] = []
            for cell_id in sorted(state.cells):
                if cell_id == serving.id:
                    continue
                hit = procedures.evaluate_a3(ue, serving, state.cells[cell_id], hysteresis, ttt)
                if hit is not None:
                    triggered.append(hit)
            if triggered:
                # Strongest adjusted measurement wins; ties go to the smaller id.
                target = min(
                    triggered,
                    key=lambda cid: (-(ue.rsrp_map[cid] + serving.cio.get(cid, 0.0)), cid),
                )
                handover_intents.append((ue_id, target))

        # 5. handover execution
        for ue_id, target_id in handover_intents:
            ue = state.ues[ue_id]
            if ue.connection_state is not ConnectionState.CONNECTED or ue.serving_cell == target_id:
                continue
            events.extend(procedures.execute_handover(state, ue, state.cells[target_id]))

        # 6. PRB scheduling
        for cell_id in sorted(state.cells):
            scheduler.apply_schedule(state.cells[cell_id], state.ues)

        # 7. RIC apps: load reports feed the load balancer
        for cell_id in sorted(state.cells):
            cell = state.cells[cell_id]
            events.append(
                NetworkEvent(
                    tick=tick,
                    type=EventType.CELL_LOAD_REPORT,
                    subject=cell_id,
                    payload={
                        "load": procedures.get_load(cell),
                        "prb_allocated_total": cell.prb_allocated_total,
                        "connected_count": len(cell.connected_ues),
                    },
                )
            )
        events.extend(
            ric.load_balance(
                state,
                imbalance_threshold=self.config.load_imbalance_threshold,
                step_db=self.config.cio_step_db,
                cap_db=self.config.cio_cap_db,
            )
        )

        # 8. flush
        self.bus.publish_batch(events)
        return events

    def run(self, ticks: int) -> list[NetworkEvent]:
        log: list[NetworkEvent] = []
        for _ in range(ticks):
            log.extend(self.step())
        return log

    def _apply_command(self, cmd: dict, pending_power_up: list[str]) -> list[NetworkEvent]:
        op = cmd.get("op")
        state = self.state
        if op == "power_up":
            ue = state.ues.get(cmd.get("ue"))
            if ue is not None and ue.connection_state is ConnectionState.DETACHED:
                # Selection runs in the attach phase, after fresh measurements.
                pending_power_up.append(ue.id)
            return []
        if op == "detach":
            ue = state.ues.get(cmd.get("ue"))
            return procedures.detach(state, ue) if ue is not None else []
        if op == "move_ue":
            ue = state.ues.get(cmd.get("ue"))
            if ue is not None:
                x, y = cmd["position"]
                ue.position = (float(x), float(y))
            return []
        if op == "set_tx_power":
            cell = state.cells.get(cmd.get("cell"))
            if cell is not None:
                cell.tx_power_dbm = float(cmd["tx_power_dbm"])
            return []
        raise ConfigError(f"unknown simulator command op: {op!r}")

    # -- crash-recovery support ------------------------------------------------------

    def restore_state(self, state: NetworkState) -> None:
        """Adopt a recovered state; mobility streams reseed at the restored tick."""
        self.state = state
        self._move_rngs = {
            ue_id: mobility.ue_rng(self.config.seed, ue_id, f"mobility@{state.tick}")
            for ue_id in state.ues
        }
        self.scheduled = {t: cmds for t, cmds in self.scheduled.items() if t > state.tick}
