"""Random-waypoint mobility with per-UE seeded streams."""

from __future__ import annotations

import random

from .entities import UE


def ue_rng(seed: int, ue_id: str, stream: str) -> random.Random:
    """Deterministic per-UE random stream, independent of iteration order."""
    return random.Random(f"{seed}/{ue_id}/{stream}")


def pick_waypoint(rng: random.Random, area: tuple[float, float]) -> tuple[float, float]:
    return (rng.uniform(0.0, area[0]), rng.uniform(0.0, area[1]))


def step_ue(ue: UE, rng: random.Random, dt_s: float, area: tuple[float, float]) -> None:
    """Advance one tick toward the waypoint; pick a new one on arrival."""
    x, y = ue.position
    wx, wy = ue.waypoint
    dx, dy = wx - x, wy - y
    dist = (dx * dx + dy * dy) ** 0.5
    travel = ue.speed_mps * dt_s
    if dist <= travel or dist == 0.0:
        ue.position = (wx, wy)
        ue.waypoint = pick_waypoint(rng, area)
        return
    ue.position = (x + dx / dist * travel, y + dy / dist * travel)
