"""Simulation configuration: defaults, validation, and file loading."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field


class ConfigError(ValueError):
    """Invalid configuration; message names the offending field."""


def _default_edge_servers() -> list[dict]:
    return [{"id": "edge1", "capacity": 100}, {"id": "edge2", "capacity": 100}]


@dataclass
class SimConfig:
    seed: int = 42
    tick_duration_ms: int = 100
    area: tuple[float, float] = (1000.0, 1000.0)
    # Either explicit [x, y] placements or an int count auto-placed on a grid.
    gnbs: list | int = 2
    cells_per_gnb: int = 2
    ue_count: int = 10
    prb_capacity_per_cell: int = 100
    a3_hysteresis_db: float = 2.0
    a3_ttt_ticks: int = 3
    mobility_speed_mps: tuple[float, float] = (1.0, 15.0)
    edge_servers: list[dict] = field(default_factory=_default_edge_servers)

    # Radio model (log-distance pathloss, interference-free SINR).
    tx_power_dbm: float = 30.0
    pathloss_ref_db: float = 32.0
    pathloss_exponent: float = 3.5
    ref_distance_m: float = 1.0
    noise_floor_dbm: float = -100.0
    attach_floor_dbm: float = -120.0

    # RIC load-balancing policy.
    cio_step_db: float = 1.0
    cio_cap_db: float = 6.0
    load_imbalance_threshold: float = 0.3

    # Per-UE PRB demand is sampled once from this inclusive range.
    demand_prbs_range: tuple[int, int] = (5, 20)

    # Power-up scheduling: explicit {tick: [ue ids]} wins; otherwise, when
    # auto_power_up is set, UE k powers up at tick 1 + (k-1) % 10.
    auto_power_up: bool = True
    power_up_schedule: dict[int, list[str]] | None = None

    def validate(self) -> None:
        if self.ue_count < 0:
            raise ConfigError(f"ue_count must be >= 0, got {self.ue_count}")
        if self.prb_capacity_per_cell < 1:
            raise ConfigError(
                f"prb_capacity_per_cell must be >= 1, got {self.prb_capacity_per_cell}"
            )
        if self.a3_ttt_ticks < 1:
            raise ConfigError(f"a3_ttt_ticks must be >= 1, got {self.a3_ttt_ticks}")
        if len(self.area) != 2 or self.area[0] <= 0 or self.area[1] <= 0:
            raise ConfigError(f"area dimensions must be > 0, got {self.area}")
        if self.tick_duration_ms <= 0:
            raise ConfigError(f"tick_duration_ms must be > 0, got {self.tick_duration_ms}")
        if self.cells_per_gnb < 1:
            raise ConfigError(f"cells_per_gnb must be >= 1, got {self.cells_per_gnb}")
        if isinstance(self.gnbs, int):
            if self.gnbs < 0:
                raise ConfigError(f"gnbs count must be >= 0, got {self.gnbs}")
        else:
            for p in self.gnbs:
                if len(p) != 2:
                    raise ConfigError(f"gnbs placement must be [x, y], got {p}")
        lo, hi = self.mobility_speed_mps
        if lo < 0 or hi < lo:
            raise ConfigError(
                f"mobility_speed_mps must be a non-negative (min, max) range, got {self.mobility_speed_mps}"
            )
        dlo, dhi = self.demand_prbs_range
        if dlo < 0 or dhi < dlo:
            raise ConfigError(f"demand_prbs_range must be a (min, max) range, got {self.demand_prbs_range}")
        for srv in self.edge_servers:
            if "id" not in srv or "capacity" not in srv or srv["capacity"] < 0:
                raise ConfigError(f"edge_servers entries need id and capacity >= 0, got {srv}")

    def gnb_positions(self) -> list[tuple[float, float]]:
        """Explicit placements, or a deterministic grid for an int count."""
        if not isinstance(self.gnbs, int):
            return [(float(x), float(y)) for x, y in self.gnbs]
        n = self.gnbs
        if n == 0:
            return []
        cols = 1
        while cols * cols < n:
            cols += 1
        rows = (n + cols - 1) // cols
        w, h = self.area
        positions = []
        for k in range(n):
            r, c = divmod(k, cols)
            positions.append((w * (c + 1) / (cols + 1), h * (r + 1) / (rows + 1)))
        return positions

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "SimConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        cfg = cls(**data)
        # JSON has no tuples; normalize list-valued fields.
        cfg.area = tuple(cfg.area)
        cfg.mobility_speed_mps = tuple(cfg.mobility_speed_mps)
        cfg.demand_prbs_range = tuple(cfg.demand_prbs_range)
        if cfg.power_up_schedule is not None:
            cfg.power_up_schedule = {int(t): list(v) for t, v in cfg.power_up_schedule.items()}
        cfg.validate()
        return cfg

    @classmethod
    def from_file(cls, path: str) -> "SimConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))
