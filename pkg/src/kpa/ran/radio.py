"""Radio model: log-distance pathloss RSRP, interference-free SINR, CQI map.

The model is intentionally minimal: monotone in distance so that attach and
handover dynamics behave, with no fading or interference terms. All constants
are configurable through SimConfig.
"""

from __future__ import annotations

import math

from .entities import Cell

PATHLOSS_REF_DB = 32.0
PATHLOSS_EXPONENT = 3.5
REF_DISTANCE_M = 1.0
NOISE_FLOOR_DBM = -100.0


def compute_rsrp(
    ue_pos: tuple[float, float],
    cell: Cell,
    *,
    ref_loss_db: float = PATHLOSS_REF_DB,
    exponent: float = PATHLOSS_EXPONENT,
    ref_distance_m: float = REF_DISTANCE_M,
) -> float:
    """Received power in dBm at ue_pos from cell.

    RSRP = tx_power - (PL0 + 10 * n * log10(max(d, d0) / d0)), so the value at
    the reference distance is tx_power - PL0 and every decade of distance
    costs 10 * n dB.
    """
    dx = ue_pos[0] - cell.position[0]
    dy = ue_pos[1] - cell.position[1]
    d = math.sqrt(dx * dx + dy * dy)
    pathloss = ref_loss_db + 10.0 * exponent * math.log10(max(d, ref_distance_m) / ref_distance_m)
    return cell.tx_power_dbm - pathloss


def compute_sinr(rsrp_dbm: float, *, noise_floor_dbm: float = NOISE_FLOOR_DBM) -> float:
    """SINR in dB over a flat noise floor; interference ignored at this scale."""
    return rsrp_dbm - noise_floor_dbm


def compute_cqi(sinr_db: float) -> int:
    """Map SINR to a CQI index in 0..15.

    Piecewise-linear clamp: cqi = clamp(round((sinr + 6) / 2), 0, 15) with
    ties rounding up. Monotone non-decreasing in SINR.
    """
    raw = math.floor((sinr_db + 6.0) / 2.0 + 0.5)
    return max(0, min(15, raw))
