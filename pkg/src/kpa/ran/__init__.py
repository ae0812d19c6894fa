"""Discrete-tick RAN simulator."""

from .bus import EventBus, Subscription
from .entities import (
    Cell,
    ConnectionState,
    EdgeServer,
    GNB,
    NetworkState,
    RIC,
    ServiceSubscription,
    UE,
)
from .events import EventType, NetworkEvent
from .procedures import connect, detach, evaluate_a3, execute_handover, get_load, power_up
from .radio import compute_cqi, compute_rsrp, compute_sinr
from .ric import load_balance
from .scheduler import allocate_prbs
from .sim import Simulator, init_network

__all__ = [
    "Cell",
    "ConnectionState",
    "EdgeServer",
    "EventBus",
    "EventType",
    "GNB",
    "NetworkEvent",
    "NetworkState",
    "RIC",
    "ServiceSubscription",
    "Simulator",
    "Subscription",
    "UE",
    "allocate_prbs",
    "compute_cqi",
    "compute_rsrp",
    "compute_sinr",
    "connect",
    "detach",
    "evaluate_a3",
    "execute_handover",
    "get_load",
    "init_network",
    "load_balance",
    "power_up",
]
