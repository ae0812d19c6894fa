"""HTTP knowledge API over the simulator, ontology, and catalog."""

from .app import create_app, serve
from .auth import AuthTable, Principal, authorize
from .context import ServiceConfig, ServiceContext
from .insights import DEFAULT_RULES, InsightRule, evaluate_all
from .snapshots import EvictedTickError, SnapshotStore, UnknownTickError

__all__ = [
    "AuthTable",
    "DEFAULT_RULES",
    "EvictedTickError",
    "InsightRule",
    "Principal",
    "ServiceConfig",
    "ServiceContext",
    "SnapshotStore",
    "UnknownTickError",
    "authorize",
    "create_app",
    "evaluate_all",
    "serve",
]
