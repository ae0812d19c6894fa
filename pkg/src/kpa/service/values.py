"""Attribute value extraction: one place that maps ontology attribute names
onto live state, shared by the live endpoints and the insight engine."""

from __future__ import annotations

from ..catalog.services import AIServiceDescriptor, Catalog
from ..ran.entities import NetworkState
from ..ran.procedures import get_load


class UnknownEntityError(KeyError):
    pass


class UnknownAttributeError(KeyError):
    pass


def resolve_entity(state: NetworkState, catalog: Catalog, entity_type: str, entity_id: str):
    if entity_type == "ue":
        entity = state.ues.get(entity_id)
    elif entity_type == "cell":
        entity = state.cells.get(entity_id)
    elif entity_type == "gnb":
        entity = state.gnbs.get(entity_id)
    elif entity_type == "edge_server":
        entity = state.edge_servers.get(entity_id)
    elif entity_type == "ric":
        entity = state.ric if entity_id == "ric" else None
    elif entity_type == "ai_service":
        entity = catalog.get(entity_id)
    else:
        raise UnknownEntityError(f"unknown entity type: {entity_type}")
    if entity is None:
        raise UnknownEntityError(f"unknown {entity_type}: {entity_id}")
    return entity


def attribute_value(entity_type: str, entity, attribute: str):
    """Current value of a registered attribute; raises for unknown names."""
    if entity_type == "ue":
        getters = {
            "serving_cell": lambda u: u.serving_cell,
            "connection_state": lambda u: u.connection_state.value,
            "cqi": lambda u: u.cqi,
            "rsrp_map": lambda u: dict(u.rsrp_map),
            "position": lambda u: [u.position[0], u.position[1]],
            "prb_allocated": lambda u: u.prb_allocated,
            "demand_prbs": lambda u: u.demand_prbs,
            "ai_subscriptions": lambda u: list(u.ai_subscriptions),
        }
    elif entity_type == "cell":
        getters = {
            "gnb_id": lambda c: c.gnb_id,
            "load": get_load,
            "cio": lambda c: dict(c.cio),
            "prb_capacity": lambda c: c.prb_capacity,
            "prb_allocated_total": lambda c: c.prb_allocated_total,
            "tx_power_dbm": lambda c: c.tx_power_dbm,
            "frequency_mhz": lambda c: c.frequency_mhz,
            "connected_ues": lambda c: sorted(c.connected_ues),
            "position": lambda c: [c.position[0], c.position[1]],
        }
    elif entity_type == "gnb":
        getters = {
            "position": lambda g: [g.position[0], g.position[1]],
            "cell_ids": lambda g: list(g.cell_ids),
        }
    elif entity_type == "ric":
        getters = {
            "xapps": lambda r: list(r.xapps),
            "a3_policy": lambda r: dict(r.a3_policy),
            "cio_policy": lambda r: dict(r.cio_policy),
        }
    elif entity_type == "edge_server":
        getters = {
            "capacity": lambda s: s.capacity,
            "used": lambda s: s.used,
        }
    elif entity_type == "ai_service":
        getters = {
            "task": lambda s: s.task,
            "modalities": lambda s: list(s.modalities),
            "target_classes": lambda s: list(s.target_classes),
            "latency_class": lambda s: s.latency_class,
            "resource_units": lambda s: s.resource_units,
        }
    else:
        raise UnknownEntityError(f"unknown entity type: {entity_type}")
    getter = getters.get(attribute)
    if getter is None:
        raise UnknownAttributeError(f"unknown attribute: {entity_type}.{attribute}")
    return getter(entity)


def entity_ids(state: NetworkState, catalog: Catalog, entity_type: str) -> list[str]:
    if entity_type == "ue":
        return sorted(state.ues)
    if entity_type == "cell":
        return sorted(state.cells)
    if entity_type == "gnb":
        return sorted(state.gnbs)
    if entity_type == "edge_server":
        return sorted(state.edge_servers)
    if entity_type == "ric":
        return ["ric"]
    if entity_type == "ai_service":
        return [svc.id for svc in catalog.list_services()]
    raise UnknownEntityError(f"unknown entity type: {entity_type}")
