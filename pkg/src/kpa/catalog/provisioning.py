"""Provisioning: place subscriptions on edge servers, render integration snippets."""

from __future__ import annotations

from ..ran.entities import NetworkState, ServiceSubscription
from ..ran.events import EventType, NetworkEvent
from .services import AIServiceDescriptor, Catalog


class ProvisioningError(Exception):
    pass


class UnknownServiceError(ProvisioningError):
    pass


class UnknownUEError(ProvisioningError):
    pass


class UnknownSubscriptionError(ProvisioningError):
    pass


class AlreadyTornDownError(ProvisioningError):
    pass


class CapacityError(ProvisioningError):
    """No edge server can host the subscription; carries per-server headroom."""

    def __init__(self, needed: int, headroom: dict[str, dict]):
        self.needed = needed
        self.headroom = headroom
        super().__init__(f"no edge server has {needed} free capacity units")


def endpoint_url(edge_server_id: str, subscription_id: str) -> str:
    return f"http://{edge_server_id}.edge.local/infer/{subscription_id}"


def render_snippet(service: AIServiceDescriptor, url: str, ue_ids: list[str]) -> str:
    return service.snippet_template.replace("{ENDPOINT_URL}", url).replace(
        "{UE_ID}", ",".join(ue_ids)
    )


def headroom_report(state: NetworkState) -> dict[str, dict]:
    return {
        srv.id: {"capacity": srv.capacity, "used": srv.used, "free": srv.capacity - srv.used}
        for srv in state.edge_servers.values()
    }


def create_subscription(
    state: NetworkState,
    catalog: Catalog,
    ue_ids: list[str],
    service_id: str,
) -> tuple[ServiceSubscription, str, list[NetworkEvent]]:
    """Create an ACTIVE subscription; all-or-nothing.

    Validation happens before any mutation so a failed create leaves UE
    lists, edge usage, and the event stream untouched. Placement picks the
    least-loaded feasible edge server (by used/capacity fraction, ties by
    id). Returns the record, the rendered integration snippet, and the
    events to publish.
    """
    service = catalog.get(service_id)
    if service is None:
        raise UnknownServiceError(f"unknown service: {service_id}")
    if not ue_ids:
        raise UnknownUEError("ue_ids must be non-empty")
    unknown = [uid for uid in ue_ids if uid not in state.ues]
    if unknown:
        raise UnknownUEError(f"unknown UEs: {sorted(unknown)}")
    if len(set(ue_ids)) != len(ue_ids):
        raise UnknownUEError("duplicate UE ids in request")

    needed = service.resource_units * len(ue_ids)
    feasible = [
        srv
        for srv in state.edge_servers.values()
        if srv.capacity - srv.used >= needed
    ]
    if not feasible:
        raise CapacityError(needed, headroom_report(state))
    feasible.sort(key=lambda srv: (srv.used / srv.capacity if srv.capacity else 1.0, srv.id))
    server = feasible[0]

    sub_id = f"sub_{len(state.service_subscriptions) + 1}"
    url = endpoint_url(server.id, sub_id)
    record = ServiceSubscription(
        id=sub_id,
        service_id=service.id,
        ue_ids=list(ue_ids),
        edge_server_id=server.id,
        endpoint_url=url,
        status="ACTIVE",
        created_tick=state.tick,
        resource_units_total=needed,
    )
    server.used += needed
    state.service_subscriptions[sub_id] = record
    for uid in ue_ids:
        state.ues[uid].ai_subscriptions.append(sub_id)
    events = [
        NetworkEvent(
            tick=state.tick,
            type=EventType.AI_SUB_CREATED,
            subject=sub_id,
            payload={
                "service": service.id,
                "ue_ids": list(ue_ids),
                "edge_server": server.id,
                "endpoint_url": url,
            },
        )
    ]
    return record, render_snippet(service, url, list(ue_ids)), events


def get_subscription(state: NetworkState, sub_id: str) -> ServiceSubscription:
    record = state.service_subscriptions.get(sub_id)
    if record is None:
        raise UnknownSubscriptionError(f"unknown subscription: {sub_id}")
    return record


def list_for_ue(state: NetworkState, ue_id: str) -> list[ServiceSubscription]:
    ue = state.ues.get(ue_id)
    if ue is None:
        raise UnknownUEError(f"unknown UE: {ue_id}")
    return [state.service_subscriptions[sid] for sid in ue.ai_subscriptions]


def teardown(state: NetworkState, sub_id: str) -> list[NetworkEvent]:
    """Tear a subscription down, releasing capacity and UE back-references."""
    record = get_subscription(state, sub_id)
    if record.status == "TORN_DOWN":
        raise AlreadyTornDownError(f"subscription already torn down: {sub_id}")
    record.status = "TORN_DOWN"
    server = state.edge_servers[record.edge_server_id]
    server.used -= record.resource_units_total
    for uid in record.ue_ids:
        ue = state.ues.get(uid)
        if ue is not None and sub_id in ue.ai_subscriptions:
            ue.ai_subscriptions.remove(sub_id)
    return [
        NetworkEvent(
            tick=state.tick,
            type=EventType.AI_SUB_TORN_DOWN,
            subject=sub_id,
            payload={"service": record.service_id, "edge_server": record.edge_server_id},
        )
    ]
