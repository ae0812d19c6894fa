"""The knowledge API: HTTP surface over the simulator, ontology, and catalog."""

from __future__ import annotations

import contextlib
import logging
import os
import time

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import Response, StreamingResponse
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from ..catalog import (
    AlreadyTornDownError,
    CapacityError,
    RequirementProfile,
    UnknownServiceError,
    UnknownSubscriptionError,
    UnknownUEError,
    get_subscription,
    list_for_ue,
)
from ..config import SimConfig
from ..ontology import NotFoundError
from ..ran.procedures import get_load
from . import docs as docs_mod
from .auth import authorize, masked_fields_for, MASK, PUBLIC_PATHS
from .context import ServiceConfig, ServiceContext
from .routes import normalize_route
from .snapshots import EvictedTickError, UnknownTickError
from .subscriptions import UnknownConsumerError, UnknownEventTypeError
from .values import UnknownAttributeError, UnknownEntityError, attribute_value, resolve_entity
from .wire import error_body, error_response, json_response

logger = logging.getLogger(__name__)

SIM_COMMANDS = ("power_up", "detach", "move_ue", "set_tx_power")


class TickRequest(BaseModel):
    count: int = 1


class CommandRequest(BaseModel):
    op: str
    ue: str | None = None
    cell: str | None = None
    position: list[float] | None = None
    tx_power_dbm: float | None = None


class SubscriptionRequest(BaseModel):
    event_type: str
    filter: str | None = None


class MatchRequest(BaseModel):
    modalities: list[str] = []
    realtime: bool = False
    target_classes: list[str] = []
    ue_ids: list[str] = []


class ProvisionRequest(BaseModel):
    ue_ids: list[str]
    service_id: str


def create_app(sim_config: SimConfig, service_config: ServiceConfig | None = None) -> FastAPI:
    service_config = service_config or ServiceConfig()
    ctx = ServiceContext(sim_config, service_config)

    @contextlib.asynccontextmanager
    async def lifespan(app: FastAPI):
        ctx.start_clock()
        yield
        ctx.shutdown()

    # The framework's own docs UI is disabled: /docs belongs to the
    # knowledge endpoints.
    app = FastAPI(lifespan=lifespan, docs_url=None, redoc_url=None, openapi_url=None)
    app.state.ctx = ctx

    # -- middleware: auth, audit, metrics -----------------------------------------

    @app.middleware("http")
    async def access_middleware(request: Request, call_next):
        started = time.perf_counter()
        path = request.url.path
        method = request.method
        principal = ctx.config.auth.resolve(request.headers.get("authorization"))
        response: Response
        if method == "OPTIONS":
            # CORS preflight carries no credentials by design.
            response = Response(status_code=204)
        elif path in PUBLIC_PATHS:
            request.state.principal = principal
            response = await call_next(request)
        elif principal is None:
            response = error_response(401, "authentication required", path)
        elif not authorize(principal.role, method, path):
            response = error_response(403, "out of scope for role " + principal.role, path)
        else:
            request.state.principal = principal
            response = await call_next(request)
        response.headers["access-control-allow-origin"] = "*"
        response.headers["access-control-allow-headers"] = "authorization, content-type"
        response.headers["access-control-allow-methods"] = "GET, POST, DELETE, OPTIONS"
        latency_ms = (time.perf_counter() - started) * 1000.0
        ctx.audit.append(
            sim_tick=ctx.store.latest_tick,
            principal=principal.id if principal else "anonymous",
            method=method,
            path=path,
            outcome=response.status_code,
            latency_ms=latency_ms,
        )
        ctx.metrics.record_request(normalize_route(path), latency_ms)
        return response

    @app.exception_handler(StarletteHTTPException)
    async def http_exception_handler(request: Request, exc: StarletteHTTPException):
        detail = exc.detail
        if isinstance(detail, dict):
            body = error_body(exc.status_code, detail.pop("message", "error"), request.url.path)
            body.update(detail)
            return json_response(body, status_code=exc.status_code)
        return error_response(exc.status_code, str(detail), request.url.path)

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        return error_response(400, f"invalid request body: {exc.errors()[:1]}", request.url.path)

    # -- helpers --------------------------------------------------------------------

    def snapshot_at(at: int | None):
        from fastapi import HTTPException

        try:
            if at is None:
                return ctx.store.latest()
            return ctx.store.get(at)
        except EvictedTickError as err:
            raise HTTPException(410, str(err)) from None
        except UnknownTickError as err:
            raise HTTPException(404, str(err)) from None

    def role_of(request: Request) -> str:
        principal = getattr(request.state, "principal", None)
        return principal.role if principal else "readonly"

    def principal_id(request: Request) -> str:
        principal = getattr(request.state, "principal", None)
        return principal.id if principal else "anonymous"

    # -- simulation clock -------------------------------------------------------------

    @app.post("/sim/tick")
    def sim_tick(body: TickRequest | None = None):
        from fastapi import HTTPException

        if not ctx.config.manual_tick:
            raise HTTPException(409, "manual ticking disabled: the service clock owns time")
        count = body.count if body else 1
        if count < 1:
            raise HTTPException(400, "count must be >= 1")
        tick = ctx.tick(count)
        return json_response({"tick": tick})

    @app.post("/sim/command")
    def sim_command(body: CommandRequest):
        from fastapi import HTTPException

        if body.op not in SIM_COMMANDS:
            raise HTTPException(400, f"unknown command op: {body.op}")
        command = {k: v for k, v in body.model_dump().items() if v is not None}
        effective = ctx.queue_command(command)
        return json_response({"queued": True, "effective_tick": effective})

    # -- live endpoints ----------------------------------------------------------------

    @app.get("/live/network/summary")
    def network_summary(request: Request, at: int | None = None):
        state = snapshot_at(at)
        connected = sum(1 for ue in state.ues.values() if ue.serving_cell is not None)
        cells = {
            cell_id: {"load": get_load(cell), "connected_count": len(cell.connected_ues)}
            for cell_id, cell in state.cells.items()
        }
        insights = ctx.insights_at(state.tick)
        return json_response(
            {
                "tick": state.tick,
                "ue_total": len(state.ues),
                "ue_connected": connected,
                "cells": cells,
                "insights_active": len(insights),
            }
        )

    @app.get("/live/{entity_type}/{entity_id}/attributes/{attribute}")
    def live_attribute(
        request: Request, entity_type: str, entity_id: str, attribute: str, at: int | None = None
    ):
        from fastapi import HTTPException

        state = snapshot_at(at)
        try:
            schema = ctx.registry.get_schema(entity_type)
            entity = resolve_entity(state, ctx.catalog, entity_type, entity_id)
        except (NotFoundError, UnknownEntityError) as err:
            raise HTTPException(404, str(err)) from None
        descriptor = schema.attribute(attribute)
        if descriptor is None:
            raise HTTPException(404, f"unknown attribute: {entity_type}.{attribute}")
        if attribute in masked_fields_for(role_of(request), entity_type):
            value = MASK
        else:
            value = attribute_value(entity_type, entity, attribute)
        return json_response(
            {
                "tick": state.tick,
                "value": value,
                "unit": descriptor.unit,
                "doc_link": f"/docs/{entity_type}/attributes/{attribute}",
            }
        )

    @app.get("/live/{entity_type}/{entity_id}")
    def live_entity(request: Request, entity_type: str, entity_id: str, at: int | None = None):
        from fastapi import HTTPException

        state = snapshot_at(at)
        try:
            schema = ctx.registry.get_schema(entity_type)
            entity = resolve_entity(state, ctx.catalog, entity_type, entity_id)
        except (NotFoundError, UnknownEntityError) as err:
            raise HTTPException(404, str(err)) from None
        masked = masked_fields_for(role_of(request), entity_type)
        attributes = {}
        for descriptor in schema.attributes:
            if descriptor.name in masked:
                attributes[descriptor.name] = MASK
            else:
                attributes[descriptor.name] = attribute_value(entity_type, entity, descriptor.name)
        return json_response(
            {
                "tick": state.tick,
                "entity_type": entity_type,
                "id": entity_id,
                "attributes": attributes,
                "doc_link": f"/docs/{entity_type}",
            }
        )

    # -- docs endpoints ------------------------------------------------------------------

    @app.get("/docs")
    def docs_root():
        return json_response(docs_mod.build_root_doc(ctx.registry))

    @app.get("/docs/{entity_type}")
    def docs_entity(entity_type: str):
        from fastapi import HTTPException

        try:
            return json_response(docs_mod.build_entity_doc(ctx.registry, entity_type))
        except NotFoundError as err:
            raise HTTPException(404, str(err)) from None

    @app.get("/docs/{entity_type}/attributes/{attribute}")
    def docs_attribute(entity_type: str, attribute: str):
        from fastapi import HTTPException

        try:
            return json_response(docs_mod.build_attribute_doc(ctx.registry, entity_type, attribute))
        except (NotFoundError, KeyError) as err:
            raise HTTPException(404, f"unregistered doc: {entity_type}.{attribute}") from None

    @app.get("/docs/{entity_type}/methods/{method}")
    def docs_method(entity_type: str, method: str):
        from fastapi import HTTPException

        try:
            return json_response(docs_mod.build_method_doc(ctx.registry, entity_type, method))
        except (NotFoundError, KeyError):
            raise HTTPException(404, f"unregistered doc: {entity_type}.{method}") from None

    # -- graph -----------------------------------------------------------------------------

    @app.get("/graph/{entity_type}/{node}/related")
    def graph_related(entity_type: str, node: str, kind: str | None = None):
        from fastapi import HTTPException

        try:
            node_kind, _ = ctx.registry.resolve(entity_type, node)
            edges = ctx.registry.get_related(entity_type, node, kind=kind)
        except NotFoundError as err:
            raise HTTPException(404, str(err)) from None
        return json_response(
            {
                "entity_type": entity_type,
                "node": node,
                "node_kind": node_kind,
                "edges": [
                    {
                        "kind": edge.kind,
                        "target": edge.target.to_dict(),
                        "path": docs_mod.node_doc_path(edge.target),
                    }
                    for edge in edges
                ],
            }
        )

    # -- insights ----------------------------------------------------------------------------

    @app.get("/insights/current")
    def insights_current(subject: str | None = None):
        tick = ctx.store.latest_tick
        insights = ctx.insights_at(tick)
        if subject is not None:
            insights = [i for i in insights if i["subject"] == subject]
        return json_response({"tick": tick, "insights": insights})

    # -- event subscriptions -------------------------------------------------------------------

    @app.post("/subscriptions")
    def create_event_subscription(request: Request, body: SubscriptionRequest):
        from fastapi import HTTPException

        try:
            record = ctx.broker.create(
                consumer=principal_id(request),
                event_type=body.event_type,
                filter_subject=body.filter,
                created_tick=ctx.store.latest_tick,
            )
        except UnknownEventTypeError as err:
            raise HTTPException(400, str(err)) from None
        return json_response(record.to_dict(), status_code=201)

    @app.get("/subscriptions")
    def list_event_subscriptions(request: Request):
        return json_response({"subscriptions": ctx.broker.list_for(principal_id(request))})

    @app.get("/subscriptions/{sub_id}")
    def get_event_subscription(request: Request, sub_id: str):
        from fastapi import HTTPException

        try:
            record = ctx.broker.get(sub_id)
        except UnknownConsumerError:
            raise HTTPException(404, f"unknown subscription: {sub_id}") from None
        return json_response(record.to_dict())

    @app.delete("/subscriptions/{sub_id}")
    def delete_event_subscription(request: Request, sub_id: str):
        from fastapi import HTTPException

        try:
            record = ctx.broker.get(sub_id)
            if record.consumer != principal_id(request) and role_of(request) != "admin":
                raise HTTPException(403, "not the subscription owner")
            ctx.broker.delete(sub_id)
        except UnknownConsumerError:
            raise HTTPException(404, f"unknown subscription: {sub_id}") from None
        return json_response({"deleted": sub_id})

    @app.get("/subscriptions/{sub_id}/stream")
    def stream_event_subscription(request: Request, sub_id: str):
        from fastapi import HTTPException

        try:
            record = ctx.broker.get(sub_id)
        except UnknownConsumerError:
            raise HTTPException(404, f"unknown subscription: {sub_id}") from None
        if record.consumer != principal_id(request) and role_of(request) != "admin":
            raise HTTPException(403, "not the subscription owner")
        return StreamingResponse(
            ctx.broker.stream(sub_id, heartbeat_s=ctx.config.heartbeat_s),
            media_type="application/x-ndjson",
        )

    # -- AI service catalog ----------------------------------------------------------------------

    @app.get("/catalog/services")
    def catalog_services(
        task: str | None = None,
        latency_class: str | None = None,
        modality: str | None = None,
        target_class: str | None = None,
    ):
        filters = {}
        if task:
            filters["task"] = task
        if latency_class:
            filters["latency_class"] = latency_class
        if modality:
            filters["modalities"] = [modality]
        if target_class:
            filters["target_classes"] = [target_class]
        services = ctx.catalog.list_services(filters or None)
        return json_response({"services": [svc.to_dict() for svc in services]})

    @app.post("/catalog/match")
    def catalog_match(body: MatchRequest):
        profile = RequirementProfile.from_dict(body.model_dump())
        matches = ctx.catalog.match_services(profile)
        return json_response(
            {"profile": body.model_dump(), "matches": [svc.to_dict() for svc in matches]}
        )

    @app.post("/catalog/subscriptions")
    def catalog_subscribe(body: ProvisionRequest):
        from fastapi import HTTPException

        try:
            record, snippet = ctx.provision(body.ue_ids, body.service_id)
        except (UnknownServiceError, UnknownUEError) as err:
            raise HTTPException(404, str(err)) from None
        except CapacityError as err:
            raise HTTPException(
                409, {"message": str(err), "headroom": err.headroom, "needed": err.needed}
            ) from None
        return json_response(
            {"subscription": record.to_state_dict(), "integration_snippet": snippet},
            status_code=201,
        )

    @app.get("/catalog/subscriptions")
    def catalog_subscriptions(ue: str | None = None):
        from fastapi import HTTPException

        with ctx.lock:
            state = ctx.simulator.state
            if ue is not None:
                try:
                    records = list_for_ue(state, ue)
                except UnknownUEError as err:
                    raise HTTPException(404, str(err)) from None
            else:
                records = [state.service_subscriptions[k] for k in sorted(state.service_subscriptions)]
            return json_response({"subscriptions": [r.to_state_dict() for r in records]})

    @app.get("/catalog/subscriptions/{sub_id}")
    def catalog_subscription(sub_id: str):
        from fastapi import HTTPException

        with ctx.lock:
            try:
                record = get_subscription(ctx.simulator.state, sub_id)
            except UnknownSubscriptionError as err:
                raise HTTPException(404, str(err)) from None
            return json_response(record.to_state_dict())

    @app.delete("/catalog/subscriptions/{sub_id}")
    def catalog_teardown(sub_id: str):
        from fastapi import HTTPException

        try:
            record = ctx.teardown_subscription(sub_id)
        except UnknownSubscriptionError as err:
            raise HTTPException(404, str(err)) from None
        except AlreadyTornDownError as err:
            raise HTTPException(409, str(err)) from None
        return json_response(record.to_state_dict())

    # -- simulated inference endpoint ---------------------------------------------------------------

    @app.get("/infer/{sub_id}")
    @app.post("/infer/{sub_id}")
    def infer(sub_id: str, ue: str | None = None):
        from fastapi import HTTPException

        with ctx.lock:
            try:
                record = get_subscription(ctx.simulator.state, sub_id)
            except UnknownSubscriptionError as err:
                raise HTTPException(404, str(err)) from None
            if record.status != "ACTIVE":
                raise HTTPException(409, f"subscription {sub_id} is {record.status}")
            service = ctx.catalog.get(record.service_id)
        # Canned payload: enough for a console demo, not a model.
        labels = list(service.target_classes[:2]) if service else ["object"]
        detections = [
            {"label": label, "confidence": 0.9 - 0.05 * i, "bbox": [10 + 5 * i, 20, 64, 48]}
            for i, label in enumerate(labels)
        ]
        return json_response(
            {
                "subscription": sub_id,
                "service": record.service_id,
                "ue": ue or (record.ue_ids[0] if record.ue_ids else None),
                "tick": ctx.store.latest_tick,
                "detections": detections,
            }
        )

    # -- audit, metrics, ontology bundle -------------------------------------------------------------

    @app.get("/audit")
    def audit_records(since_seq: int = 0):
        return json_response(
            {"records": ctx.audit.records(since_seq=since_seq), "next_seq": ctx.audit.next_seq}
        )

    @app.get("/metrics")
    def metrics():
        rendered = ctx.metrics.render()
        rendered.update(
            {
                "latest_tick": ctx.store.latest_tick,
                "snapshot_age_ms": ctx.store.age_ms(),
                "upstream_subscriptions": ctx.broker.upstream_counts(),
                "consumer_subscriptions": ctx.broker.consumer_counts(),
            }
        )
        return json_response(rendered)

    @app.get("/ontology/bundle")
    def ontology_bundle():
        return json_response(ctx.registry.to_bundle())

    return app


def serve(
    sim_config: SimConfig,
    service_config: ServiceConfig,
    host: str = "127.0.0.1",
    port: int = 8000,
) -> None:
    import uvicorn

    log_level = os.environ.get("KPA_LOG_LEVEL", "info").lower()
    logging.basicConfig(level=log_level.upper())
    app = create_app(sim_config, service_config)
    uvicorn.run(app, host=host, port=port, log_level=log_level)
