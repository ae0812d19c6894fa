"""The shipped ontology: schemas for every simulated entity type.

Method source snippets are extracted from the running implementation with
inspect.getsource, so docs endpoints always serve the code that actually
executes. Explanations are curated text.
"""

from __future__ import annotations

import inspect

from ..ran import procedures, ric, scheduler
from .model import (
    AttributeDescriptor,
    EntitySchema,
    MethodDescriptor,
    NodeRef,
    Registry,
    RelationshipEdge,
    canonical_live_path,
)


def _attr(entity_type, name, semantic_type, unit, explanation, edges=()):
    return AttributeDescriptor(
        name=name,
        semantic_type=semantic_type,
        unit=unit,
        explanation=explanation,
        live_path=canonical_live_path(entity_type, name),
        edges=list(edges),
    )


def _method(fn, name, explanation, edges=()):
    return MethodDescriptor(
        name=name,
        signature=f"{name}{inspect.signature(fn)}",
        explanation=explanation,
        source_snippet=inspect.getsource(fn),
        edges=list(edges),
    )


def _edge(kind, entity_type, node_kind, name):
    return RelationshipEdge(kind=kind, target=NodeRef(entity_type, node_kind, name))


def build_seed_registry() -> Registry:
    registry = Registry()

    registry.register_schema(
        EntitySchema(
            entity_type="ue",
            description=(
                "User equipment: a mobile terminal (phone, drone, sensor). A UE "
                "measures every cell each tick, attaches to the strongest one, and "
                "is moved between cells by the A3 handover procedure."
            ),
            attributes=[
                _attr(
                    "ue",
                    "serving_cell",
                    "cell reference",
                    None,
                    "Id of the cell this UE is attached to; absent while DETACHED. "
                    "Chosen at power-up as the strongest measured cell and updated "
                    "by handovers.",
                ),
                _attr(
                    "ue",
                    "connection_state",
                    "enum(DETACHED, ATTACHING, CONNECTED, HANDOVER)",
                    None,
                    "Lifecycle state of the radio connection. Only CONNECTED UEs "
                    "are scheduled PRBs and evaluated for handover.",
                ),
                _attr(
                    "ue",
                    "cqi",
                    "integer 0..15",
                    "index",
                    "Channel quality indicator reported by the UE, derived from the "
                    "SINR of the serving cell's reference signal. 0 means unusable, "
                    "15 means excellent.",
                    edges=[_edge("derived_from", "ue", "attribute", "rsrp_map")],
                ),
                _attr(
                    "ue",
                    "rsrp_map",
                    "map cell id -> dBm",
                    "dBm",
                    "Latest reference-signal received power measured by this UE for "
                    "every cell, refreshed each tick. Feeds cell selection at "
                    "power-up and the A3 handover condition.",
                    edges=[
                        _edge("used_by", "ue", "method", "execute_handover"),
                        _edge("used_by", "ric", "attribute", "a3_policy"),
                    ],
                ),
                _attr(
                    "ue",
                    "position",
                    "meters (x, y)",
                    "m",
                    "Planar position inside the simulation area. Moves per tick "
                    "under random-waypoint mobility. Masked for tenant and "
                    "readonly roles.",
                ),
                _attr(
                    "ue",
                    "prb_allocated",
                    "count",
                    "PRB",
                    "Physical resource blocks currently granted to this UE by its "
                    "serving cell's scheduler.",
                ),
                _attr(
                    "ue",
                    "demand_prbs",
                    "count",
                    "PRB",
                    "PRBs this UE asks for each scheduling round; fixed per UE at "
                    "network construction.",
                ),
                _attr(
                    "ue",
                    "ai_subscriptions",
                    "list of subscription ids",
                    None,
                    "Edge AI service subscriptions currently bound to this UE, "
                    "provisioned through the service catalog.",
                ),
            ],
            methods=[
                _method(
                    procedures.power_up,
                    "power_up",
                    "Runs when a detached UE switches on: it picks the strongest "
                    "measured cell above the attach floor, ties broken toward the "
                    "smaller cell id, then connects and receives an initial PRB "
                    "grant. Below the floor the UE stays detached.",
                    edges=[_edge("triggers", "ue", "method", "connect")],
                ),
                _method(
                    procedures.connect,
                    "connect",
                    "Attaches the UE to a chosen cell: sets the serving cell, "
                    "moves the connection state to CONNECTED, registers cell "
                    "membership, and grants min(demand, free capacity) PRBs.",
                    edges=[_edge("triggers", "cell", "method", "allocate_prbs")],
                ),
                _method(
                    procedures.evaluate_a3,
                    "evaluate_a3",
                    "Per-neighbor handover entry condition, evaluated each tick "
                    "for connected UEs: neighbor RSRP plus the serving cell's CIO "
                    "toward that neighbor must exceed serving RSRP plus "
                    "hysteresis. A per-neighbor counter tracks consecutive ticks "
                    "the condition holds and fires a trigger exactly when it "
                    "reaches the time-to-trigger.",
                    edges=[
                        _edge("derived_from", "ue", "attribute", "rsrp_map"),
                        _edge("triggers", "ue", "method", "execute_handover"),
                    ],
                ),
                _method(
                    procedures.execute_handover,
                    "execute_handover",
                    "Moves a connected UE to the target cell once A3 fires: the "
                    "source cell releases PRBs and membership, the target admits "
                    "the UE with min(demand, free) PRBs, and trigger/complete "
                    "events are emitted. A target without free PRBs rejects the "
                    "handover, leaving state unchanged.",
                    edges=[_edge("affects", "cell", "attribute", "load")],
                ),
                _method(
                    procedures.detach,
                    "detach",
                    "Detaches the UE from its serving cell, releasing PRBs and "
                    "membership and zeroing CQI.",
                ),
            ],
        )
    )

    registry.register_schema(
        EntitySchema(
            entity_type="cell",
            description=(
                "A radio cell hosted by a gNB: the unit of coverage, PRB capacity, "
                "and handover biasing. Cells schedule PRBs for their connected UEs "
                "every tick and report load to the RIC."
            ),
            attributes=[
                _attr(
                    "cell",
                    "gnb_id",
                    "gnb reference",
                    None,
                    "Id of the base station hosting this cell.",
                ),
                _attr(
                    "cell",
                    "load",
                    "fraction 0..1",
                    None,
                    "Occupied share of PRB capacity: prb_allocated_total divided "
                    "by prb_capacity. The RIC load balancer compares loads across "
                    "cells each tick.",
                    edges=[_edge("derived_from", "cell", "attribute", "prb_allocated_total")],
                ),
                _attr(
                    "cell",
                    "cio",
                    "map neighbor cell id -> dB",
                    "dB",
                    "Cell individual offset toward each neighbor: a bias added to "
                    "that neighbor's measurements inside the A3 handover "
                    "condition. Positive values push traffic toward the neighbor; "
                    "the RIC adjusts these to balance load.",
                    edges=[_edge("used_by", "ue", "method", "evaluate_a3")],
                ),
                _attr(
                    "cell",
                    "prb_capacity",
                    "count",
                    "PRB",
                    "Total physical resource blocks this cell can schedule per tick.",
                ),
                _attr(
                    "cell",
                    "prb_allocated_total",
                    "count",
                    "PRB",
                    "PRBs currently granted across all connected UEs; never "
                    "exceeds prb_capacity.",
                    edges=[_edge("derived_from", "cell", "method", "allocate_prbs")],
                ),
                _attr(
                    "cell",
                    "tx_power_dbm",
                    "dBm",
                    "dBm",
                    "Transmit power of the cell's reference signal; the far end of "
                    "the pathloss model.",
                ),
                _attr(
                    "cell",
                    "frequency_mhz",
                    "MHz",
                    "MHz",
                    "Carrier frequency of the cell.",
                ),
                _attr(
                    "cell",
                    "connected_ues",
                    "set of UE ids",
                    None,
                    "Ids of UEs currently attached to this cell. Each connected UE "
                    "appears in exactly one cell's set.",
                ),
                _attr(
                    "cell",
                    "position",
                    "meters (x, y)",
                    "m",
                    "Planar position of the cell's antenna.",
                ),
            ],
            methods=[
                _method(
                    procedures.get_load,
                    "get_load",
                    "Returns the cell's load as the allocated fraction of its PRB "
                    "capacity, in 0..1.",
                ),
                _method(
                    scheduler.allocate_prbs,
                    "allocate_prbs",
                    "Round-robin PRB scheduler: visits connected UEs in id order "
                    "and grants one PRB per pass to each UE with unmet demand "
                    "until capacity or demand runs out. Grants sum to at most the "
                    "cell's capacity.",
                ),
            ],
        )
    )

    registry.register_schema(
        EntitySchema(
            entity_type="gnb",
            description=(
                "A base station: the radio node hosting one or more cells at a "
                "fixed position."
            ),
            attributes=[
                _attr("gnb", "position", "meters (x, y)", "m", "Planar position of the site."),
                _attr(
                    "gnb",
                    "cell_ids",
                    "list of cell ids",
                    None,
                    "Cells hosted by this base station.",
                ),
            ],
            methods=[],
        )
    )

    registry.register_schema(
        EntitySchema(
            entity_type="ric",
            description=(
                "The RAN intelligent controller: hosts control apps that react to "
                "per-tick load reports by steering handover offsets."
            ),
            attributes=[
                _attr(
                    "ric",
                    "xapps",
                    "list of app names",
                    None,
                    "Control apps active on the controller.",
                ),
                _attr(
                    "ric",
                    "a3_policy",
                    "record (hysteresis_db, ttt_ticks)",
                    None,
                    "Handover policy parameters: the hysteresis margin in dB and "
                    "the time-to-trigger in ticks that the A3 condition must "
                    "sustain.",
                    edges=[_edge("used_by", "ue", "method", "evaluate_a3")],
                ),
                _attr(
                    "ric",
                    "cio_policy",
                    "record (step_db, cap_db, imbalance_threshold)",
                    None,
                    "Load-balancing policy: offset step per adjustment, the "
                    "saturation cap, and the load gap that counts as imbalance.",
                ),
            ],
            methods=[
                _method(
                    ric.load_balance,
                    "load_balance",
                    "The load-balancing app: for each ordered cell pair with a "
                    "load gap above the imbalance threshold, steps the source "
                    "cell's CIO toward the lighter cell by step_db, saturating at "
                    "the cap. Emits one CIO_ADJUSTED event per change.",
                    edges=[_edge("affects", "cell", "attribute", "cio")],
                ),
            ],
        )
    )

    registry.register_schema(
        EntitySchema(
            entity_type="edge_server",
            description=(
                "A compute node at the network edge with a fixed capacity budget; "
                "AI service subscriptions reserve capacity units here."
            ),
            attributes=[
                _attr(
                    "edge_server",
                    "capacity",
                    "count",
                    "unit",
                    "Total capacity units available on this server.",
                ),
                _attr(
                    "edge_server",
                    "used",
                    "count",
                    "unit",
                    "Capacity units reserved by active AI service subscriptions.",
                ),
            ],
            methods=[],
        )
    )

    registry.register_schema(
        EntitySchema(
            entity_type="ai_service",
            description=(
                "A ready-to-deploy AI model from the edge service catalog, "
                "describable by task, input modalities, detectable classes, and "
                "latency class."
            ),
            attributes=[
                _attr("ai_service", "task", "enum", None, "Model task, e.g. object_detection."),
                _attr(
                    "ai_service",
                    "modalities",
                    "list of sensor modalities",
                    None,
                    "Sensor inputs the model accepts, e.g. rgb_camera or "
                    "wide_angle_camera.",
                ),
                _attr(
                    "ai_service",
                    "target_classes",
                    "list of labels",
                    None,
                    "Object or category labels the model can produce.",
                ),
                _attr(
                    "ai_service",
                    "latency_class",
                    "enum(realtime, near_realtime, batch)",
                    None,
                    "Responsiveness class of the deployment.",
                ),
                _attr(
                    "ai_service",
                    "resource_units",
                    "count",
                    "unit",
                    "Edge capacity units consumed per subscribed UE.",
                ),
            ],
            methods=[],
        )
    )

    return registry
