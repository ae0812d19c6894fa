"""Entity schema registry: typed attributes, documented methods, edges.

The registry is built once at startup and immutable afterwards; every
consumer (docs endpoints, graph endpoints, the console bundle) reads the
same registered content verbatim.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = "kpa-ontology/1.0.0"

EDGE_KINDS = ("derived_from", "used_by", "affects", "triggers")

# How an edge reads from the target's side, for rendering interlinked docs.
INVERSE_KIND = {
    "derived_from": "derives",
    "used_by": "uses",
    "affects": "affected_by",
    "triggers": "triggered_by",
}


class OntologyError(Exception):
    pass


class ConflictError(OntologyError):
    pass


class NotFoundError(OntologyError):
    pass


@dataclass(frozen=True)
class NodeRef:
    """Reference to an attribute or method of an entity type."""

    entity_type: str
    node_kind: str  # "attribute" | "method"
    name: str

    def to_dict(self) -> dict:
        return {"entity_type": self.entity_type, "node_kind": self.node_kind, "name": self.name}

    @classmethod
    def from_dict(cls, d: dict) -> "NodeRef":
        return cls(d["entity_type"], d["node_kind"], d["name"])


@dataclass(frozen=True)
class RelationshipEdge:
    kind: str
    target: NodeRef

    def to_dict(self) -> dict:
        return {"kind": self.kind, "target": self.target.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "RelationshipEdge":
        return cls(d["kind"], NodeRef.from_dict(d["target"]))


@dataclass
class AttributeDescriptor:
    name: str
    semantic_type: str
    unit: str | None
    explanation: str
    live_path: str
    edges: list[RelationshipEdge] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "semantic_type": self.semantic_type,
            "unit": self.unit,
            "explanation": self.explanation,
            "live_path": self.live_path,
            "edges": [e.to_dict() for e in self.edges],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AttributeDescriptor":
        return cls(
            name=d["name"],
            semantic_type=d["semantic_type"],
            unit=d["unit"],
            explanation=d["explanation"],
            live_path=d["live_path"],
            edges=[RelationshipEdge.from_dict(e) for e in d["edges"]],
        )


@dataclass
class MethodDescriptor:
    name: str
    signature: str
    explanation: str
    source_snippet: str
    edges: list[RelationshipEdge] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "signature": self.signature,
            "explanation": self.explanation,
            "source_snippet": self.source_snippet,
            "edges": [e.to_dict() for e in self.edges],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MethodDescriptor":
        return cls(
            name=d["name"],
            signature=d["signature"],
            explanation=d["explanation"],
            source_snippet=d["source_snippet"],
            edges=[RelationshipEdge.from_dict(e) for e in d["edges"]],
        )


@dataclass
class EntitySchema:
    entity_type: str
    description: str
    attributes: list[AttributeDescriptor] = field(default_factory=list)
    methods: list[MethodDescriptor] = field(default_factory=list)

    def attribute(self, name: str) -> AttributeDescriptor | None:
        for attr in self.attributes:
            if attr.name == name:
                return attr
        return None

    def method(self, name: str) -> MethodDescriptor | None:
        for m in self.methods:
            if m.name == name:
                return m
        return None

    def to_dict(self) -> dict:
        return {
            "entity_type": self.entity_type,
            "description": self.description,
            "attributes": [a.to_dict() for a in self.attributes],
            "methods": [m.to_dict() for m in self.methods],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EntitySchema":
        return cls(
            entity_type=d["entity_type"],
            description=d["description"],
            attributes=[AttributeDescriptor.from_dict(a) for a in d["attributes"]],
            methods=[MethodDescriptor.from_dict(m) for m in d["methods"]],
        )


@dataclass
class ValidationReport:
    issues: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def to_dict(self) -> dict:
        return {"ok": self.ok, "issues": self.issues}


# The canonical live route shape; a concrete route table from the service may
# be passed to validate() instead.
def canonical_live_path(entity_type: str, attribute: str) -> str:
    return f"/live/{entity_type}/{{id}}/attributes/{attribute}"


class Registry:
    def __init__(self) -> None:
        self._schemas: dict[str, EntitySchema] = {}

    def register_schema(self, schema: EntitySchema) -> "Registry":
        if schema.entity_type in self._schemas:
            raise ConflictError(f"entity type already registered: {schema.entity_type}")
        names = [a.name for a in schema.attributes]
        if len(names) != len(set(names)):
            raise ConflictError(f"duplicate attribute names in {schema.entity_type}")
        names = [m.name for m in schema.methods]
        if len(names) != len(set(names)):
            raise ConflictError(f"duplicate method names in {schema.entity_type}")
        # Edge targets may reference later registrations; resolution is
        # deferred to validate().
        self._schemas[schema.entity_type] = schema
        return self

    def get_schema(self, entity_type: str) -> EntitySchema:
        schema = self._schemas.get(entity_type)
        if schema is None:
            raise NotFoundError(f"unknown entity type: {entity_type}")
        return schema

    def list_entity_types(self) -> list[str]:
        return list(self._schemas)

    def resolve(self, entity_type: str, name: str) -> tuple[str, AttributeDescriptor | MethodDescriptor]:
        """Find a node by name; attributes shadow methods on collision."""
        schema = self.get_schema(entity_type)
        attr = schema.attribute(name)
        if attr is not None:
            return "attribute", attr
        method = schema.method(name)
        if method is not None:
            return "method", method
        raise NotFoundError(f"unknown node: {entity_type}.{name}")

    def get_related(self, entity_type: str, name: str, kind: str | None = None) -> list[RelationshipEdge]:
        """Outgoing edges of a node in registration order, filtered by kind."""
        _, descriptor = self.resolve(entity_type, name)
        edges = descriptor.edges
        if kind is not None:
            edges = [e for e in edges if e.kind == kind]
        return list(edges)

    def incoming(self, entity_type: str, name: str) -> list[tuple[NodeRef, RelationshipEdge]]:
        """Edges from other nodes that target the given node, in registry order."""
        results = []
        for schema in self._schemas.values():
            for node_kind, items in (("attribute", schema.attributes), ("method", schema.methods)):
                for descriptor in items:
                    for edge in descriptor.edges:
                        target = edge.target
                        if target.entity_type == entity_type and target.name == name:
                            source = NodeRef(schema.entity_type, node_kind, descriptor.name)
                            results.append((source, edge))
        return results

    def node_exists(self, ref: NodeRef) -> bool:
        schema = self._schemas.get(ref.entity_type)
        if schema is None:
            return False
        if ref.node_kind == "attribute":
            return schema.attribute(ref.name) is not None
        if ref.node_kind == "method":
            return schema.method(ref.name) is not None
        return False

    def validate(self, live_routes: list[str] | None = None) -> ValidationReport:
        """Check edge resolution, explanations, snippets, and live paths."""
        report = ValidationReport()
        for schema in self._schemas.values():
            et = schema.entity_type
            if not schema.description.strip():
                report.issues.append(f"{et}: empty description")
            for attr in schema.attributes:
                if not attr.explanation.strip():
                    report.issues.append(f"{et}.{attr.name}: empty explanation")
                expected = canonical_live_path(et, attr.name)
                if live_routes is not None:
                    if attr.live_path not in live_routes and expected not in live_routes:
                        report.issues.append(f"{et}.{attr.name}: unroutable live_path {attr.live_path}")
                elif attr.live_path != expected:
                    report.issues.append(f"{et}.{attr.name}: unroutable live_path {attr.live_path}")
                self._check_edges(report, f"{et}.{attr.name}", attr.edges)
            for method in schema.methods:
                if not method.explanation.strip():
                    report.issues.append(f"{et}.{method.name}: empty explanation")
                if not method.source_snippet.strip():
                    report.issues.append(f"{et}.{method.name}: empty source snippet")
                elif method.name not in method.source_snippet:
                    report.issues.append(
                        f"{et}.{method.name}: snippet does not contain the method name"
                    )
                self._check_edges(report, f"{et}.{method.name}", method.edges)
        return report

    def _check_edges(self, report: ValidationReport, source: str, edges: list[RelationshipEdge]) -> None:
        for edge in edges:
            if edge.kind not in EDGE_KINDS:
                report.issues.append(f"{source}: unknown edge kind {edge.kind}")
            if not self.node_exists(edge.target):
                t = edge.target
                report.issues.append(
                    f"{source}: dangling edge target {t.entity_type}.{t.name} ({t.node_kind})"
                )

    # -- serialization ---------------------------------------------------------

    def to_bundle(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "entities": [self._schemas[et].to_dict() for et in self._schemas],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_bundle(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_bundle(cls, bundle: dict) -> "Registry":
        registry = cls()
        for entity in bundle["entities"]:
            registry.register_schema(EntitySchema.from_dict(entity))
        return registry
