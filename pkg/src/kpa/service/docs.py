"""Knowledge document assembly: self-contained, interlinked docs payloads."""

from __future__ import annotations

from ..ontology.model import INVERSE_KIND, NodeRef, Registry, SCHEMA_VERSION

DOCS_ROOT = "/docs"


def entity_doc_path(entity_type: str) -> str:
    return f"/docs/{entity_type}"


def node_doc_path(ref: NodeRef) -> str:
    section = "attributes" if ref.node_kind == "attribute" else "methods"
    return f"/docs/{ref.entity_type}/{section}/{ref.name}"


def _related_for_node(registry: Registry, entity_type: str, name: str) -> list[dict]:
    """Outgoing edges plus inverse renderings of incoming edges, so every
    relationship is walkable from both ends."""
    related = []
    for edge in registry.get_related(entity_type, name):
        related.append({"kind": edge.kind, "path": node_doc_path(edge.target)})
    for source, edge in registry.incoming(entity_type, name):
        related.append({"kind": INVERSE_KIND[edge.kind], "path": node_doc_path(source)})
    return related


def build_root_doc(registry: Registry) -> dict:
    return {
        "path": DOCS_ROOT,
        "title": "Network knowledge documentation",
        "explanation": (
            "Root of the static knowledge endpoints. Each entity type "
            "documents its attributes (with live data paths) and its methods "
            "(with the executable source). Follow related links to explore."
        ),
        "related": [
            {"kind": "entity", "path": entity_doc_path(et)} for et in registry.list_entity_types()
        ],
        "schema_version": SCHEMA_VERSION,
    }


def build_entity_doc(registry: Registry, entity_type: str) -> dict:
    schema = registry.get_schema(entity_type)
    related = [
        {"kind": "method", "path": node_doc_path(NodeRef(entity_type, "method", m.name))}
        for m in schema.methods
    ] + [
        {"kind": "attribute", "path": node_doc_path(NodeRef(entity_type, "attribute", a.name))}
        for a in schema.attributes
    ]
    return {
        "path": entity_doc_path(entity_type),
        "title": entity_type,
        "explanation": schema.description,
        "related": related,
        "schema_version": SCHEMA_VERSION,
    }


def build_attribute_doc(registry: Registry, entity_type: str, name: str) -> dict:
    schema = registry.get_schema(entity_type)
    attr = schema.attribute(name)
    if attr is None:
        raise KeyError(name)
    return {
        "path": node_doc_path(NodeRef(entity_type, "attribute", name)),
        "title": f"{entity_type}.{name}",
        "explanation": attr.explanation,
        "semantic_type": attr.semantic_type,
        "unit": attr.unit,
        "live_path": attr.live_path,
        "related": _related_for_node(registry, entity_type, name),
        "schema_version": SCHEMA_VERSION,
    }


def build_method_doc(registry: Registry, entity_type: str, name: str) -> dict:
    schema = registry.get_schema(entity_type)
    method = schema.method(name)
    if method is None:
        raise KeyError(name)
    return {
        "path": node_doc_path(NodeRef(entity_type, "method", name)),
        "title": f"{entity_type}.{name}",
        "explanation": method.explanation,
        "signature": method.signature,
        "source_snippet": method.source_snippet,
        "related": _related_for_node(registry, entity_type, name),
        "schema_version": SCHEMA_VERSION,
    }
