"""Entity schema registry and the shipped seed ontology."""

from .model import (
    AttributeDescriptor,
    ConflictError,
    EDGE_KINDS,
    EntitySchema,
    INVERSE_KIND,
    MethodDescriptor,
    NodeRef,
    NotFoundError,
    OntologyError,
    Registry,
    RelationshipEdge,
    SCHEMA_VERSION,
    ValidationReport,
    canonical_live_path,
)
from .seed import build_seed_registry

__all__ = [
    "AttributeDescriptor",
    "ConflictError",
    "EDGE_KINDS",
    "EntitySchema",
    "INVERSE_KIND",
    "MethodDescriptor",
    "NodeRef",
    "NotFoundError",
    "OntologyError",
    "Registry",
    "RelationshipEdge",
    "SCHEMA_VERSION",
    "ValidationReport",
    "build_seed_registry",
    "canonical_live_path",
]
