"""Role-based access control: token table, path scopes, field masking."""

from __future__ import annotations

import json
from dataclasses import dataclass

ROLES = ("admin", "operator", "tenant", "readonly")

MASK = "***"

# Fields whose true values never serialize for these roles.
MASKED_FIELDS: dict[str, dict[str, set[str]]] = {
    "tenant": {"ue": {"position"}},
    "readonly": {"ue": {"position"}},
}

# Paths readable without a principal.
PUBLIC_PATHS = ("/metrics",)

_READ_SCOPES = [
    ("GET", "/live"),
    ("GET", "/docs"),
    ("GET", "/graph"),
    ("GET", "/insights"),
    ("GET", "/ontology"),
]

# Per-role allow lists of (method, path prefix); deny by default. admin and
# operator are handled as blanket rules in authorize().
SCOPES: dict[str, list[tuple[str, str]]] = {
    "tenant": _READ_SCOPES
    + [
        ("GET", "/catalog"),
        ("POST", "/catalog/match"),
        ("POST", "/catalog/subscriptions"),
        ("DELETE", "/catalog/subscriptions/"),
        ("GET", "/subscriptions"),
        ("POST", "/subscriptions"),
        ("DELETE", "/subscriptions/"),
        ("GET", "/infer/"),
        ("POST", "/infer/"),
    ],
    "readonly": _READ_SCOPES + [("GET", "/catalog/services"), ("GET", "/catalog/subscriptions")],
}


@dataclass(frozen=True)
class Principal:
    id: str
    role: str


class AuthTable:
    """Static token -> principal mapping; deny by default."""

    def __init__(self, principals: list[dict] | None = None):
        self._by_token: dict[str, Principal] = {}
        for entry in principals or []:
            role = entry["role"]
            if role not in ROLES:
                raise ValueError(f"unknown role {role!r} for principal {entry.get('id')}")
            self._by_token[entry["token"]] = Principal(id=entry["id"], role=role)

    @classmethod
    def from_file(cls, path: str) -> "AuthTable":
        with open(path) as fh:
            data = json.load(fh)
        return cls(data.get("principals", []))

    def resolve(self, authorization: str | None) -> Principal | None:
        if not authorization:
            return None
        token = authorization.removeprefix("Bearer ").strip()
        return self._by_token.get(token)

    def __len__(self) -> int:
        return len(self._by_token)


def authorize(role: str, method: str, path: str) -> bool:
    if role == "admin":
        return True
    if role == "operator":
        return not path.startswith("/audit")
    for allowed_method, prefix in SCOPES.get(role, []):
        if method == allowed_method and path.startswith(prefix):
            return True
    return False


def masked_fields_for(role: str, entity_type: str) -> set[str]:
    return MASKED_FIELDS.get(role, {}).get(entity_type, set())
