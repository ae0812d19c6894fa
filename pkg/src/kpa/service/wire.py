"""Canonical JSON wire helpers.

Payloads are serialized with sorted keys and tight separators so that a
response for a given snapshot is byte-identical no matter when it is
rendered; replay tests rely on this.
"""

from __future__ import annotations

import json

from fastapi.responses import Response


def canonical_json(payload) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()


def json_response(payload, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json(payload),
        status_code=status_code,
        media_type="application/json",
    )


def error_body(code: int, message: str, path: str) -> dict:
    return {"code": code, "message": message, "path": path}


def error_response(code: int, message: str, path: str) -> Response:
    return json_response(error_body(code, message, path), status_code=code)
