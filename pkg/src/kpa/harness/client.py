"""The knowledge query tool: HTTP access with transcript recording and
link harvesting."""

from __future__ import annotations

import hashlib
import json

import httpx

from .transcript import Transcript, TranscriptEntry


class KnowledgeClient:
    """Every query is recorded; every link in a response becomes a
    discovered endpoint for later queries. No client-side cache: repeated
    queries are served again."""

    def __init__(self, server_url: str, token: str, transcript: Transcript):
        self.transcript = transcript
        self._http = httpx.Client(
            base_url=server_url,
            headers={"Authorization": f"Bearer {token}"},
            timeout=15.0,
        )

    def close(self) -> None:
        self._http.close()

    def query(
        self,
        path: str,
        *,
        method: str = "GET",
        body: dict | None = None,
        round_label: str = "main",
    ) -> tuple[int, dict | None]:
        discovered = path in self.transcript.entry_paths or self.transcript.is_discovered(path)
        response = self._http.request(method, path, json=body)
        payload: dict | None
        try:
            payload = response.json()
        except json.JSONDecodeError:
            payload = None
        self.transcript.entries.append(
            TranscriptEntry(
                method=method,
                path=path,
                status=response.status_code,
                digest=hashlib.sha256(response.content).hexdigest()[:16],
                tick=payload.get("tick") if isinstance(payload, dict) else None,
                round_label=round_label,
                discovered_at_query=discovered,
            )
        )
        if response.status_code == 200 and isinstance(payload, dict):
            self._harvest(path, payload)
        return response.status_code, payload

    def _harvest(self, path: str, payload: dict) -> None:
        found = self.transcript.discovered_endpoints
        for link in payload.get("related", []):
            if isinstance(link, dict) and "path" in link:
                found.add(link["path"])
        for key in ("live_path", "doc_link", "stream_path"):
            value = payload.get(key)
            if isinstance(value, str):
                found.add(value)
        if path.startswith("/docs"):
            self.transcript.collected_docs[path] = payload
