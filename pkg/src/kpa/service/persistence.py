"""Optional append-only persistence for snapshots and audit records.

Both files are line-delimited JSON, flushed per append so a killed process
loses at most the unflushed tail. Recovery parses each file up to the first
corrupt line, truncates the rest with a warning, and resumes from there.
"""

from __future__ import annotations

import json
import logging
import os

from ..ran.entities import NetworkState

logger = logging.getLogger(__name__)

SNAPSHOT_FILE = "snapshots.jsonl"
AUDIT_FILE = "audit.jsonl"


def _read_valid_lines(path: str) -> list[dict]:
    """Parse JSONL records; truncate the file at the first corrupt line."""
    if not os.path.exists(path):
        return []
    records = []
    good_bytes = 0
    with open(path, "rb") as fh:
        for raw in fh:
            if not raw.endswith(b"\n"):
                break  # partial tail write
            try:
                records.append(json.loads(raw))
            except json.JSONDecodeError:
                break
            good_bytes += len(raw)
    size = os.path.getsize(path)
    if good_bytes < size:
        logger.warning(
            "truncating %s: %d corrupt trailing bytes after %d records",
            path,
            size - good_bytes,
            len(records),
        )
        with open(path, "ab") as fh:
            fh.truncate(good_bytes)
    return records


class PersistentStore:
    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)
        self._snapshot_path = os.path.join(directory, SNAPSHOT_FILE)
        self._audit_path = os.path.join(directory, AUDIT_FILE)
        self._snapshot_fh = None
        self._audit_fh = None

    # -- recovery -----------------------------------------------------------------

    def load_snapshots(self) -> list[NetworkState]:
        records = _read_valid_lines(self._snapshot_path)
        return [NetworkState.from_state_dict(r["state"]) for r in records]

    def load_audit(self) -> list[dict]:
        return _read_valid_lines(self._audit_path)

    # -- appends ------------------------------------------------------------------

    def _open(self):
        if self._snapshot_fh is None:
            self._snapshot_fh = open(self._snapshot_path, "a", encoding="utf-8")
            self._audit_fh = open(self._audit_path, "a", encoding="utf-8")

    def append_snapshot(self, state: NetworkState) -> None:
        self._open()
        line = json.dumps({"tick": state.tick, "state": state.to_state_dict()}, sort_keys=True)
        self._snapshot_fh.write(line + "\n")
        self._snapshot_fh.flush()

    def append_audit(self, record: dict) -> None:
        self._open()
        self._audit_fh.write(json.dumps(record, sort_keys=True) + "\n")
        self._audit_fh.flush()

    def close(self) -> None:
        for fh in (self._snapshot_fh, self._audit_fh):
            if fh is not None:
                fh.close()
        self._snapshot_fh = self._audit_fh = None
