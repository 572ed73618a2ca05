"""Append-only JSONL audit trail.

One JSON object per line with fields
{ts, id, class, probs, latency_s, destination, status}. Appends are
serialized through a lock and flushed per record, so after a crash every
complete line replays; only a torn final line is dropped.
"""
from __future__ import annotations

import json
import os
import threading
from pathlib import Path
from typing import Any, Optional


class AuditReplayError(ValueError):
    pass


class AuditLog:
    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def append(self, record: dict[str, Any]) -> None:
        line = json.dumps(record, separators=(",", ":"), sort_keys=False)
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
                fh.flush()
                os.fsync(fh.fileno())

    def replay(self) -> list[dict[str, Any]]:
        return replay_audit(self.path)


def replay_audit(path: str | Path) -> list[dict[str, Any]]:
    """Parse every complete line; a torn (unparseable) final line is
    dropped, an unparseable line anywhere else raises."""
    path = Path(path)
    if not path.exists():
        return []
    records: list[dict[str, Any]] = []
    with open(path, "r", encoding="utf-8", errors="replace") as fh:
        lines = fh.read().split("\n")
    # A well-formed file ends with a newline, so the last split item is "".
    for i, line in enumerate(lines):
        if line == "":
            continue
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError:
            if i == len(lines) - 1:
                break  # torn final line after a crash
            raise AuditReplayError(f"{path}:{i + 1}: unparseable audit line")
    return records


def routed_counts(records: list[dict[str, Any]]) -> dict[str, int]:
    """Per-class counts of successfully routed items from replayed records."""
    counts: dict[str, int] = {}
    for rec in records:
        if rec.get("status") == "routed":
            counts[rec["class"]] = counts.get(rec["class"], 0) + 1
    return counts
