"""Low-confidence review queue with the two-round labeling protocol.

Every queued item is read in two rounds by two different readers; matching
labels become the consensus, a mismatch flags the item for third-reader
adjudication. In ``disagreements`` mode the second round is only required
when the first reader contradicts the model's prediction; otherwise the
round-1 label is accepted as consensus immediately.
"""
from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from ..nn.classes import NUM_CLASSES

ROUND_ADJUDICATION = 3


class ReviewError(Exception):
    def __init__(self, message: str, status_code: int):
        super().__init__(message)
        self.status_code = status_code


class UnknownItem(ReviewError):
    def __init__(self, item_id: str):
        super().__init__(f"unknown review item {item_id!r}", 404)


class LabelConflict(ReviewError):
    """The submission is no longer valid for the item's current state."""

    def __init__(self, message: str):
        super().__init__(message, 409)


class BadLabelRequest(ReviewError):
    def __init__(self, message: str):
        super().__init__(message, 400)


@dataclass
class RoundLabel:
    reader: str
    label: int


@dataclass
class ReviewItem:
    id: str
    probs: list[float]
    predicted: int
    created_ts: float = field(default_factory=time.time)
    round1: Optional[RoundLabel] = None
    round2: Optional[RoundLabel] = None
    consensus: Optional[int] = None
    needs_adjudication: bool = False

    @property
    def resolved(self) -> bool:
        return self.consensus is not None

    def pending_round(self) -> Optional[int]:
        """Which round accepts the next label, or None when resolved."""
        if self.resolved:
            return None
        if self.needs_adjudication:
            return ROUND_ADJUDICATION
        if self.round1 is None:
            return 1
        return 2

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "probs": self.probs,
            "predicted": self.predicted,
            "max_prob": max(self.probs),
            "created_ts": self.created_ts,
            "round1": asdict(self.round1) if self.round1 else None,
            "round2": asdict(self.round2) if self.round2 else None,
            "consensus": self.consensus,
            "needs_adjudication": self.needs_adjudication,
            "pending_round": self.pending_round(),
            "rendition_url": f"/v1/images/{self.id}.png",
        }


class ReviewStore:
    """Thread-safe item store persisted as one JSON document."""

    def __init__(self, path: str | Path, second_round: str = "all"):
        self.path = Path(path)
        self.second_round = second_round
        self._lock = threading.Lock()
        self._items: dict[str, ReviewItem] = {}
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        raw = json.loads(self.path.read_text(encoding="utf-8"))
        for entry in raw:
            item = ReviewItem(
                id=entry["id"],
                probs=entry["probs"],
                predicted=entry["predicted"],
                created_ts=entry["created_ts"],
                round1=RoundLabel(**entry["round1"]) if entry.get("round1") else None,
                round2=RoundLabel(**entry["round2"]) if entry.get("round2") else None,
                consensus=entry.get("consensus"),
                needs_adjudication=entry.get("needs_adjudication", False),
            )
            self._items[item.id] = item

    def _save_locked(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        payload = []
        for item in self._items.values():
            entry = item.to_json()
            entry.pop("max_prob")
            entry.pop("rendition_url")
            entry.pop("pending_round")
            payload.append(entry)
        tmp = self.path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, indent=1), encoding="utf-8")
        os.replace(tmp, self.path)

    def add(self, item_id: str, probs: list[float], predicted: int) -> ReviewItem:
        with self._lock:
            if item_id in self._items:
                return self._items[item_id]
            item = ReviewItem(id=item_id, probs=list(probs), predicted=predicted)
            self._items[item_id] = item
            self._save_locked()
            return item

    def get(self, item_id: str) -> Optional[ReviewItem]:
        with self._lock:
            return self._items.get(item_id)

    def pending(self) -> list[ReviewItem]:
        """Unresolved items, most uncertain (lowest max probability) first."""
        with self._lock:
            items = [it for it in self._items.values() if not it.resolved]
        return sorted(items, key=lambda it: (max(it.probs), it.id))

    def submit_label(self, item_id: str, reader: str, round_no: int, label: int) -> ReviewItem:
        if not isinstance(label, int) or not 0 <= label < NUM_CLASSES:
            raise BadLabelRequest(f"label must be a class code in [0, {NUM_CLASSES})")
        if round_no not in (1, 2, ROUND_ADJUDICATION):
            raise BadLabelRequest(f"round must be 1, 2 or {ROUND_ADJUDICATION} (adjudication)")
        if not reader:
            raise BadLabelRequest("reader must be nonempty")

        with self._lock:
            item = self._items.get(item_id)
            if item is None:
                raise UnknownItem(item_id)
            expected = item.pending_round()
            if expected is None:
                raise LabelConflict(f"item {item_id} already has a consensus label")
            if round_no != expected:
                raise LabelConflict(f"item {item_id} expects round {expected}, got {round_no}")

            if round_no == 1:
                item.round1 = RoundLabel(reader=reader, label=label)
                if self.second_round == "disagreements" and label == item.predicted:
                    item.consensus = label
            elif round_no == 2:
                if item.round1 is not None and item.round1.reader == reader:
                    raise LabelConflict("round 2 must come from a different reader")
                item.round2 = RoundLabel(reader=reader, label=label)
                if item.round1 is not None and item.round1.label == label:
                    item.consensus = label
                else:
                    item.needs_adjudication = True
            else:  # adjudication
                item.consensus = label
                item.needs_adjudication = False
            self._save_locked()
            return item
