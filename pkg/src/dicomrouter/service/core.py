"""Ingest, classify and route DICOM files.

Every ingested payload ends in exactly one terminal location: a per-class
destination, the review holding area, quarantine, or the failed directory.
One audit record is appended per ingest regardless of outcome.
"""
from __future__ import annotations

import hashlib
import os
import tempfile
import threading
import time
from collections import defaultdict
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

import requests

from ..dicom import DicomError, get_element, parse_file
from ..dicom import tags as dicom_tags
from ..nn.backend import Backend, predict
from ..nn.classes import CLASS_NAMES, BodyPartClass
from ..pipeline import export_png, preprocess_dataset
from .audit import AuditLog
from .config import RouteConfig, is_http_destination
from .review import ReviewStore

STATUS_ROUTED = "routed"
STATUS_QUEUED = "queued_for_review"
STATUS_FAILED = "failed"
STATUS_DUPLICATE = "duplicate"


class AuditUnavailable(RuntimeError):
    """Audit storage failed; the service degrades to classify-only."""


@dataclass
class RoutingDecision:
    item_id: str
    predicted: Optional[BodyPartClass]
    probs: Optional[list[float]]
    latency_s: Optional[float]
    timestamp: str
    destination: Optional[str]
    status: str
    error: Optional[str] = None


@dataclass
class ClassifyResult:
    item_id: str
    predicted: BodyPartClass
    probs: list[float]
    latency_s: float


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _atomic_write(directory: Path, filename: str, data: bytes) -> Path:
    """Write-then-rename so a destination never sees a partial file."""
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=directory, prefix=".incoming-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        target = directory / filename
        os.replace(tmp_name, target)
        return target
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def _safe_filename(item_id: str) -> str:
    return "".join(c if c.isalnum() or c in "._-" else "_" for c in item_id)


class RouterCore:
    def __init__(
        self,
        config: RouteConfig,
        backend: Optional[Backend],
        audit: AuditLog,
        review: ReviewStore,
    ):
        self.config = config
        self.backend = backend
        self.audit = audit
        self.review = review
        self.degraded = False
        self._hash_lock = threading.Lock()
        self._seen_hashes: dict[str, str] = {}
        self._item_locks: defaultdict[str, threading.Lock] = defaultdict(threading.Lock)
        self._item_locks_guard = threading.Lock()
        config.ensure_dirs()
        self._recover_seen_hashes()

    def _recover_seen_hashes(self) -> None:
        for record in self.audit.replay():
            content_hash = record.get("content_sha256")
            if content_hash:
                self._seen_hashes.setdefault(content_hash, record["id"])

    def _item_lock(self, item_id: str) -> threading.Lock:
        with self._item_locks_guard:
            return self._item_locks[item_id]

    def _audit(self, decision: RoutingDecision, content_hash: Optional[str]) -> None:
        record = {
            "ts": decision.timestamp,
            "id": decision.item_id,
            "class": CLASS_NAMES[decision.predicted] if decision.predicted is not None else None,
            "probs": decision.probs,
            "latency_s": decision.latency_s,
            "destination": decision.destination,
            "status": decision.status,
        }
        if content_hash:
            record["content_sha256"] = content_hash
        if decision.error:
            record["error"] = decision.error
        try:
            self.audit.append(record)
        except OSError as exc:
            self.degraded = True
            raise AuditUnavailable(f"audit append failed: {exc}") from exc

    def classify(self, data: bytes) -> ClassifyResult:
        """Pure classification; never routes, never writes."""
        if self.backend is None:
            raise RuntimeError("no backend loaded")
        parsed = parse_file(data)
        item_id = self._item_id(parsed, data)
        tensor = preprocess_dataset(parsed.dataset)
        predicted, probs, latency = predict(self.backend, tensor)
        return ClassifyResult(
            item_id=item_id,
            predicted=predicted,
            probs=[float(p) for p in probs],
            latency_s=latency,
        )

    @staticmethod
    def _item_id(parsed, data: bytes) -> str:
        elem = get_element(parsed.dataset, dicom_tags.SOP_INSTANCE_UID)
        if elem is not None:
            uid = elem.text()
            if uid:
                return uid
        return hashlib.sha256(data).hexdigest()

    def ingest(self, data: bytes, source_name: str = "upload") -> RoutingDecision:
        """Classify and route one payload; exactly one audit record."""
        if self.degraded:
            raise AuditUnavailable("service is degraded to classify-only (audit unavailable)")
        if self.backend is None:
            raise RuntimeError("no backend loaded")
        content_hash = hashlib.sha256(data).hexdigest()

        try:
            parsed = parse_file(data)
        except DicomError as exc:
            item_id = content_hash
            dest = _atomic_write(self.config.quarantine_dir, _safe_filename(f"{item_id}.bin"), data)
            decision = RoutingDecision(
                item_id=item_id,
                predicted=None,
                probs=None,
                latency_s=None,
                timestamp=_utc_now(),
                destination=str(dest),
                status=STATUS_FAILED,
                error=f"{type(exc).__name__}: {exc}",
            )
            self._audit(decision, content_hash)
            return decision

        item_id = self._item_id(parsed, data)

        with self._hash_lock:
            duplicate_of = self._seen_hashes.get(content_hash)
            if duplicate_of is None:
                self._seen_hashes[content_hash] = item_id
        if duplicate_of is not None:
            decision = RoutingDecision(
                item_id=item_id,
                predicted=None,
                probs=None,
                latency_s=None,
                timestamp=_utc_now(),
                destination=None,
                status=STATUS_DUPLICATE,
                error=f"content already ingested as {duplicate_of}",
            )
            self._audit(decision, content_hash)
            return decision

        with self._item_lock(item_id):
            try:
                tensor = preprocess_dataset(parsed.dataset)
                predicted, probs, latency = predict(self.backend, tensor)
            except (DicomError, RuntimeError, ValueError) as exc:
                dest = _atomic_write(self.config.quarantine_dir, _safe_filename(f"{item_id}.bin"), data)
                decision = RoutingDecision(
                    item_id=item_id,
                    predicted=None,
                    probs=None,
                    latency_s=None,
                    timestamp=_utc_now(),
                    destination=str(dest),
                    status=STATUS_FAILED,
                    error=f"{type(exc).__name__}: {exc}",
                )
                self._audit(decision, content_hash)
                return decision

            probs_list = [float(p) for p in probs]
            if max(probs_list) < self.config.threshold:
                _atomic_write(self.config.review_dir, _safe_filename(f"{item_id}.dcm"), data)
                png = export_png(tensor)
                _atomic_write(self.config.renditions_dir, _safe_filename(f"{item_id}.png"), png)
                self.review.add(item_id, probs_list, int(predicted))
                decision = RoutingDecision(
                    item_id=item_id,
                    predicted=predicted,
                    probs=probs_list,
                    latency_s=latency,
                    timestamp=_utc_now(),
                    destination=str(self.config.review_dir),
                    status=STATUS_QUEUED,
                )
                self._audit(decision, content_hash)
                return decision

            decision = RoutingDecision(
                item_id=item_id,
                predicted=predicted,
                probs=probs_list,
                latency_s=latency,
                timestamp=_utc_now(),
                destination=None,
                status=STATUS_ROUTED,
            )
            self._route(decision, data)
            self._audit(decision, content_hash)
            return decision

    def _route(self, decision: RoutingDecision, data: bytes) -> None:
        """Execute the routing effect, mutating the decision on failure."""
        class_name = CLASS_NAMES[decision.predicted]
        destination = self.config.destinations[class_name]
        if is_http_destination(destination):
            ok, error = self._forward_http(destination, decision, data)
            if ok:
                decision.destination = destination
            else:
                dest = _atomic_write(self.config.failed_dir, _safe_filename(f"{decision.item_id}.dcm"), data)
                decision.destination = str(dest)
                decision.status = STATUS_FAILED
                decision.error = error
        else:
            target = _atomic_write(Path(destination), _safe_filename(f"{decision.item_id}.dcm"), data)
            decision.destination = str(target)

    def _forward_http(self, url: str, decision: RoutingDecision, data: bytes) -> tuple[bool, Optional[str]]:
        """POST with metadata headers; exponential backoff between attempts."""
        headers = {
            "Content-Type": "application/dicom",
            "X-Router-Id": decision.item_id,
            "X-Router-Class": CLASS_NAMES[decision.predicted],
            "X-Router-Confidence": f"{max(decision.probs):.6f}",
        }
        last_error = None
        for attempt in range(self.config.retry_attempts):
            try:
                response = requests.post(url, data=data, headers=headers, timeout=10)
                if response.status_code < 300:
                    return True, None
                last_error = f"HTTP {response.status_code}"
            except requests.RequestException as exc:
                last_error = f"{type(exc).__name__}: {exc}"
            if attempt + 1 < self.config.retry_attempts:
                time.sleep(self.config.retry_backoff_s * (2**attempt))
        return False, f"destination unavailable after {self.config.retry_attempts} attempts: {last_error}"
