"""Operational router: ingest, classify, route, audit, review."""

from .api import create_app
from .audit import AuditLog, AuditReplayError, replay_audit, routed_counts
from .config import LISTEN_ENV_VAR, ConfigError, RouteConfig, is_http_destination, load_config
from .core import (
    STATUS_DUPLICATE,
    STATUS_FAILED,
    STATUS_QUEUED,
    STATUS_ROUTED,
    AuditUnavailable,
    ClassifyResult,
    RouterCore,
    RoutingDecision,
)
from .review import (
    ROUND_ADJUDICATION,
    BadLabelRequest,
    LabelConflict,
    ReviewError,
    ReviewItem,
    ReviewStore,
    RoundLabel,
    UnknownItem,
)
from .watcher import DirectoryWatcher, WatchSetupFailure

__all__ = [
    "AuditLog",
    "AuditReplayError",
    "AuditUnavailable",
    "BadLabelRequest",
    "ClassifyResult",
    "ConfigError",
    "DirectoryWatcher",
    "LISTEN_ENV_VAR",
    "LabelConflict",
    "ROUND_ADJUDICATION",
    "ReviewError",
    "ReviewItem",
    "ReviewStore",
    "RouteConfig",
    "RouterCore",
    "RoundLabel",
    "RoutingDecision",
    "STATUS_DUPLICATE",
    "STATUS_FAILED",
    "STATUS_QUEUED",
    "STATUS_ROUTED",
    "UnknownItem",
    "WatchSetupFailure",
    "create_app",
    "is_http_destination",
    "load_config",
    "replay_audit",
    "routed_counts",
]
