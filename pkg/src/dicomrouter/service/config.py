"""Routing service configuration (INI-style key/value file).

Reference file::

    [router]
    threshold = 0.9
    weights = /var/lib/router/model.rnmw
    input_size = 64
    listen = 127.0.0.1:8080
    work_dir = /var/lib/router/work
    watch_dir = /var/lib/router/inbox
    second_round = all
    api_token =
    retry_attempts = 3
    retry_backoff_s = 0.2

    [destinations]
    abdominal = /var/lib/router/out/abdominal
    adult_chest = /var/lib/router/out/adult_chest
    pediatric_chest = /var/lib/router/out/pediatric_chest
    spine = /var/lib/router/out/spine
    others = http://pacs.example.org/ingest

Destinations are directories unless they start with http:// or https://.
The listen address can be overridden with the DICOMROUTER_LISTEN
environment variable.
"""
from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field
from pathlib import Path

from ..nn.classes import CLASS_NAMES

LISTEN_ENV_VAR = "DICOMROUTER_LISTEN"


class ConfigError(ValueError):
    pass


@dataclass
class RouteConfig:
    destinations: dict[str, str]
    threshold: float = 0.9
    weights: str | None = None
    input_size: int | None = None
    listen: str = "127.0.0.1:8080"
    work_dir: str = "router-work"
    watch_dir: str | None = None
    second_round: str = "all"  # or "disagreements"
    api_token: str | None = None
    retry_attempts: int = 3
    retry_backoff_s: float = 0.2

    def __post_init__(self) -> None:
        missing = [name for name in CLASS_NAMES if name not in self.destinations]
        if missing:
            raise ConfigError(f"destinations missing for classes: {missing}")
        if not 0.0 <= self.threshold <= 1.0:
            raise ConfigError(f"threshold {self.threshold} outside [0, 1]")
        if self.second_round not in ("all", "disagreements"):
            raise ConfigError(f"second_round must be 'all' or 'disagreements', got {self.second_round!r}")
        if self.retry_attempts < 1:
            raise ConfigError("retry_attempts must be >= 1")

    # Derived working locations
    @property
    def quarantine_dir(self) -> Path:
        return Path(self.work_dir) / "quarantine"

    @property
    def review_dir(self) -> Path:
        return Path(self.work_dir) / "review"

    @property
    def failed_dir(self) -> Path:
        return Path(self.work_dir) / "failed"

    @property
    def renditions_dir(self) -> Path:
        return Path(self.work_dir) / "renditions"

    @property
    def audit_path(self) -> Path:
        return Path(self.work_dir) / "audit.jsonl"

    @property
    def review_state_path(self) -> Path:
        return Path(self.work_dir) / "review_queue.json"

    def ensure_dirs(self) -> None:
        for path in (self.quarantine_dir, self.review_dir, self.failed_dir, self.renditions_dir):
            path.mkdir(parents=True, exist_ok=True)
        for name, dest in self.destinations.items():
            if not is_http_destination(dest):
                Path(dest).mkdir(parents=True, exist_ok=True)


def is_http_destination(dest: str) -> bool:
    return dest.startswith("http://") or dest.startswith("https://")


def load_config(path: str | Path) -> RouteConfig:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path}")
    if "destinations" not in parser:
        raise ConfigError("config needs a [destinations] section")

    router = parser["router"] if "router" in parser else {}
    destinations = dict(parser["destinations"])

    listen = os.environ.get(LISTEN_ENV_VAR) or router.get("listen", "127.0.0.1:8080")

    def _opt(key: str) -> str | None:
        value = router.get(key, "")
        return value if value else None

    return RouteConfig(
        destinations=destinations,
        threshold=float(router.get("threshold", "0.9")),
        weights=_opt("weights"),
        input_size=int(router["input_size"]) if router.get("input_size") else None,
        listen=listen,
        work_dir=router.get("work_dir", "router-work"),
        watch_dir=_opt("watch_dir"),
        second_round=router.get("second_round", "all"),
        api_token=_opt("api_token"),
        retry_attempts=int(router.get("retry_attempts", "3")),
        retry_backoff_s=float(router.get("retry_backoff_s", "0.2")),
    )
