"""Directory watcher: ingest files once their size is stable.

A file is considered complete after two consecutive polls (poll_interval
apart, 200 ms by default) observe the same size. Each file is ingested
exactly once and removed from the inbox afterwards; its bytes live on in
whatever terminal location the ingest chose.
"""
from __future__ import annotations

import threading
import time
from pathlib import Path

from .core import RouterCore


class WatchSetupFailure(RuntimeError):
    pass


class DirectoryWatcher:
    def __init__(self, directory: str | Path, core: RouterCore, poll_interval: float = 0.2):
        self.directory = Path(directory)
        if not self.directory.is_dir():
            raise WatchSetupFailure(f"watch directory {self.directory} does not exist")
        self.core = core
        self.poll_interval = poll_interval
        self.processed_count = 0
        self._last_sizes: dict[Path, int] = {}

    def scan_once(self) -> int:
        """One poll: ingest every file whose size matches the previous
        poll. Returns the number of files ingested."""
        ingested = 0
        current: dict[Path, int] = {}
        for path in sorted(self.directory.iterdir()):
            if not path.is_file() or path.name.startswith("."):
                continue
            try:
                size = path.stat().st_size
            except OSError:
                continue
            current[path] = size

        for path, size in current.items():
            if self._last_sizes.get(path) == size:
                try:
                    data = path.read_bytes()
                except OSError:
                    continue
                self.core.ingest(data, source_name=path.name)
                path.unlink(missing_ok=True)
                self.processed_count += 1
                ingested += 1
                del self._last_sizes[path]
            else:
                self._last_sizes[path] = size

        # forget entries whose files disappeared between polls
        for path in list(self._last_sizes):
            if path not in current:
                del self._last_sizes[path]
        return ingested

    def run(self, stop_event: threading.Event) -> None:
        while not stop_event.is_set():
            self.scan_once()
            stop_event.wait(self.poll_interval)

    def drain(self, timeout: float = 30.0) -> int:
        """Poll until the inbox is empty or the timeout hits; returns the
        number of files processed."""
        deadline = time.monotonic() + timeout
        processed = 0
        while time.monotonic() < deadline:
            processed += self.scan_once()
            if not any(p.is_file() and not p.name.startswith(".") for p in self.directory.iterdir()):
                return processed
            time.sleep(self.poll_interval)
        return processed
