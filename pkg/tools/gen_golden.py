#!/usr/bin/env python3
"""Regenerate the committed golden corpus (tests/data/golden) from the
declarative descriptions in tests/golden_corpus.py."""
from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from golden_corpus import golden_cases  # noqa: E402


def main() -> None:
    out_dir = ROOT / "tests" / "data" / "golden"
    out_dir.mkdir(parents=True, exist_ok=True)
    for case in golden_cases():
        (out_dir / f"{case.name}.dcm").write_bytes(case.file_bytes())
        (out_dir / f"{case.name}.dump").write_text(case.dump_text(), encoding="utf-8")
        print(f"wrote {case.name}")


if __name__ == "__main__":
    main()
