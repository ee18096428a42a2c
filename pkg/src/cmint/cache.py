"""Append-only JSON-lines cache for computed reports (last write wins)."""

from __future__ import annotations

import json
import os
from pathlib import Path

CACHE_ENV = "CMINT_CACHE_DIR"
CACHE_VERSION = 1


def cache_dir() -> Path:
    base = os.environ.get(CACHE_ENV)
    if base:
        return Path(base)
    return Path.home() / ".cache" / "cmint"


def cache_file() -> Path:
    return cache_dir() / "reports.jsonl"


def report_key(D: int, x: int, y: int, den: int, mode: str, m: int) -> str:
    return f"{D}|{x}|{y}|{den}|{mode}|{m}"


def load() -> dict[str, dict]:
    path = cache_file()
    if not path.exists():
        return {}
    out: dict[str, dict] = {}
    with path.open() as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError:
                continue
            if not isinstance(row, dict) or row.get("version") != CACHE_VERSION:
                continue
            if not isinstance(row.get("key"), str) or not isinstance(row.get("report"), dict):
                continue
            out[row["key"]] = row["report"]
    return out


def append(key: str, report: dict) -> None:
    path = cache_file()
    path.parent.mkdir(parents=True, exist_ok=True)
    row = {"key": key, "version": CACHE_VERSION, "report": report}
    with path.open("a") as fh:
        fh.write(json.dumps(row, sort_keys=True) + "\n")
