"""Bundled reference series and their manifest."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List

from .series import MultiSeries

__all__ = ["FixtureSet", "list_fixtures", "load_fixture", "manifest"]


@dataclass(frozen=True)
class FixtureSet:
    name: str
    grading: str
    series: MultiSeries
    total_dimension: int
    sha256: str

    def checksum_ok(self) -> bool:
        return _digest(self.name) == self.sha256

    def total(self) -> int:
        return sum(c for _, c in self.series.items())


def _dir():
    return resources.files("khalg") / "fixtures"


def _digest(name: str) -> str:
    return hashlib.sha256((_dir() / f"{name}.json").read_bytes()).hexdigest()


def manifest() -> List[Dict]:
    return json.loads((_dir() / "manifest.json").read_text())["fixtures"]


def list_fixtures() -> List[str]:
    return [m["name"] for m in manifest()]


def load_fixture(name: str) -> FixtureSet:
    entry = next((m for m in manifest() if m["name"] == name), None)
    if entry is None:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(list_fixtures())}")
    text = (_dir() / entry["file"]).read_text()
    data = json.loads(text)
    return FixtureSet(name, data.get("grading", ""), MultiSeries.from_json(text),
                      entry["total_dimension"], entry["sha256"])
