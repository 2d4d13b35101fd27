"""Enumeration bounds, loaded from a small JSON file."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields


@dataclass(frozen=True)
class Bounds:
    max_carrier: int = 3
    max_depth: int = 4
    universe_k: int = 3
    size_guard: int = 10**6

    def to_json(self) -> dict:
        return asdict(self)

    @staticmethod
    def from_json(obj: dict) -> "Bounds":
        known = {f.name for f in fields(Bounds)}
        extra = set(obj) - known
        if extra:
            raise ValueError(f"unknown bounds keys: {sorted(extra)}")
        vals = {}
        for k, v in obj.items():
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"bound {k} must be a non-negative integer")
            vals[k] = v
        return Bounds(**vals)


DEFAULT_BOUNDS = Bounds()


def load_bounds(path: str | None) -> Bounds:
    if path is None:
        return DEFAULT_BOUNDS
    with open(path, encoding="utf-8") as fh:
        return Bounds.from_json(json.load(fh))
