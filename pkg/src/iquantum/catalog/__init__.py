"""Shipped Satake diagrams and the classical symmetric-pair table used to cross-check them."""

from __future__ import annotations

import json
from importlib import resources

from ..satake import SatakeDiagram

# the catalog proper; quasisplit_A4 is shipped as an extra case
CATALOG = (
    "split_A1",
    "split_A2",
    "split_B2",
    "quasisplit_A2",
    "quasisplit_A3",
    "diagonal_A1xA1",
    "AIII_A3_black2",
)
EXTRA = ("quasisplit_A4",)


def path(name: str):
    return resources.files(__name__).joinpath(f"{name}.json")


def load(name: str) -> SatakeDiagram:
    data = json.loads(path(name).read_text(encoding="utf-8"))
    return SatakeDiagram.from_dict(data, name=name)


def classical_table() -> dict:
    data = json.loads(path("classical_pairs").read_text(encoding="utf-8"))
    return {k: v for k, v in data.items() if not k.startswith("_")}
