"""Shared text/JSON rendering for the CLI reports.

Every rational is carried as an exact numerator/denominator pair plus a
decimal string, and object sets are rendered through the table's display
labels (the id column when present, else 1-based row numbers), so text and
JSON always show the same figures.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .tables import DecisionTable, InformationTable


def decimal(value: Fraction) -> str:
    """Six-decimal rendering with trailing zeros trimmed."""
    text = f"{value.numerator / value.denominator:.6f}"
    return text.rstrip("0").rstrip(".")


def ratio_json(value: Fraction | None) -> dict | None:
    if value is None:
        return None
    return {
        "num": value.numerator,
        "den": value.denominator,
        "decimal": decimal(value),
    }


def ratio_text(value: Fraction | None) -> str:
    if value is None:
        return "undefined"
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value} ({decimal(value)})"


def object_labels(
    table: InformationTable | DecisionTable, objects: Iterable[int]
) -> list[str]:
    labels = table.labels
    return [labels[x] for x in sorted(objects)]


def fmt_objects(
    table: InformationTable | DecisionTable, objects: Iterable[int]
) -> str:
    return "{" + ",".join(object_labels(table, objects)) + "}"


def fmt_attrs(names: Iterable[str]) -> str:
    return "{" + ", ".join(names) + "}"


@dataclass
class Report:
    """One command's output in both shapes."""

    payload: dict
    lines: list[str] = field(default_factory=list)

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(self.payload, indent=2)
        return "\n".join(self.lines)
