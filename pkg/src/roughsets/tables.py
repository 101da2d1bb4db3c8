"""Categorical table model and CSV ingestion.

An :class:`InformationTable` is an immutable objects-by-attributes grid of
categorical tokens; a :class:`DecisionTable` is the same grid with one column
designated as the decision. Objects are addressed by zero-based row index,
attributes by name. Every cell must be filled: values are opaque strings
compared by byte equality, never parsed as numbers.
"""
from __future__ import annotations

import csv
import hashlib
import io
import os
from pathlib import Path
from typing import IO, Iterable, NamedTuple, Sequence

from .errors import (
    MissingValueError,
    SchemaError,
    TableParseError,
    UnknownAttributeError,
    UnknownObjectError,
)

SIDECAR_KEYS = ("decision", "id")


class AVPair(NamedTuple):
    """An (attribute, value) pair; the building block of rule conditions."""

    attribute: str
    value: str

    def __str__(self) -> str:
        return f"{self.attribute}={self.value}"


class InformationTable:
    """Immutable table of categorical values with a total cell mapping.

    Values are interned per column: each column keeps its distinct tokens in
    first-appearance order plus an integer code per row, so agreement checks
    and grouping work on small ints.
    """

    def __init__(
        self,
        attributes: Sequence[str],
        rows: Sequence[Sequence[str]],
        labels: Sequence[str] | None = None,
        id_name: str | None = None,
    ):
        attrs = tuple(attributes)
        if not attrs:
            raise SchemaError("table needs at least one attribute")
        if any(not a for a in attrs):
            raise SchemaError("empty attribute name in header")
        if len(set(attrs)) != len(attrs):
            dup = sorted({a for a in attrs if attrs.count(a) > 1})
            raise SchemaError(f"duplicate attribute name(s): {', '.join(dup)}")
        if not rows:
            raise TableParseError("table needs at least one row")

        self.attributes: tuple[str, ...] = attrs
        self._index = {a: j for j, a in enumerate(attrs)}
        n_attrs = len(attrs)

        domains: list[list[str]] = [[] for _ in attrs]
        code_of: list[dict[str, int]] = [{} for _ in attrs]
        codes: list[list[int]] = [[] for _ in attrs]
        for i, row in enumerate(rows):
            cells = tuple(row)
            if len(cells) != n_attrs:
                raise TableParseError(
                    f"row {i + 1}: expected {n_attrs} fields, got {len(cells)}"
                )
            for j, cell in enumerate(cells):
                if cell == "":
                    raise MissingValueError(
                        f"row {i + 1}, column {attrs[j]!r}: empty cell "
                        "(missing values are not supported)"
                    )
                code = code_of[j].setdefault(cell, len(domains[j]))
                if code == len(domains[j]):
                    domains[j].append(cell)
                codes[j].append(code)

        self._codes: tuple[tuple[int, ...], ...] = tuple(tuple(c) for c in codes)
        self._domains: tuple[tuple[str, ...], ...] = tuple(tuple(d) for d in domains)
        self.n_objects: int = len(codes[0])
        self.universe: frozenset[int] = frozenset(range(self.n_objects))

        if labels is None:
            labels = tuple(str(i + 1) for i in range(self.n_objects))
        else:
            labels = tuple(labels)
            if len(labels) != self.n_objects:
                raise TableParseError(
                    f"{len(labels)} labels for {self.n_objects} rows"
                )
        self.labels: tuple[str, ...] = labels
        self.id_name: str | None = id_name

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    def attribute_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownAttributeError(f"unknown attribute {name!r}") from None

    def check_object(self, x: int) -> int:
        if not 0 <= x < self.n_objects:
            raise UnknownObjectError(
                f"object {x} out of range (table has {self.n_objects} objects)"
            )
        return x

    def value(self, x: int, attribute: str) -> str:
        """The information function: the token at (object, attribute)."""
        j = self.attribute_index(attribute)
        self.check_object(x)
        return self._domains[j][self._codes[j][x]]

    def row(self, x: int) -> tuple[str, ...]:
        self.check_object(x)
        return tuple(self._domains[j][self._codes[j][x]] for j in range(self.n_attributes))

    def value_domain(self, attribute: str) -> tuple[str, ...]:
        """Distinct values observed in a column, in first-appearance order."""
        return self._domains[self.attribute_index(attribute)]

    def column_codes(self, attribute: str) -> tuple[int, ...]:
        """Interned per-row codes of a column (equal code iff equal token)."""
        return self._codes[self.attribute_index(attribute)]

    def value_code(self, attribute: str, value: str) -> int | None:
        """Interned code of a token in a column, or None if unseen there."""
        j = self.attribute_index(attribute)
        try:
            return self._domains[j].index(value)
        except ValueError:
            return None

    def to_csv(self) -> str:
        """Serialize back to CSV; the id column, when present, comes first."""
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        if self.id_name is not None:
            writer.writerow((self.id_name, *self.attributes))
            for x in range(self.n_objects):
                writer.writerow((self.labels[x], *self.row(x)))
        else:
            writer.writerow(self.attributes)
            for x in range(self.n_objects):
                writer.writerow(self.row(x))
        return out.getvalue()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InformationTable):
            return NotImplemented
        return (
            self.attributes == other.attributes
            and self.labels == other.labels
            and self.id_name == other.id_name
            and self.n_objects == other.n_objects
            and all(self.row(x) == other.row(x) for x in range(self.n_objects))
        )

    def __repr__(self) -> str:
        return (
            f"InformationTable({self.n_objects} objects x "
            f"{self.n_attributes} attributes)"
        )


class DecisionTable:
    """An information table with one column designated as the decision."""

    def __init__(self, base: InformationTable, decision: str):
        if decision not in base.attributes:
            raise SchemaError(f"unknown decision attribute {decision!r}")
        conditions = tuple(a for a in base.attributes if a != decision)
        if not conditions:
            raise SchemaError("decision table needs at least one condition attribute")
        self.base = base
        self.decision = decision
        self.conditions = conditions

    @property
    def n_objects(self) -> int:
        return self.base.n_objects

    @property
    def universe(self) -> frozenset[int]:
        return self.base.universe

    @property
    def labels(self) -> tuple[str, ...]:
        return self.base.labels

    def decision_value(self, x: int) -> str:
        return self.base.value(x, self.decision)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DecisionTable):
            return NotImplemented
        return self.base == other.base and self.decision == other.decision

    def __repr__(self) -> str:
        return (
            f"DecisionTable({self.base.n_objects} objects, "
            f"conditions={list(self.conditions)}, decision={self.decision!r})"
        )


def resolve_attributes(table: InformationTable, attributes: Iterable[str]) -> tuple[int, ...]:
    """Validate attribute names and return their column indices, sorted and
    de-duplicated (canonical order is always table column order)."""
    return tuple(sorted({table.attribute_index(a) for a in attributes}))


# --- CSV / sidecar I/O ----------------------------------------------------

def _read_rows(source: str | os.PathLike[str] | IO[str]) -> list[list[str]]:
    if isinstance(source, (str, os.PathLike)):
        with open(source, newline="", encoding="utf-8") as fh:
            return [list(row) for row in csv.reader(fh)]
    return [list(row) for row in csv.reader(source)]


def load_information_table(
    source: str | os.PathLike[str] | IO[str],
    *,
    id_column: str | None = None,
) -> InformationTable:
    """Load a CSV (path or text stream) into an information table.

    The first row is the header. With `id_column`, that column is carried as
    the per-row display label instead of an attribute.
    """
    rows = _read_rows(source)
    if not rows:
        raise TableParseError("empty input: no header row")
    header, data = rows[0], rows[1:]
    if not header or all(h == "" for h in header):
        raise TableParseError("empty header row")
    if len(set(header)) != len(header):
        dup = sorted({h for h in header if header.count(h) > 1})
        raise SchemaError(f"duplicate attribute name(s): {', '.join(dup)}")
    for i, row in enumerate(data):
        if len(row) != len(header):
            raise TableParseError(
                f"line {i + 2}: expected {len(header)} fields, got {len(row)}"
            )
    if not data:
        raise TableParseError("table needs at least one data row")

    labels = None
    id_name = None
    if id_column is not None:
        if id_column not in header:
            raise SchemaError(f"unknown id column {id_column!r}")
        j = header.index(id_column)
        labels = [row[j] for row in data]
        if any(lab == "" for lab in labels):
            raise MissingValueError(f"empty cell in id column {id_column!r}")
        id_name = id_column
        header = header[:j] + header[j + 1 :]
        data = [row[:j] + row[j + 1 :] for row in data]
        if not header:
            raise SchemaError("table has only the id column")

    return InformationTable(header, data, labels=labels, id_name=id_name)


def load_decision_table(
    source: str | os.PathLike[str] | IO[str],
    decision: str,
    *,
    id_column: str | None = None,
) -> DecisionTable:
    """Load a CSV and split it into conditions plus the named decision."""
    return DecisionTable(load_information_table(source, id_column=id_column), decision)


def load_sidecar_config(source: str | os.PathLike[str] | IO[str]) -> dict[str, str]:
    """Parse a `key=value` sidecar config naming the decision/id columns.

    Blank lines and `#` comments are ignored; only the keys 'decision' and
    'id' are accepted.
    """
    if isinstance(source, (str, os.PathLike)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source.read()
    config: dict[str, str] = {}
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise TableParseError(f"sidecar line {n}: expected key=value, got {raw!r}")
        if key not in SIDECAR_KEYS:
            raise TableParseError(
                f"sidecar line {n}: unknown key {key!r} "
                f"(expected one of {', '.join(SIDECAR_KEYS)})"
            )
        if key in config:
            raise TableParseError(f"sidecar line {n}: duplicate key {key!r}")
        config[key] = value
    return config


def sidecar_path(csv_path: str | os.PathLike[str]) -> Path:
    """The conventional sidecar location: the CSV path with a .cfg suffix."""
    return Path(csv_path).with_suffix(".cfg")


def fingerprint(table: InformationTable | DecisionTable) -> str:
    """Stable identity of a table's content (and decision split, if any)."""
    if isinstance(table, DecisionTable):
        payload = table.base.to_csv() + f"\n#decision={table.decision}\n"
    else:
        payload = table.to_csv()
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()
