"""Attribute-value blocks, elementary sets, and indiscernibility partitions.

Two objects are indiscernible under an attribute subset B when they agree on
every attribute in B. The resulting equivalence classes (elementary sets)
form a partition of the universe; everything downstream (approximations,
reducts, rules) is built from these granules.

Partitions are computed by grouping interned value tuples, and are always
reported canonically: blocks ordered by their smallest member, members in
ascending order. The empty attribute subset yields the single-block
partition {universe}.
"""
from __future__ import annotations

from typing import Iterable, Iterator

from .tables import InformationTable, resolve_attributes

Partition = tuple[frozenset[int], ...]


def block(table: InformationTable, attribute: str, value: str) -> frozenset[int]:
    """All objects whose `attribute` carries `value`; empty if unseen."""
    code = table.value_code(attribute, value)
    if code is None:
        return frozenset()
    codes = table.column_codes(attribute)
    return frozenset(x for x in range(table.n_objects) if codes[x] == code)


def support(table: InformationTable, attribute: str, value: str) -> int:
    """Cardinality of the attribute-value block."""
    return len(block(table, attribute, value))


def indiscernible(
    table: InformationTable, x: int, y: int, attributes: Iterable[str]
) -> bool:
    """True iff x and y agree on every attribute of the subset."""
    cols = resolve_attributes(table, attributes)
    table.check_object(x)
    table.check_object(y)
    return all(table._codes[j][x] == table._codes[j][y] for j in cols)


def _group_keys(table: InformationTable, cols: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    code_cols = [table._codes[j] for j in cols]
    for x in range(table.n_objects):
        yield tuple(col[x] for col in code_cols)


def partition(table: InformationTable, attributes: Iterable[str]) -> Partition:
    """The family of elementary sets of the attribute subset."""
    cols = resolve_attributes(table, attributes)
    groups: dict[tuple[int, ...], list[int]] = {}
    for x, key in enumerate(_group_keys(table, cols)):
        groups.setdefault(key, []).append(x)
    # insertion order == first-occurrence order == ascending smallest member
    return tuple(frozenset(members) for members in groups.values())


def elementary_set(
    table: InformationTable, x: int, attributes: Iterable[str]
) -> frozenset[int]:
    """All objects agreeing with x on every attribute of the subset."""
    cols = resolve_attributes(table, attributes)
    table.check_object(x)
    code_cols = [table._codes[j] for j in cols]
    key = tuple(col[x] for col in code_cols)
    return frozenset(
        y for y in range(table.n_objects)
        if tuple(col[y] for col in code_cols) == key
    )


class ElementarySetIndex:
    """Precomputed elementary sets of one attribute subset.

    Maps every object to its block and exposes the blocks as a canonical
    partition; immutable once built, safe to share.
    """

    def __init__(self, table: InformationTable, attributes: Iterable[str]):
        cols = resolve_attributes(table, attributes)
        self.table = table
        self.attributes: tuple[str, ...] = tuple(table.attributes[j] for j in cols)
        block_ids: list[int] = []
        members: list[list[int]] = []
        seen: dict[tuple[int, ...], int] = {}
        for x, key in enumerate(_group_keys(table, cols)):
            bid = seen.setdefault(key, len(members))
            if bid == len(members):
                members.append([])
            members[bid].append(x)
            block_ids.append(bid)
        self.block_ids: tuple[int, ...] = tuple(block_ids)
        self.blocks: Partition = tuple(frozenset(m) for m in members)

    def block_of(self, x: int) -> frozenset[int]:
        self.table.check_object(x)
        return self.blocks[self.block_ids[x]]

    def __len__(self) -> int:
        return len(self.blocks)

    def __repr__(self) -> str:
        return (
            f"ElementarySetIndex({len(self.blocks)} blocks over "
            f"attributes {list(self.attributes)})"
        )
