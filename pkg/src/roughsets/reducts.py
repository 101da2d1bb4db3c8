"""Exhaustive level-wise reduct enumeration and the core.

A reduct of an information table is a minimal attribute subset inducing the
same partition as the full attribute set; a decision reduct is a minimal
condition subset preserving the positive region of the decision. Both
predicates are monotone in the subset, so the search walks subset sizes
upward, skips supersets of reducts already found, and re-checks minimality by
single-attribute removal (which keeps results identical with pruning off).

Subsets are enumerated in colexicographic order within each size; the result
list is ordered by size, then lexicographically by attribute index. The
search is capped (default 24 attributes) and refuses larger inputs outright
rather than silently truncating.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .errors import CapacityError, SchemaError
from .indiscernibility import ElementarySetIndex
from .tables import DecisionTable, InformationTable, resolve_attributes

DEFAULT_CAP = 24

INFORMATION_MODE = "information"
DECISION_MODE = "decision"


@dataclass(frozen=True)
class ReductSet:
    """All reducts of a table plus their intersection (the core)."""

    reducts: tuple[tuple[str, ...], ...]
    core: tuple[str, ...]
    mode: str


def _signature(table: InformationTable, cols: Iterable[int]) -> tuple[int, ...]:
    # first-occurrence block numbering; equal signatures <=> equal partitions
    code_cols = [table._codes[j] for j in cols]
    seen: dict[tuple[int, ...], int] = {}
    return tuple(
        seen.setdefault(tuple(col[x] for col in code_cols), len(seen))
        for x in range(table.n_objects)
    )


def preserves_partition(table: InformationTable, attributes: Iterable[str]) -> bool:
    """True iff the subset induces the same partition as all attributes."""
    cols = resolve_attributes(table, attributes)
    return _signature(table, cols) == _signature(table, range(table.n_attributes))


def is_reduct(table: InformationTable, attributes: Iterable[str]) -> bool:
    """True iff the subset preserves the full partition and is minimal for it."""
    cols = resolve_attributes(table, attributes)
    if not cols:
        raise SchemaError("a reduct candidate must be a nonempty attribute set")
    full = _signature(table, range(table.n_attributes))
    if _signature(table, cols) != full:
        return False
    return all(
        _signature(table, (c for c in cols if c != j)) != full for j in cols
    )


def _colex_combinations(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for last in range(k - 1, n):
        for rest in _colex_combinations(last, k - 1):
            yield rest + (last,)


def _level_wise(
    m: int, preserves: Callable[[tuple[int, ...]], bool], prune: bool
) -> list[tuple[int, ...]]:
    found: list[tuple[int, ...]] = []
    found_sets: list[frozenset[int]] = []
    for size in range(1, m + 1):
        level: list[tuple[int, ...]] = []
        for comb in _colex_combinations(m, size):
            if prune and any(r <= frozenset(comb) for r in found_sets):
                continue
            if not preserves(comb):
                continue
            if all(
                not preserves(tuple(c for c in comb if c != a)) for a in comb
            ):
                level.append(comb)
        level.sort()
        found.extend(level)
        found_sets.extend(frozenset(c) for c in level)
    return found


def _ordered_core(
    reducts: tuple[tuple[str, ...], ...], names: tuple[str, ...]
) -> tuple[str, ...]:
    if not reducts:
        return ()
    common = frozenset.intersection(*(frozenset(r) for r in reducts))
    return tuple(a for a in names if a in common)


def find_reducts(
    table: InformationTable,
    *,
    max_attributes: int = DEFAULT_CAP,
    prune: bool = True,
) -> ReductSet:
    """Enumerate every partition-preserving reduct of an information table."""
    names = table.attributes
    if len(names) > max_attributes:
        raise CapacityError(
            f"{len(names)} attributes exceeds the exhaustive search cap "
            f"({max_attributes})"
        )
    full = _signature(table, range(len(names)))

    def preserves(comb: tuple[int, ...]) -> bool:
        return _signature(table, comb) == full

    combos = _level_wise(len(names), preserves, prune)
    reducts = tuple(tuple(names[i] for i in comb) for comb in combos)
    return ReductSet(reducts, _ordered_core(reducts, names), INFORMATION_MODE)


def find_decision_reducts(
    d: DecisionTable,
    *,
    max_attributes: int = DEFAULT_CAP,
    prune: bool = True,
) -> ReductSet:
    """Enumerate every minimal condition subset preserving the positive
    region of the decision."""
    from .approximation import positive_region

    names = d.conditions
    if len(names) > max_attributes:
        raise CapacityError(
            f"{len(names)} condition attributes exceeds the exhaustive "
            f"search cap ({max_attributes})"
        )
    full_pos = positive_region(d)

    def preserves(comb: tuple[int, ...]) -> bool:
        return positive_region(d, (names[i] for i in comb)) == full_pos

    combos = _level_wise(len(names), preserves, prune)
    reducts = tuple(tuple(names[i] for i in comb) for comb in combos)
    return ReductSet(reducts, _ordered_core(reducts, names), DECISION_MODE)


def core_attributes(rs: ReductSet) -> frozenset[str]:
    """Intersection of all reducts; empty when there are no reducts."""
    if not rs.reducts:
        return frozenset()
    return frozenset.intersection(*(frozenset(r) for r in rs.reducts))
