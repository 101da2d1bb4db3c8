"""Lower/upper approximations, regions, accuracy, and decision consistency.

A target set is approximated from below by the union of elementary sets fully
inside it and from above by the union of elementary sets meeting it. The gap
between the two is the boundary; accuracy is the exact rational
|lower| / |upper|, kept as a Fraction so results like 3/5 never depend on
float rounding.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import SchemaError, UndefinedAccuracyError
from .indiscernibility import ElementarySetIndex
from .tables import DecisionTable, InformationTable, resolve_attributes

CRISP = "crisp"
ROUGHLY_DEFINABLE = "roughly-definable"
INTERNALLY_UNDEFINABLE = "internally-undefinable"
EXTERNALLY_UNDEFINABLE = "externally-undefinable"
TOTALLY_UNDEFINABLE = "totally-undefinable"

CATEGORIES = (
    CRISP,
    ROUGHLY_DEFINABLE,
    INTERNALLY_UNDEFINABLE,
    EXTERNALLY_UNDEFINABLE,
    TOTALLY_UNDEFINABLE,
)


@dataclass(frozen=True)
class Approximation:
    """Both approximations of one target set plus the derived regions.

    `accuracy` is None exactly when the upper approximation is empty (i.e.
    the target itself is empty). `category` reports crisp whenever
    lower == upper, else one of the four rough definability cases.
    """

    target: frozenset[int]
    attributes: tuple[str, ...]
    lower: frozenset[int]
    upper: frozenset[int]
    boundary: frozenset[int]
    negative: frozenset[int]
    accuracy: Fraction | None
    category: str

    @property
    def positive(self) -> frozenset[int]:
        return self.lower


def _checked_target(table: InformationTable, target: Iterable[int]) -> frozenset[int]:
    members = frozenset(target)
    for x in members:
        table.check_object(x)
    return members


def _bounds(
    table: InformationTable, target: frozenset[int], attributes: Iterable[str]
) -> tuple[frozenset[int], frozenset[int], tuple[str, ...]]:
    index = ElementarySetIndex(table, attributes)
    lower: set[int] = set()
    upper: set[int] = set()
    for blk in index.blocks:
        if blk <= target:
            lower |= blk
        if blk & target:
            upper |= blk
    return frozenset(lower), frozenset(upper), index.attributes


def lower_approx(
    table: InformationTable, target: Iterable[int], attributes: Iterable[str]
) -> frozenset[int]:
    """Objects whose whole elementary set lies inside the target."""
    target = _checked_target(table, target)
    lower, _, _ = _bounds(table, target, attributes)
    return lower


def upper_approx(
    table: InformationTable, target: Iterable[int], attributes: Iterable[str]
) -> frozenset[int]:
    """Objects whose elementary set meets the target."""
    target = _checked_target(table, target)
    _, upper, _ = _bounds(table, target, attributes)
    return upper


def _category(lower: frozenset[int], upper: frozenset[int], universe: frozenset[int]) -> str:
    if lower == upper:
        return CRISP
    if lower:
        return ROUGHLY_DEFINABLE if upper != universe else EXTERNALLY_UNDEFINABLE
    return INTERNALLY_UNDEFINABLE if upper != universe else TOTALLY_UNDEFINABLE


def regions(
    table: InformationTable, target: Iterable[int], attributes: Iterable[str]
) -> Approximation:
    """Full approximation bundle: bounds, three regions, accuracy, category."""
    target = _checked_target(table, target)
    lower, upper, attrs = _bounds(table, target, attributes)
    return Approximation(
        target=target,
        attributes=attrs,
        lower=lower,
        upper=upper,
        boundary=upper - lower,
        negative=table.universe - upper,
        accuracy=Fraction(len(lower), len(upper)) if upper else None,
        category=_category(lower, upper, table.universe),
    )


def accuracy(
    table: InformationTable, target: Iterable[int], attributes: Iterable[str]
) -> Fraction:
    """|lower| / |upper| as an exact rational; 1 iff the target is crisp."""
    result = regions(table, target, attributes)
    if result.accuracy is None:
        raise UndefinedAccuracyError(
            "accuracy is undefined for an empty upper approximation "
            "(the target set is empty)"
        )
    return result.accuracy


def classify_definability(
    table: InformationTable, target: Iterable[int], attributes: Iterable[str]
) -> str:
    """Definability category of the target under the attribute subset."""
    return regions(table, target, attributes).category


def decision_classes(d: DecisionTable) -> list[tuple[str, frozenset[int]]]:
    """(value, members) per decision value, in first-appearance order."""
    codes = d.base.column_codes(d.decision)
    domain = d.base.value_domain(d.decision)
    members: list[set[int]] = [set() for _ in domain]
    for x, code in enumerate(codes):
        members[code].add(x)
    return [(value, frozenset(m)) for value, m in zip(domain, members)]


def _condition_subset(d: DecisionTable, attributes: Iterable[str] | None) -> tuple[str, ...]:
    if attributes is None:
        return d.conditions
    cols = resolve_attributes(d.base, attributes)
    names = tuple(d.base.attributes[j] for j in cols)
    outside = [a for a in names if a not in d.conditions]
    if outside:
        raise SchemaError(
            f"not condition attributes: {', '.join(outside)} "
            f"(decision is {d.decision!r})"
        )
    return names


def positive_region(
    d: DecisionTable, attributes: Iterable[str] | None = None
) -> frozenset[int]:
    """Union of the lower approximations of all decision classes.

    Class lowers are pairwise disjoint, so this is exactly the set of objects
    whose elementary set is decision-pure; computed in one pass over blocks.
    """
    attrs = _condition_subset(d, attributes)
    index = ElementarySetIndex(d.base, attrs)
    dec = d.base.column_codes(d.decision)
    pos: set[int] = set()
    for blk in index.blocks:
        first = dec[next(iter(blk))]
        if all(dec[y] == first for y in blk):
            pos |= blk
    return frozenset(pos)


def consistency_factor(d: DecisionTable) -> Fraction:
    """Fraction of objects in the positive region of the full condition set;
    1 iff the table is deterministic."""
    return Fraction(len(positive_region(d)), d.n_objects)


def is_deterministic(d: DecisionTable) -> bool:
    """True iff every condition-elementary set is decision-pure."""
    return consistency_factor(d) == 1
