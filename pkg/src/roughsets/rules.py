"""Decision rule induction, rule metrics, serialization, and classification.

Exact rules (one certain decision) are grown inside the lower approximation
of each decision class by greedy sequential covering over attribute-value
blocks: repeatedly pick the pair whose block overlaps the uncovered goal the
most (ties: smaller block, then attribute order, then value order), intersect
until the match set sits inside the goal, drop redundant conditions, remove
what is covered, and repeat. Approximate rules (several possible decisions)
describe the decision-mixed elementary sets of the boundary region, with
their antecedents shortened as far as confinement to the boundary allows.

Rules serialize one per line as

    IF a=v AND a=v THEN d=v OR d=v ; len=.. sup=.. str=.. cov=..

which round-trips through :func:`parse_rules` / :func:`dump_rules`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Mapping, Sequence

import os

from .approximation import decision_classes
from .errors import (
    IncompleteObjectError,
    InvalidConditionError,
    RuleFormatError,
)
from .indiscernibility import ElementarySetIndex, block
from .tables import AVPair, DecisionTable, fingerprint

EXACT = "exact"
APPROXIMATE = "approximate"

DECIDED = "decided"
POSSIBLE = "possible"
ABSTAIN = "abstain"


@dataclass(frozen=True)
class RuleMetrics:
    """Per-rule quality numbers; `discrimination` is None when support is 0."""

    length: int
    strength: int
    support: int
    coverage: Fraction
    discrimination: Fraction | None

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("rule length must be at least 1")
        if not 0 <= self.strength <= self.support:
            raise ValueError("rule strength must lie in [0, support]")
        if not 0 <= self.coverage <= 1:
            raise ValueError("rule coverage must lie in [0, 1]")


@dataclass(frozen=True)
class Rule:
    """A conjunction of attribute-value conditions implying one decision
    value (exact) or a set of possible ones (approximate).

    `covered` holds the objects matched in the source table when the rule
    was induced there; it is bookkeeping, not part of rule identity.
    """

    conditions: tuple[AVPair, ...]
    decision_attribute: str
    decisions: tuple[str, ...]
    metrics: RuleMetrics | None = None
    covered: frozenset[int] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "conditions", tuple(AVPair(*p) for p in self.conditions)
        )
        object.__setattr__(self, "decisions", tuple(self.decisions))
        if not self.conditions:
            raise InvalidConditionError("a rule needs at least one condition")
        if not self.decisions:
            raise InvalidConditionError("a rule needs at least one decision value")
        attrs = [p.attribute for p in self.conditions]
        if len(set(attrs)) != len(attrs):
            raise InvalidConditionError("duplicate attribute in rule conditions")
        if self.decision_attribute in attrs:
            raise InvalidConditionError(
                f"decision attribute {self.decision_attribute!r} used as a condition"
            )
        if len(set(self.decisions)) != len(self.decisions):
            raise InvalidConditionError("duplicate decision value in rule")

    @property
    def kind(self) -> str:
        return EXACT if len(self.decisions) == 1 else APPROXIMATE

    def __str__(self) -> str:
        head = " AND ".join(str(p) for p in self.conditions)
        tail = " OR ".join(f"{self.decision_attribute}={v}" for v in self.decisions)
        return f"IF {head} THEN {tail}"


@dataclass(frozen=True)
class RuleSet:
    """An ordered collection of rules induced from (or parsed for) one table."""

    rules: tuple[Rule, ...]
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))

    @property
    def decision_order(self) -> tuple[str, ...]:
        """Decision values in first-appearance order across the rule list."""
        seen: list[str] = []
        for rule in self.rules:
            for v in rule.decisions:
                if v not in seen:
                    seen.append(v)
        return tuple(seen)

    @property
    def decision_support(self) -> dict[str, int]:
        return decision_support_measure(self)

    @property
    def redundancy(self) -> dict[str, int]:
        return decision_redundancy_factor(self)

    def __len__(self) -> int:
        return len(self.rules)


def match_set(
    d: DecisionTable, conditions: Iterable[AVPair | tuple[str, str]]
) -> frozenset[int]:
    """Objects satisfying every condition; the whole universe when empty."""
    pairs = [AVPair(*p) for p in conditions]
    seen: set[str] = set()
    for p in pairs:
        d.base.attribute_index(p.attribute)
        if p.attribute == d.decision:
            raise InvalidConditionError(
                f"decision attribute {d.decision!r} cannot appear in conditions"
            )
        if p.attribute in seen:
            raise InvalidConditionError(f"duplicate condition attribute {p.attribute!r}")
        seen.add(p.attribute)
    result = d.universe
    for p in pairs:
        result &= block(d.base, p.attribute, p.value)
    return result


# --- induction --------------------------------------------------------------

def _condition_blocks(d: DecisionTable) -> dict[AVPair, frozenset[int]]:
    blocks: dict[AVPair, frozenset[int]] = {}
    for a in d.conditions:
        for v in d.base.value_domain(a):
            blocks[AVPair(a, v)] = block(d.base, a, v)
    return blocks


def _intersect(
    pairs: Sequence[AVPair],
    blocks: Mapping[AVPair, frozenset[int]],
    universe: frozenset[int],
) -> frozenset[int]:
    m = universe
    for p in pairs:
        m &= blocks[p]
    return m


def _greedy_cover(
    d: DecisionTable,
    goal: frozenset[int],
    blocks: dict[AVPair, frozenset[int]],
    order: Mapping[AVPair, int],
) -> list[tuple[tuple[AVPair, ...], frozenset[int]]]:
    """Cover `goal` (a union of condition-elementary sets) with minimal
    block intersections; returns (conditions, match set) pairs."""
    universe = d.universe
    uncovered = set(goal)
    out: list[tuple[tuple[AVPair, ...], frozenset[int]]] = []
    while uncovered:
        conds: list[AVPair] = []
        used: set[str] = set()
        match = universe
        g = frozenset(uncovered)
        while not conds or not match <= goal:
            best: AVPair | None = None
            best_key: tuple[int, int, int] | None = None
            for pair, blk in blocks.items():
                if pair.attribute in used:
                    continue
                gain = len(blk & g)
                if gain == 0:
                    continue
                key = (-gain, len(blk), order[pair])
                if best_key is None or key < best_key:
                    best, best_key = pair, key
            assert best is not None  # g is nonempty, so its own pairs qualify
            conds.append(best)
            used.add(best.attribute)
            match &= blocks[best]
            g &= blocks[best]
        for pair in list(conds):  # drop redundant conditions, oldest first
            if len(conds) == 1:
                break
            trial = [p for p in conds if p != pair]
            if _intersect(trial, blocks, universe) <= goal:
                conds = trial
        match = _intersect(conds, blocks, universe)
        out.append((tuple(conds), match))
        uncovered -= match
    return out


def _build_metrics(
    match: frozenset[int],
    decisions: Sequence[str],
    class_sets: Mapping[str, frozenset[int]],
    length: int,
) -> RuleMetrics:
    union: frozenset[int] = frozenset()
    for v in decisions:
        union |= class_sets.get(v, frozenset())
    strength = len(match & union)
    support = len(match)
    coverage = Fraction(strength, len(union)) if union else Fraction(0)
    discrimination = Fraction(strength, support) if support else None
    return RuleMetrics(length, strength, support, coverage, discrimination)


def induce_exact_rules(d: DecisionTable) -> RuleSet:
    """Certain rules: per decision class, cover its lower approximation."""
    blocks = _condition_blocks(d)
    order = {p: i for i, p in enumerate(blocks)}
    index = ElementarySetIndex(d.base, d.conditions)
    classes = decision_classes(d)
    class_sets = dict(classes)
    rules: list[Rule] = []
    for value, members in classes:
        lower: frozenset[int] = frozenset()
        for blk in index.blocks:
            if blk <= members:
                lower |= blk
        for conds, match in _greedy_cover(d, lower, blocks, order):
            rules.append(
                Rule(
                    conds,
                    d.decision,
                    (value,),
                    metrics=_build_metrics(match, (value,), class_sets, len(conds)),
                    covered=match,
                )
            )
    return RuleSet(tuple(rules), source=fingerprint(d))


def induce_approximate_rules(d: DecisionTable) -> RuleSet:
    """Possible rules: one per uncovered decision-mixed elementary set,
    with the antecedent shortened while the match stays in the boundary."""
    blocks = _condition_blocks(d)
    index = ElementarySetIndex(d.base, d.conditions)
    dec_codes = d.base.column_codes(d.decision)
    classes = decision_classes(d)
    class_sets = dict(classes)
    class_order = [v for v, _ in classes]
    mixed = [
        blk for blk in index.blocks if len({dec_codes[x] for x in blk}) > 1
    ]
    boundary: frozenset[int] = frozenset()
    for blk in mixed:
        boundary |= blk
    universe = d.universe
    rules: list[Rule] = []
    covered: set[int] = set()
    for granule in mixed:
        if granule <= covered:
            continue
        x0 = min(granule)
        conds = [AVPair(a, d.base.value(x0, a)) for a in d.conditions]
        for pair in reversed(list(conds)):  # drop from the least informative end
            if len(conds) == 1:
                break
            trial = [p for p in conds if p != pair]
            if _intersect(trial, blocks, universe) <= boundary:
                conds = trial
        match = _intersect(conds, blocks, universe)
        observed = {d.decision_value(x) for x in match}
        decisions = tuple(v for v in class_order if v in observed)
        rules.append(
            Rule(
                tuple(conds),
                d.decision,
                decisions,
                metrics=_build_metrics(match, decisions, class_sets, len(conds)),
                covered=match,
            )
        )
        covered |= match
    return RuleSet(tuple(rules), source=fingerprint(d))


def induce_rules(d: DecisionTable) -> RuleSet:
    """All exact rules followed by all approximate rules."""
    exact = induce_exact_rules(d)
    approximate = induce_approximate_rules(d)
    return RuleSet(exact.rules + approximate.rules, source=exact.source)


def rule_metrics(d: DecisionTable, rule: Rule) -> RuleMetrics:
    """Recompute a rule's metrics against a table.

    strength counts matched objects whose decision is among the rule's
    decisions; coverage divides by the size of the union of those decision
    classes (the plain class size for an exact rule).
    """
    match = match_set(d, rule.conditions)
    class_sets = dict(decision_classes(d))
    return _build_metrics(match, rule.decisions, class_sets, len(rule.conditions))


# --- rule set measures -------------------------------------------------------

def decision_support_measure(rs: RuleSet) -> dict[str, int]:
    """Per decision value, how many rules support it."""
    return {
        v: sum(1 for r in rs.rules if v in r.decisions)
        for v in rs.decision_order
    }


def decision_redundancy_factor(rs: RuleSet) -> dict[str, int]:
    """Per decision value, the size of a pairwise-disjoint subfamily of its
    rules' match sets, grown greedily smallest-match-first.

    A lower bound on the true maximum disjoint subfamily; requires rules
    that carry their match sets (i.e. induced from a table, not parsed).
    """
    if any(r.covered is None for r in rs.rules):
        raise ValueError(
            "redundancy needs per-rule match sets; re-induce the rules from "
            "a table to compute it"
        )
    out: dict[str, int] = {}
    for v in rs.decision_order:
        candidates = [r for r in rs.rules if v in r.decisions]
        candidates.sort(key=lambda r: len(r.covered))  # stable: ties keep rule order
        picked: list[frozenset[int]] = []
        for r in candidates:
            if all(not (r.covered & p) for p in picked):
                picked.append(r.covered)
        out[v] = len(picked)
    return out


# --- classification ----------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    """Outcome of matching one object against a rule set."""

    outcome: str  # decided | possible | abstain
    decision: str | None
    possible: tuple[str, ...]
    fired: tuple[Rule, ...]
    fired_indices: tuple[int, ...]


def classify(rs: RuleSet, obj: Mapping[str, str]) -> Classification:
    """Fire all matching rules and resolve the decision.

    Exact rules win by highest summed strength (ties: larger summed support,
    then decision order); if only approximate rules fire the union of their
    decision sets is returned as possible; with no fired rules, abstain.
    """
    required = {p.attribute for r in rs.rules for p in r.conditions}
    missing = sorted(a for a in required if a not in obj)
    if missing:
        raise IncompleteObjectError(
            f"object lacks attribute(s): {', '.join(missing)}"
        )
    fired_indices = tuple(
        i
        for i, r in enumerate(rs.rules)
        if all(obj[p.attribute] == p.value for p in r.conditions)
    )
    fired = tuple(rs.rules[i] for i in fired_indices)
    exact_fired = [r for r in fired if r.kind == EXACT]
    if exact_fired:
        strength: dict[str, int] = {}
        supp: dict[str, int] = {}
        for r in exact_fired:
            if r.metrics is None:
                raise ValueError(f"rule has no metrics to score with: {r}")
            v = r.decisions[0]
            strength[v] = strength.get(v, 0) + r.metrics.strength
            supp[v] = supp.get(v, 0) + r.metrics.support
        rank = {v: i for i, v in enumerate(rs.decision_order)}
        winner = min(strength, key=lambda v: (-strength[v], -supp[v], rank[v]))
        return Classification(DECIDED, winner, (), fired, fired_indices)
    if fired:
        possible = tuple(
            v for v in rs.decision_order if any(v in r.decisions for r in fired)
        )
        return Classification(POSSIBLE, None, possible, fired, fired_indices)
    return Classification(ABSTAIN, None, (), fired, fired_indices)


# --- serialization -----------------------------------------------------------

_METRIC_KEYS = ("len", "sup", "str", "cov")


def format_rule(rule: Rule) -> str:
    """One-line form: `IF a=v AND a=v THEN d=v OR d=v ; len=.. sup=.. str=.. cov=..`"""
    if rule.metrics is None:
        raise ValueError("cannot serialize a rule without metrics")
    m = rule.metrics
    return (
        f"{rule} ; len={m.length} sup={m.support} str={m.strength} cov={m.coverage}"
    )


def dump_rules(rs: RuleSet) -> str:
    """Serialize a rule set, one rule per line, with a source header."""
    lines = []
    if rs.source:
        lines.append(f"# source={rs.source}")
    lines.extend(format_rule(r) for r in rs.rules)
    return "\n".join(lines) + "\n"


def parse_rule(line: str, line_no: int | None = None) -> Rule:
    """Parse one serialized rule line back into a Rule."""

    def fail(msg: str) -> RuleFormatError:
        where = f"rule line {line_no}: " if line_no is not None else ""
        return RuleFormatError(where + msg)

    def split_pair(token: str) -> tuple[str, str]:
        name, sep, value = token.partition("=")
        if not sep or not name or not value:
            raise fail(f"expected name=value, got {token!r}")
        return name, value

    body, sep, metric_text = line.partition(" ; ")
    if not sep:
        raise fail("missing ' ; ' before the metrics")
    if not body.startswith("IF "):
        raise fail("rule must start with 'IF '")
    head, sep, tail = body[3:].partition(" THEN ")
    if not sep:
        raise fail("missing ' THEN '")
    conditions = [AVPair(*split_pair(tok)) for tok in head.split(" AND ")]
    decision_attribute: str | None = None
    decisions: list[str] = []
    for tok in tail.split(" OR "):
        name, value = split_pair(tok)
        if decision_attribute is None:
            decision_attribute = name
        elif name != decision_attribute:
            raise fail(
                f"mixed decision attributes {decision_attribute!r} and {name!r}"
            )
        decisions.append(value)

    fields: dict[str, str] = {}
    for tok in metric_text.split():
        key, value = split_pair(tok)
        if key in fields:
            raise fail(f"duplicate metric {key!r}")
        fields[key] = value
    if sorted(fields) != sorted(_METRIC_KEYS):
        raise fail(f"metrics must be exactly {', '.join(_METRIC_KEYS)}")
    try:
        length = int(fields["len"])
        support = int(fields["sup"])
        strength = int(fields["str"])
        coverage = Fraction(fields["cov"])
    except (ValueError, ZeroDivisionError) as exc:
        raise fail(f"bad metric value ({exc})")
    if length != len(conditions):
        raise fail(f"len={length} but the rule has {len(conditions)} conditions")
    discrimination = Fraction(strength, support) if support else None
    try:
        metrics = RuleMetrics(length, strength, support, coverage, discrimination)
        return Rule(tuple(conditions), decision_attribute, tuple(decisions), metrics)
    except (ValueError, InvalidConditionError) as exc:
        raise fail(str(exc))


def parse_rules(text: str) -> RuleSet:
    """Parse a rule file; `#` comments and blank lines are skipped, a
    `# source=<fingerprint>` header is honored."""
    source = ""
    rules: list[Rule] = []
    decision_attribute: str | None = None
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comment = line[1:].strip()
            if comment.startswith("source="):
                source = comment[len("source="):]
            continue
        rule = parse_rule(line, line_no=n)
        if decision_attribute is None:
            decision_attribute = rule.decision_attribute
        elif rule.decision_attribute != decision_attribute:
            raise RuleFormatError(
                f"rule line {n}: decision attribute {rule.decision_attribute!r} "
                f"differs from {decision_attribute!r}"
            )
        rules.append(rule)
    return RuleSet(tuple(rules), source=source)


def load_rules(source: str | os.PathLike[str] | IO[str]) -> RuleSet:
    """Load a rule file from a path or text stream."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            return parse_rules(fh.read())
    return parse_rules(source.read())
