"""Batch command-line interface.

Five subcommands, one per analysis: `inspect`, `approx`, `reducts`, `rules`,
`classify`. Each reads CSV tables (with an optional `<table>.cfg` sidecar
naming the decision and id columns), prints a deterministic text report, and
prints the same figures as JSON under `--json` (or ROUGHSETS_OUTPUT=json).

Exit codes: 0 success, 2 parse/I-O errors, 3 semantic errors (unknown
attribute, class, or column), 4 capacity refusals from the reduct search.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import approximation, indiscernibility, reducts, rules
from .errors import (
    CapacityError,
    IncompleteObjectError,
    RoughSetError,
    RuleFormatError,
    SchemaError,
    TableParseError,
)
from .report import (
    Report,
    fmt_attrs,
    fmt_objects,
    object_labels,
    ratio_json,
    ratio_text,
)
from .tables import (
    DecisionTable,
    fingerprint,
    load_information_table,
    load_sidecar_config,
    sidecar_path,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SEMANTIC = 3
EXIT_CAPACITY = 4

OUTPUT_ENV = "ROUGHSETS_OUTPUT"


def _sidecar_options(path: str) -> dict[str, str]:
    candidate = sidecar_path(path)
    if candidate.exists():
        return load_sidecar_config(candidate)
    return {}


def _load_table(args, *, path: str):
    options = _sidecar_options(path)
    id_column = getattr(args, "id_col", None) or options.get("id")
    return load_information_table(path, id_column=id_column), options


def _load_decision_table(args, *, path: str) -> DecisionTable:
    table, options = _load_table(args, path=path)
    decision = getattr(args, "decision", None) or options.get("decision")
    if not decision:
        raise SchemaError(
            "no decision column named; pass --decision or add a sidecar config"
        )
    return DecisionTable(table, decision)


def _table_header(path: str, table) -> tuple[dict, list[str]]:
    payload = {
        "path": path,
        "fingerprint": fingerprint(table),
        "objects": table.n_objects,
    }
    lines = [
        f"table: {path}",
        f"fingerprint: {payload['fingerprint']}",
        f"objects: {table.n_objects}",
    ]
    return payload, lines


def cmd_inspect(args) -> Report:
    table, _ = _load_table(args, path=args.table)
    head, lines = _table_header(args.table, table)
    head["attributes"] = table.n_attributes
    lines.append(f"attributes: {table.n_attributes}")
    domains = []
    for name in table.attributes:
        values = list(table.value_domain(name))
        domains.append({"attribute": name, "values": values})
        lines.append(f"  {name}: {', '.join(values)}")
    duplicates = [
        blk
        for blk in indiscernibility.partition(table, table.attributes)
        if len(blk) > 1
    ]
    groups = [object_labels(table, blk) for blk in duplicates]
    if groups:
        lines.append(
            "duplicate rows: " + " ".join(fmt_objects(table, blk) for blk in duplicates)
        )
    else:
        lines.append("duplicate rows: none")
    payload = {
        "command": "inspect",
        "table": head,
        "domains": domains,
        "duplicate_groups": groups,
    }
    return Report(payload, lines)


def cmd_approx(args) -> Report:
    d = _load_decision_table(args, path=args.table)
    classes = dict(approximation.decision_classes(d))
    if args.cls not in classes:
        raise SchemaError(
            f"unknown class value {args.cls!r} for decision {d.decision!r}"
        )
    attrs = args.attrs.split(",") if args.attrs else None
    target = classes[args.cls]
    names = attrs if attrs is not None else d.conditions
    result = approximation.regions(d.base, target, names)
    # regions() canonicalized the attribute order for us
    head, lines = _table_header(args.table, d.base)
    head["decision"] = d.decision
    lines.append(f"decision: {d.decision}")
    lines.append(
        f"class: {d.decision}={args.cls}  members {fmt_objects(d, target)}  "
        f"size {len(target)}"
    )
    lines.append(f"attributes: {', '.join(result.attributes)}")
    for part in ("lower", "upper", "boundary", "negative"):
        members = getattr(result, part)
        lines.append(f"{part}: {fmt_objects(d, members)}  size {len(members)}")
    lines.append(f"accuracy: {ratio_text(result.accuracy)}")
    lines.append(f"definability: {result.category}")
    payload = {
        "command": "approx",
        "table": head,
        "class": {
            "attribute": d.decision,
            "value": args.cls,
            "members": object_labels(d, target),
            "size": len(target),
        },
        "attributes": list(result.attributes),
        "regions": {
            part: {
                "members": object_labels(d, getattr(result, part)),
                "size": len(getattr(result, part)),
            }
            for part in ("lower", "upper", "boundary", "negative")
        },
        "accuracy": ratio_json(result.accuracy),
        "definability": result.category,
    }
    return Report(payload, lines)


def cmd_reducts(args) -> Report:
    options = _sidecar_options(args.table)
    decision = args.decision or options.get("decision")
    id_column = args.id_col or options.get("id")
    table = load_information_table(args.table, id_column=id_column)
    if decision:
        found = reducts.find_decision_reducts(
            DecisionTable(table, decision), max_attributes=args.cap
        )
    else:
        found = reducts.find_reducts(table, max_attributes=args.cap)
    head, lines = _table_header(args.table, table)
    lines.append(f"mode: {found.mode}")
    lines.append(f"reducts: {len(found.reducts)}")
    lines.extend(f"  {fmt_attrs(r)}" for r in found.reducts)
    lines.append(f"core: {fmt_attrs(found.core)}")
    payload = {
        "command": "reducts",
        "table": head,
        "mode": found.mode,
        "count": len(found.reducts),
        "reducts": [list(r) for r in found.reducts],
        "core": list(found.core),
    }
    return Report(payload, lines)


def _rule_entry(d: DecisionTable, number: int, rule: rules.Rule) -> dict:
    m = rule.metrics
    return {
        "id": number,
        "kind": rule.kind,
        "text": rules.format_rule(rule),
        "conditions": [{"attribute": p.attribute, "value": p.value} for p in rule.conditions],
        "decisions": list(rule.decisions),
        "match": object_labels(d, rule.covered),
        "metrics": {
            "length": m.length,
            "support": m.support,
            "strength": m.strength,
            "coverage": ratio_json(m.coverage),
            "discrimination": ratio_json(m.discrimination),
        },
    }


def cmd_rules(args) -> Report:
    d = _load_decision_table(args, path=args.table)
    rule_set = rules.induce_rules(d)
    positive = approximation.positive_region(d)
    factor = approximation.consistency_factor(d)
    dsm = rules.decision_support_measure(rule_set)
    drf = rules.decision_redundancy_factor(rule_set)

    head, lines = _table_header(args.table, d.base)
    head["decision"] = d.decision
    head["conditions"] = list(d.conditions)
    lines.append(f"decision: {d.decision}")
    lines.append(f"conditions: {', '.join(d.conditions)}")
    lines.append(
        f"positive region: {fmt_objects(d, positive)}  size {len(positive)} "
        f"of {d.n_objects}"
    )
    lines.append(f"consistency factor: {ratio_text(factor)}")
    lines.append(f"deterministic: {'yes' if factor == 1 else 'no'}")

    exact = [r for r in rule_set.rules if r.kind == rules.EXACT]
    approx = [r for r in rule_set.rules if r.kind == rules.APPROXIMATE]
    entries = [_rule_entry(d, i + 1, r) for i, r in enumerate(rule_set.rules)]
    lines.append(f"exact rules: {len(exact)}")
    for entry in entries[: len(exact)]:
        lines.append(f"  [{entry['id']}] {entry['text']}")
        dl = entry["metrics"]["discrimination"]
        dl_text = "undefined" if dl is None else ratio_text(
            rules.Fraction(dl["num"], dl["den"])
        )
        lines.append(
            f"      match {{{','.join(entry['match'])}}}  discrimination {dl_text}"
        )
    lines.append(f"approximate rules: {len(approx)}")
    for entry in entries[len(exact):]:
        lines.append(f"  [{entry['id']}] {entry['text']}")
        dl = entry["metrics"]["discrimination"]
        dl_text = "undefined" if dl is None else ratio_text(
            rules.Fraction(dl["num"], dl["den"])
        )
        lines.append(
            f"      match {{{','.join(entry['match'])}}}  discrimination {dl_text}"
        )
    lines.append(
        "decision support: "
        + " ".join(f"{v}={dsm[v]}" for v in rule_set.decision_order)
    )
    lines.append(
        "decision redundancy: "
        + " ".join(f"{v}={drf[v]}" for v in rule_set.decision_order)
    )

    payload = {
        "command": "rules",
        "table": head,
        "consistency": {
            "positive_region": object_labels(d, positive),
            "positive_size": len(positive),
            "objects": d.n_objects,
            "factor": ratio_json(factor),
            "deterministic": factor == 1,
        },
        "exact_count": len(exact),
        "approximate_count": len(approx),
        "rules": entries,
        "decision_support": dsm,
        "decision_redundancy": drf,
    }

    if args.out:
        Path(args.out).write_text(rules.dump_rules(rule_set), encoding="utf-8")
        lines.append(f"wrote rules to {args.out}")
        payload["out"] = args.out
    return Report(payload, lines)


def cmd_classify(args) -> Report:
    rule_set = rules.load_rules(args.rules)
    options = _sidecar_options(args.objects)
    id_column = args.id_col or options.get("id")
    table = load_information_table(args.objects, id_column=id_column)
    referenced = {p.attribute for r in rule_set.rules for p in r.conditions}
    missing = sorted(referenced - set(table.attributes))
    if missing:
        raise IncompleteObjectError(
            f"objects file lacks attribute column(s): {', '.join(missing)}"
        )
    results = []
    lines = []
    for x in range(table.n_objects):
        obj = dict(zip(table.attributes, table.row(x)))
        outcome = rules.classify(rule_set, obj)
        fired = [i + 1 for i in outcome.fired_indices]
        label = table.labels[x]
        if outcome.outcome == rules.DECIDED:
            text = outcome.decision
        elif outcome.outcome == rules.POSSIBLE:
            text = "possible{" + ",".join(outcome.possible) + "}"
        else:
            text = "abstain"
        suffix = f"  (rules {','.join(str(i) for i in fired)})" if fired else ""
        lines.append(f"{label}: {text}{suffix}")
        results.append(
            {
                "object": label,
                "outcome": outcome.outcome,
                "decision": outcome.decision,
                "possible": list(outcome.possible),
                "fired": fired,
            }
        )
    payload = {
        "command": "classify",
        "rules": args.rules,
        "objects": args.objects,
        "results": results,
    }
    return Report(payload, lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roughsets",
        description="Rough set analysis of categorical CSV tables.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json", action="store_true", help="emit the report as JSON"
    )
    common.add_argument(
        "--id-col", metavar="NAME", help="column holding display labels"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inspect", parents=[common], help="table dimensions and domains")
    p.add_argument("table")
    p.set_defaults(handler=cmd_inspect)

    p = sub.add_parser("approx", parents=[common], help="approximate one decision class")
    p.add_argument("table")
    p.add_argument("--decision", metavar="NAME")
    p.add_argument("--class", dest="cls", required=True, metavar="VALUE")
    p.add_argument("--attrs", metavar="LIST", help="comma-separated attribute subset")
    p.set_defaults(handler=cmd_approx)

    p = sub.add_parser("reducts", parents=[common], help="enumerate reducts and the core")
    p.add_argument("table")
    p.add_argument("--decision", metavar="NAME")
    p.add_argument("--cap", type=int, default=reducts.DEFAULT_CAP,
                   help="exhaustive search cap on attribute count")
    p.set_defaults(handler=cmd_reducts)

    p = sub.add_parser("rules", parents=[common], help="induce decision rules")
    p.add_argument("table")
    p.add_argument("--decision", metavar="NAME")
    p.add_argument("--out", metavar="FILE", help="also write the rule file")
    p.set_defaults(handler=cmd_rules)

    p = sub.add_parser("classify", parents=[common], help="classify objects with a rule file")
    p.add_argument("rules")
    p.add_argument("objects")
    p.set_defaults(handler=cmd_classify)
    return parser


def _wants_json(args) -> bool:
    if args.json:
        return True
    mode = os.environ.get(OUTPUT_ENV, "text")
    if mode not in ("text", "json"):
        raise SchemaError(
            f"{OUTPUT_ENV} must be 'text' or 'json', not {mode!r}"
        )
    return mode == "json"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.handler(args)
        print(report.render(_wants_json(args)))
        return EXIT_OK
    except (TableParseError, RuleFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except RoughSetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


def run() -> None:
    raise SystemExit(main())
