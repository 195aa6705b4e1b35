"""Command-line interface.

Subcommands: generate, verify, render, eval, report.  Every command exits
nonzero on any failure, including certification failures, so the CLI is
safe to use as a pipeline gate.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .corpus_io import load_gen_config, read_dataset, write_dataset
from .errors import PricetreeError
from .formulas import RootValue
from .harness.prompts import load_profile
from .harness.report import write_report
from .harness.scoring import read_records, run_eval, write_records
from .harness.transport import make_transport
from .oracle import solve_exact, verify_instance
from .pipeline import (
    PRESET_NAMES,
    ProblemInstance,
    cell_label,
    generate_corpus,
    preset,
)
from .tree import ROOT


def _cmd_generate(args: argparse.Namespace) -> int:
    if args.preset:
        configs = preset(args.preset, corpus_seed=args.seed, count=args.count or 500)
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        for config in configs:
            dataset = generate_corpus(config)
            path = out_dir / f"{cell_label(config)}.jsonl"
            write_dataset(dataset, path)
            print(f"wrote {len(dataset.instances)} instances to {path}")
        return 0
    config = load_gen_config(args.config)
    overrides = {}
    if args.seed is not None:
        overrides["corpus_seed"] = args.seed
    if args.count is not None:
        overrides["count"] = args.count
    if overrides:
        config = dataclasses.replace(config, **overrides)
    dataset = generate_corpus(config)
    write_dataset(dataset, args.out)
    print(f"wrote {len(dataset.instances)} instances to {args.out}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    dataset = read_dataset(args.input)
    failures = 0
    path_disagreements = 0
    for instance in dataset.instances:
        report = verify_instance(instance)
        if not report.label_confirmed:
            failures += 1
            print(f"FAIL {instance.id}: {report.failure}")
        elif report.path_solver_agrees is False:
            path_disagreements += 1
            print(f"FAIL {instance.id}: path solver disagrees with elimination")
    total = len(dataset.instances)
    print(
        f"certified {total - failures - path_disagreements}/{total} instances "
        f"({failures} label failures, {path_disagreements} solver disagreements)"
    )
    return 1 if failures or path_disagreements else 0


def _render_tree(instance: ProblemInstance) -> list[str]:
    children: dict[int, list[int]] = {}
    for f in instance.formulas:
        parent = ROOT if isinstance(f, RootValue) else f.parent
        children.setdefault(parent, []).append(f.child_var)

    def describe(var: int) -> str:
        name = instance.item_map.names[var].display
        det = solve_exact(list(instance.formulas), var)
        price = f"{det.value} dollars" if det.is_unique else det.kind
        mark = "  <- questioned" if var == instance.questioned_var else ""
        return f"x{var} ({name}): {price}{mark}"

    lines = ["root"]
    seen: set[int] = set()

    def walk(node: int, prefix: str) -> None:
        kids = sorted(children.get(node, []))
        for i, child in enumerate(kids):
            seen.add(child)
            last = i == len(kids) - 1
            lines.append(f"{prefix}{'`-' if last else '|-'} {describe(child)}")
            walk(child, prefix + ("   " if last else "|  "))

    walk(ROOT, "")
    # a cut instance is a forest: show subtrees detached from the root too
    for var in sorted(v for v in children if v != ROOT):
        if var in seen:
            continue
        seen.add(var)
        lines.append(f"(detached) {describe(var)}")
        walk(var, "   ")
    return lines


def _cmd_render(args: argparse.Namespace) -> int:
    dataset = read_dataset(args.input)
    try:
        instance = dataset.by_id(args.id)
    except KeyError:
        print(f"no instance with id {args.id!r} in {args.input}", file=sys.stderr)
        return 1
    print(f"id: {instance.id}  variant: {instance.variant}")
    print()
    print(instance.full_text)
    print()
    print("\n".join(_render_tree(instance)))
    print()
    if instance.gold_answer is not None:
        print(f"gold answer: {instance.gold_answer}")
    print(f"gold solution: {instance.gold_solution_text}")
    report = verify_instance(instance)
    status = "confirmed" if report.label_confirmed else f"FAILED ({report.failure})"
    print(
        f"certification: {status}; component {report.component_size} variables / "
        f"{report.equation_count} formulas"
    )
    return 0 if report.label_confirmed else 1


def _cmd_eval(args: argparse.Namespace) -> int:
    dataset = read_dataset(args.input)
    profile = load_profile(args.profile)
    pool = read_dataset(args.pool) if args.pool else None
    transport = make_transport(args.transport, profile, dataset)
    records = run_eval(
        dataset, profile, args.mode, transport, pool=pool, eval_seed=args.seed
    )
    write_records(records, args.out)
    excluded = sum(1 for r in records if r.transport_failed)
    print(f"wrote {len(records)} records to {args.out} ({excluded} transport failures)")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    records = read_records(args.input)
    group_by = [key.strip() for key in args.group.split(",") if key.strip()]
    table = write_report(records, group_by, args.out)
    print((Path(args.out) / "metrics.txt").read_text(encoding="utf-8"), end="")
    print(f"report written to {args.out} ({len(table.cells)} cells)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pricetree",
        description="Generate, certify and evaluate paired answerable/unanswerable "
        "price word problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a certified corpus")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", help="flat JSON config file")
    source.add_argument("--preset", choices=PRESET_NAMES, help="named configuration grid")
    p.add_argument("--out", required=True, help="output JSONL path (a directory for presets)")
    p.add_argument("--seed", type=int, default=None, help="corpus seed")
    p.add_argument("--count", type=int, default=None, help="pairs per configuration")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("verify", help="re-certify every instance of a corpus")
    p.add_argument("--in", dest="input", required=True, help="corpus JSONL")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("render", help="pretty-print one instance")
    p.add_argument("--in", dest="input", required=True, help="corpus JSONL")
    p.add_argument("--id", required=True, help="instance id")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("eval", help="query a model over a corpus and score the answers")
    p.add_argument("--in", dest="input", required=True, help="corpus JSONL")
    p.add_argument("--profile", required=True, help="model profile JSON")
    p.add_argument("--mode", choices=("zero", "few"), required=True)
    p.add_argument("--pool", default=None, help="held-out corpus for few-shot exemplars")
    p.add_argument(
        "--transport",
        required=True,
        help="live | replay:<file> | mock:<unknown|five|gold>",
    )
    p.add_argument("--out", required=True, help="output records JSONL")
    p.add_argument("--seed", type=int, default=0, help="seed for few-shot exemplar draws")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("report", help="aggregate scored records into tables and CSV series")
    p.add_argument("--in", dest="input", required=True, help="records JSONL")
    p.add_argument("--group", required=True, help="comma-separated grouping keys, e.g. ansDepth")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PricetreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
