#!/usr/bin/env python3
"""The shipped configuration grids, and what a live measurement takes.

Each preset is a list of fully specified generation configs with derived
per-cell seeds.  A credentialed run is: generate each cell, eval with a
live profile, report grouped by the swept keys.
"""

from pricetree import cell_label, preset

for name, group_keys in [
    ("table-main", "ansDepth"),
    ("fig-structure", "ansDepth,numVars,compositeName"),
    ("fig-cutdepth", "ansDepth,cutDepth"),
]:
    cells = preset(name, corpus_seed=0, count=500)
    print(f"== preset {name}: {len(cells)} cells x {cells[0].count} pairs ==")
    for config in cells:
        print(
            f"  {cell_label(config):32s} seed={config.corpus_seed}"
        )
    print(f"  report grouping: --group {group_keys}\n")

print(
    "live run recipe, per cell:\n"
    "  pricetree generate --preset <name> --out grid/ --seed <n>\n"
    "  pricetree eval --in grid/<cell>.jsonl --profile profile.json \\\n"
    "      --mode zero --transport live --out records/<cell>.jsonl\n"
    "  pricetree report --in records/<cell>.jsonl --group <keys> --out report/<cell>\n"
    "\n"
    "the resulting hallucination rates are a property of the queried model;\n"
    "nothing in this repository predicts them"
)
