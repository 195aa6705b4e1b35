#!/usr/bin/env python3
"""Walk through every stage of building one answerable/unanswerable pair."""

from pricetree import (
    CutSpec,
    GenConfig,
    bfs_edges,
    build_tree,
    generate_pair,
    sample_var_values,
    substream,
)

config = GenConfig(
    num_vars=6,
    ans_depth=4,
    cut_depth=2,
    composite_name=False,
    order="forward",
    corpus_seed=20240501,
)

# the same sub-stream the pipeline will use for pair #0
rng = substream(config.corpus_seed, 0)

print("== hidden prices ==")
values = sample_var_values(config.num_vars, rng)
for var, price in values.items():
    print(f"  x{var} = {price} dollars")

print("\n== tree ==")
tree = build_tree(config.num_vars, config.ans_depth, rng)
for var in range(1, tree.num_vars + 1):
    parent = tree.parent_of(var)
    print(f"  x{var} hangs off {'root' if parent == 0 else f'x{parent}'}")
print(f"  questioned variable: x{config.ans_depth} (end of the root path)")

print("\n== breadth-first edges (condition order before shuffling) ==")
for edge in bfs_edges(tree):
    print(f"  ({'root' if edge.parent == 0 else f'x{edge.parent}'}, x{edge.child})")

cut = CutSpec(ans_depth=config.ans_depth, cut_depth=config.cut_depth)
print(f"\n== the cut removes the edge whose child is x{cut.cut_child} ==")

# now the full pipeline, same seed, both variants
answerable, unanswerable = generate_pair(config, 0)

print("\n== answerable problem ==")
print(answerable.full_text)
print(f"\ngold answer: {answerable.gold_answer}")
print(f"gold solution: {answerable.gold_solution_text}")

print("\n== unanswerable twin (one sentence gone) ==")
print(unanswerable.full_text)
print(f"\ngold solution: {unanswerable.gold_solution_text}")

struck = set(answerable.condition_sentences) - set(unanswerable.condition_sentences)
print(f"\nstruck sentence: {struck.pop()!r}")
