"""Random rooted trees of price variables.

Variables are numbered 1..num_vars; the reserved root is node 0.  The path
root -> x1 -> ... -> x_ans_depth (the spine) is fixed first, and the
questioned variable is x_ans_depth.  Remaining variables attach uniformly
to any node created before them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidConfigError
from .rng import PcgStream

ROOT = 0

PRICE_MIN = 5
PRICE_MAX = 15


@dataclass(frozen=True)
class Edge:
    parent: int  # ROOT or a variable index
    child: int  # always a variable index


@dataclass(frozen=True, eq=True)
class Tree:
    num_vars: int
    ans_depth: int
    parent: tuple[int, ...]  # parent[i-1] is the parent node of x_i

    def parent_of(self, var: int) -> int:
        return self.parent[var - 1]

    def children_of(self, node: int) -> list[int]:
        return [i + 1 for i, p in enumerate(self.parent) if p == node]


def sample_var_values(num_vars: int, rng: PcgStream) -> dict[int, int]:
    """Hidden whole-dollar price per variable, uniform over [5, 15]."""
    if num_vars < 2:
        raise InvalidConfigError(f"num_vars must be >= 2, got {num_vars}")
    return {i: rng.int_between(PRICE_MIN, PRICE_MAX) for i in range(1, num_vars + 1)}


def build_tree(
    num_vars: int,
    ans_depth: int,
    rng: PcgStream,
    allow_root_extras: bool = True,
) -> Tree:
    """Spine first, then each extra variable picks a uniformly random parent.

    `allow_root_extras` controls whether the root is a candidate parent for
    the extra variables; extras attached to the root get a direct value
    sentence instead of a two-item relation.
    """
    if ans_depth < 2:
        raise InvalidConfigError(f"ans_depth must be >= 2, got {ans_depth}")
    if num_vars < ans_depth:
        raise InvalidConfigError(
            f"num_vars must be >= ans_depth, got num_vars={num_vars} ans_depth={ans_depth}"
        )
    parent = [ROOT] + [i - 1 for i in range(2, ans_depth + 1)]
    for i in range(ans_depth + 1, num_vars + 1):
        first = ROOT if allow_root_extras else 1
        candidates = list(range(first, i))
        parent.append(rng.pick(candidates))
    return Tree(num_vars=num_vars, ans_depth=ans_depth, parent=tuple(parent))


def bfs_edges(tree: Tree) -> list[Edge]:
    """All edges in breadth-first order from the root.

    Siblings are visited in ascending variable index, so the list always has
    the prefix property: an edge's parent is the root or appeared earlier as
    a child.  Scanning the list left to right therefore meets at most one
    new variable per edge.
    """
    edges: list[Edge] = []
    queue = [ROOT]
    while queue:
        node = queue.pop(0)
        for child in tree.children_of(node):
            edges.append(Edge(parent=node, child=child))
            queue.append(child)
    return edges
