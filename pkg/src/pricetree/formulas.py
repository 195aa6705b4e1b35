"""Linear price constraints sampled for tree edges, plus the cut.

A root edge pins a variable to its hidden value.  Any other edge (x_i, x_j)
becomes ``a*x_i + b*x_j = a*v_i + b*v_j`` with a, b drawn from the nonzero
integers in [-3, 3], so every formula is satisfied exactly by the hidden
values.  Removing the spine formula whose child sits `cut_depth` steps above
the questioned variable makes that variable underdetermined.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import InvalidConfigError
from .rng import PcgStream
from .tree import ROOT, Edge

COEFFICIENT_CHOICES = (-3, -2, -1, 1, 2, 3)

CONDITION_ORDERS = ("forward", "backward", "random")


@dataclass(frozen=True)
class RootValue:
    """Direct unit-price statement for one variable: x_var = value."""

    var: int
    value: int

    @property
    def child_var(self) -> int:
        return self.var

    def variables(self) -> tuple[int, ...]:
        return (self.var,)

    def holds_for(self, values: dict[int, int]) -> bool:
        return values[self.var] == self.value


@dataclass(frozen=True)
class Linear:
    """Two-variable relation: parent_coeff*x_parent + child_coeff*x_child = rhs."""

    parent: int
    child: int
    parent_coeff: int
    child_coeff: int
    rhs: int

    @property
    def child_var(self) -> int:
        return self.child

    def variables(self) -> tuple[int, ...]:
        return (self.parent, self.child)

    def holds_for(self, values: dict[int, int]) -> bool:
        return self.parent_coeff * values[self.parent] + self.child_coeff * values[self.child] == self.rhs


Formula = Union[RootValue, Linear]


@dataclass(frozen=True)
class CutSpec:
    """Which spine edge to drop: the one whose child is x_(ans_depth - cut_depth)."""

    ans_depth: int
    cut_depth: int

    def __post_init__(self) -> None:
        if not 1 <= self.cut_depth < self.ans_depth:
            raise InvalidConfigError(
                f"cut_depth must satisfy 1 <= cut_depth < ans_depth, "
                f"got cut_depth={self.cut_depth} ans_depth={self.ans_depth}"
            )

    @property
    def cut_child(self) -> int:
        """Child endpoint of the removed edge (x_0 being the root)."""
        return self.ans_depth - self.cut_depth


def apply_cut(edges: list[Edge], cut: CutSpec) -> list[Edge]:
    """Drop exactly the cut spine edge, preserving the order of the rest."""
    child = cut.cut_child
    kept = [e for e in edges if e.child != child]
    if len(kept) != len(edges) - 1:
        raise InvalidConfigError(f"edge with child x{child} not found or not unique")
    (removed,) = [e for e in edges if e.child == child]
    if removed.parent != child - 1:  # spine parent of x_c is x_(c-1), with x_0 = root
        raise InvalidConfigError(
            f"cut edge ({removed.parent}, {removed.child}) is not on the spine"
        )
    return kept


def sample_formula(edge: Edge, values: dict[int, int], rng: PcgStream) -> Formula:
    """Concrete formula for one edge; root edges consume no draws."""
    if edge.parent == ROOT:
        return RootValue(var=edge.child, value=values[edge.child])
    a = rng.pick(COEFFICIENT_CHOICES)
    b = rng.pick(COEFFICIENT_CHOICES)
    rhs = a * values[edge.parent] + b * values[edge.child]
    return Linear(parent=edge.parent, child=edge.child, parent_coeff=a, child_coeff=b, rhs=rhs)


def order_formulas(formulas: list[Formula], order: str, rng: PcgStream) -> list[Formula]:
    """Arrange the condition list; only "random" consumes draws."""
    if order == "forward":
        return list(formulas)
    if order == "backward":
        return list(reversed(formulas))
    if order == "random":
        perm = rng.permutation(len(formulas))
        return [formulas[i] for i in perm]
    raise InvalidConfigError(f"order must be one of {CONDITION_ORDERS}, got {order!r}")
