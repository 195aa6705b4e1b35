"""Test-only inverse of the sentence templates.

Given a rendered condition sentence and the instance's item map, recover
the linear constraint it encodes.  A sentence cannot encode which endpoint
of an edge was the parent, nor a global sign of the equation, so recovery
is up to those two symmetries; `canonical` maps both the parsed constraint
and the source formula onto the same normal form before comparison.
"""

from __future__ import annotations

import re
from fractions import Fraction

from pricetree.formulas import Formula, Linear, RootValue
from pricetree.wording import ItemMap


def _phrase_table(items: ItemMap) -> dict[str, tuple[int, int]]:
    """Every quantity phrase the templates can emit, lowercased article."""
    phrases: dict[str, tuple[int, int]] = {}
    for var, item in items.names.items():
        phrases[f"{item.article} {item.display}"] = (var, 1)
        for n in (2, 3):
            phrases[f"{n} {item.display_plural}"] = (var, n)
    return phrases


def _phrase_regex(phrases: dict[str, tuple[int, int]]) -> str:
    ordered = sorted(phrases, key=len, reverse=True)
    return "(?:" + "|".join(re.escape(p) for p in ordered) + ")"


def parse_sentence(sentence: str, items: ItemMap):
    """Parse one condition sentence into ("root", var, value) or a linear triple.

    Linear results are ((n1, v1), (n2, v2), rhs) meaning n1*x_v1 + n2*x_v2 = rhs.
    Raises ValueError if no template matches.
    """
    phrases = _phrase_table(items)
    ph = _phrase_regex(phrases)
    text = sentence[0].lower() + sentence[1:]

    m = re.fullmatch(
        rf"the price of (?P<q1>{ph}) is the same as the price of (?P<q2>{ph})", text
    )
    if m:
        (v1, n1), (v2, n2) = phrases[m["q1"]], phrases[m["q2"]]
        return ((n1, v1), (-n2, v2), 0)

    m = re.fullmatch(
        rf"(?P<q1>{ph}) costs? (?P<amt>\d+) dollars more than (?P<q2>{ph})", text
    )
    if m:
        (v1, n1), (v2, n2) = phrases[m["q1"]], phrases[m["q2"]]
        return ((n1, v1), (-n2, v2), int(m["amt"]))

    m = re.fullmatch(
        rf"(?P<q1>{ph}) costs? (?P<amt>\d+) dollars less than (?P<q2>{ph})", text
    )
    if m:
        (v1, n1), (v2, n2) = phrases[m["q1"]], phrases[m["q2"]]
        return ((n2, v2), (-n1, v1), int(m["amt"]))

    m = re.fullmatch(rf"(?P<q1>{ph}) and (?P<q2>{ph}) cost (?P<amt>\d+) dollars", text)
    if m:
        (v1, n1), (v2, n2) = phrases[m["q1"]], phrases[m["q2"]]
        return ((n1, v1), (n2, v2), int(m["amt"]))

    m = re.fullmatch(rf"(?P<q1>{ph}) costs (?P<amt>\d+) dollars", text)
    if m:
        var, n = phrases[m["q1"]]
        if n != 1:
            raise ValueError(f"direct value sentence with quantity {n}: {sentence!r}")
        return ("root", var, int(m["amt"]))

    raise ValueError(f"no template matches: {sentence!r}")


def canonical(parsed_or_formula):
    """Normal form shared by parses and formulas: sorted terms, positive lead."""
    if isinstance(parsed_or_formula, RootValue):
        return ("root", parsed_or_formula.var, Fraction(parsed_or_formula.value))
    if isinstance(parsed_or_formula, Linear):
        f = parsed_or_formula
        terms = ((f.parent_coeff, f.parent), (f.child_coeff, f.child))
        rhs = f.rhs
    elif parsed_or_formula[0] == "root":
        _, var, value = parsed_or_formula
        return ("root", var, Fraction(value))
    else:
        (c1, v1), (c2, v2), rhs = parsed_or_formula
        terms = ((c1, v1), (c2, v2))
    (c1, v1), (c2, v2) = sorted(terms, key=lambda t: t[1])
    if c1 < 0:
        c1, c2, rhs = -c1, -c2, -rhs
    return ("linear", (v1, Fraction(c1)), (v2, Fraction(c2)), Fraction(rhs))


def roundtrips(formula: Formula, sentence: str, items: ItemMap) -> bool:
    return canonical(parse_sentence(sentence, items)) == canonical(formula)
