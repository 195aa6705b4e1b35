"""Item naming and sentence templates.

Variables are mapped injectively to display names (optionally composite,
"<dish> at <restaurant>"), formulas become one sentence each via fixed
templates, and gold solutions are rendered as either a spine-walk narrative
(answerable) or an information-count argument (unanswerable).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .errors import CertificationError, InvalidConfigError
from .formulas import Formula, Linear, RootValue
from .oracle import UNDERDETERMINED, Determination, constraint_component
from .rng import PcgStream

# ---------------------------------------------------------------------------
# Vocabulary
# ---------------------------------------------------------------------------

VOWELS = "aeiou"


@dataclass(frozen=True)
class Dish:
    singular: str
    plural: str


DEFAULT_DISHES = (
    Dish("burger", "burgers"),
    Dish("scrambled egg", "scrambled eggs"),
    Dish("BLT sandwich", "BLT sandwiches"),
    Dish("pie", "pies"),
    Dish("Greek salad", "Greek salads"),
    Dish("piece of cheese cake", "pieces of cheese cake"),
    Dish("fruit tart", "fruit tarts"),
    Dish("lasagna", "lasagnas"),
    Dish("pizza", "pizzas"),
)

DEFAULT_RESTAURANTS = (
    "Urban Plate",
    "Taste Good Cuisine",
    "Texas BBQ",
    "Bistro Nice",
    "Mike's Place",
)


@dataclass(frozen=True)
class Vocabulary:
    dishes: tuple[Dish, ...]
    restaurants: tuple[str, ...]

    @classmethod
    def default(cls) -> "Vocabulary":
        return cls(dishes=DEFAULT_DISHES, restaurants=DEFAULT_RESTAURANTS)


def load_dishes(path: str | Path) -> tuple[Dish, ...]:
    """One dish per line as "singular|plural"; plural defaults to singular+"s"."""
    dishes = []
    seen = set()
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line:
            continue
        singular, sep, plural = line.partition("|")
        singular = singular.strip()
        plural = plural.strip() if sep else singular + "s"
        if singular in seen:
            raise InvalidConfigError(f"duplicate dish entry {singular!r} in {path}")
        seen.add(singular)
        dishes.append(Dish(singular, plural))
    if not dishes:
        raise InvalidConfigError(f"no dish entries in {path}")
    return tuple(dishes)


def load_restaurants(path: str | Path) -> tuple[str, ...]:
    """One restaurant display name per line."""
    names = []
    seen = set()
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line:
            continue
        if line in seen:
            raise InvalidConfigError(f"duplicate restaurant entry {line!r} in {path}")
        seen.add(line)
        names.append(line)
    if not names:
        raise InvalidConfigError(f"no restaurant entries in {path}")
    return tuple(names)


def load_vocabulary(dish_path: Optional[str], restaurant_path: Optional[str]) -> Vocabulary:
    return Vocabulary(
        dishes=load_dishes(dish_path) if dish_path else DEFAULT_DISHES,
        restaurants=load_restaurants(restaurant_path) if restaurant_path else DEFAULT_RESTAURANTS,
    )


# ---------------------------------------------------------------------------
# Item assignment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ItemName:
    dish: str
    plural: str
    restaurant: Optional[str] = None

    @property
    def display(self) -> str:
        return f"{self.dish} at {self.restaurant}" if self.restaurant else self.dish

    @property
    def display_plural(self) -> str:
        return f"{self.plural} at {self.restaurant}" if self.restaurant else self.plural

    @property
    def article(self) -> str:
        return "an" if self.dish[0].lower() in VOWELS else "a"


@dataclass(frozen=True)
class ItemMap:
    names: dict[int, ItemName]
    composite: bool


def assign_items(num_vars: int, composite: bool, vocab: Vocabulary, rng: PcgStream) -> ItemMap:
    """Injective uniform draw of display names for x1..x_num_vars."""
    if composite:
        pool = len(vocab.dishes) * len(vocab.restaurants)
        if num_vars > pool:
            raise InvalidConfigError(
                f"composite naming needs at least {num_vars} dish/restaurant pairs, "
                f"vocabulary offers {pool}"
            )
        picks = rng.distinct_indices(pool, num_vars)
        names = {}
        for var, k in enumerate(picks, start=1):
            dish = vocab.dishes[k // len(vocab.restaurants)]
            restaurant = vocab.restaurants[k % len(vocab.restaurants)]
            names[var] = ItemName(dish.singular, dish.plural, restaurant)
    else:
        if num_vars > len(vocab.dishes):
            raise InvalidConfigError(
                f"simple naming needs at least {num_vars} dishes, "
                f"vocabulary offers {len(vocab.dishes)}"
            )
        picks = rng.distinct_indices(len(vocab.dishes), num_vars)
        names = {
            var: ItemName(vocab.dishes[k].singular, vocab.dishes[k].plural)
            for var, k in enumerate(picks, start=1)
        }
    return ItemMap(names=names, composite=composite)


# ---------------------------------------------------------------------------
# Sentence templates
# ---------------------------------------------------------------------------

PHRASING_MORE = "more"
PHRASING_LESS = "less"


def _quantity(count: int, item: ItemName, capitalize: bool = False) -> str:
    if count == 1:
        article = item.article.capitalize() if capitalize else item.article
        return f"{article} {item.display}"
    return f"{count} {item.display_plural}"


def _cost_verb(count: int) -> str:
    return "costs" if count == 1 else "cost"


def _template_form(f: Linear):
    """Normalize to one of the three sentence shapes, positive coefficients.

    sum:  a1*x1 + a2*x2 = total  (total > 0)
    same: a1*x1 - a2*x2 = 0
    diff: lead - trail = amount  (amount > 0); a negative right-hand side is
          the same shape with the roles exchanged.
    """
    a, b, c = f.parent_coeff, f.child_coeff, f.rhs
    if a > 0 and b > 0:
        return ("sum", (a, f.parent), (b, f.child), c)
    if a < 0 and b < 0:
        return ("sum", (-a, f.parent), (-b, f.child), -c)
    if a > 0:
        plus, minus = (a, f.parent), (-b, f.child)
    else:
        plus, minus = (b, f.child), (-a, f.parent)
    if c == 0:
        return ("same", plus, minus, 0)
    if c > 0:
        return ("diff", plus, minus, c)
    return ("diff", minus, plus, -c)


def needs_phrasing_coin(f: Formula) -> bool:
    """True for the difference shape, whose wording is a two-way choice."""
    return isinstance(f, Linear) and _template_form(f)[0] == "diff"


def render_formula_fixed(f: Formula, items: ItemMap, phrasing: Optional[str] = None) -> str:
    """One sentence for one formula, with the difference wording pinned.

    `phrasing` is "more" or "less" and is required exactly when
    `needs_phrasing_coin(f)` holds.
    """
    if isinstance(f, RootValue):
        item = items.names[f.var]
        return f"{_quantity(1, item, capitalize=True)} costs {f.value} dollars"

    shape, first, second, amount = _template_form(f)
    (n1, v1), (n2, v2) = first, second
    item1, item2 = items.names[v1], items.names[v2]
    if shape == "sum":
        return (
            f"{_quantity(n1, item1, capitalize=True)} and {_quantity(n2, item2)} "
            f"cost {amount} dollars"
        )
    if shape == "same":
        return (
            f"The price of {_quantity(n1, item1)} is the same as "
            f"the price of {_quantity(n2, item2)}"
        )
    if phrasing not in (PHRASING_MORE, PHRASING_LESS):
        raise CertificationError(f"difference sentence needs a phrasing, got {phrasing!r}")
    if phrasing == PHRASING_MORE:
        return (
            f"{_quantity(n1, item1, capitalize=True)} {_cost_verb(n1)} "
            f"{amount} dollars more than {_quantity(n2, item2)}"
        )
    return (
        f"{_quantity(n2, item2, capitalize=True)} {_cost_verb(n2)} "
        f"{amount} dollars less than {_quantity(n1, item1)}"
    )


def render_formula(f: Formula, items: ItemMap, rng: PcgStream) -> str:
    """One sentence for one formula; the difference wording is a fair coin."""
    phrasing = None
    if needs_phrasing_coin(f):
        phrasing = PHRASING_MORE if rng.coin() else PHRASING_LESS
    return render_formula_fixed(f, items, phrasing)


QUESTION_PHRASINGS = ("how-much", "price-of")


def render_question(items: ItemMap, questioned_var: int, phrasing: str = "how-much") -> str:
    item = items.names[questioned_var]
    if phrasing == "how-much":
        return f"Question: how much does {_quantity(1, item)} cost?"
    if phrasing == "price-of":
        return f"Question: what is the price of {_quantity(1, item)}?"
    raise InvalidConfigError(f"question phrasing must be one of {QUESTION_PHRASINGS}, got {phrasing!r}")


# ---------------------------------------------------------------------------
# Problem text and gold solutions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProblemText:
    condition_sentences: tuple[str, ...]
    question_sentence: str
    full_text: str


def assemble_text(sentences: Sequence[str], question: str) -> ProblemText:
    full = " ".join(f"{s}." for s in sentences) + " " + question
    return ProblemText(tuple(sentences), question, full)


def _lowercase_first(sentence: str) -> str:
    return sentence[0].lower() + sentence[1:] if sentence else sentence


def _join_names(names: list[str]) -> str:
    if len(names) == 1:
        return names[0]
    return ", ".join(names[:-1]) + " and " + names[-1]


def _format_amount(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else str(value)


def render_answerable_solution(
    formulas: Sequence[Formula],
    sentences: Sequence[str],
    items: ItemMap,
    questioned_var: int,
) -> str:
    """Spine-walk narrative: restate each spine fact and the price it yields."""
    sentence_of = dict(zip(formulas, sentences))
    by_child = {f.child_var: f for f in formulas}

    chain: list[Formula] = []
    var = questioned_var
    while True:
        f = by_child[var]
        chain.append(f)
        if isinstance(f, RootValue):
            break
        var = f.parent
    chain.reverse()

    root = chain[0]
    assert isinstance(root, RootValue)
    value = Fraction(root.value)
    parts = [f"It is given as a fact that {_lowercase_first(sentence_of[root])}."]
    for f in chain[1:]:
        assert isinstance(f, Linear)
        value = Fraction(f.rhs - f.parent_coeff * value, f.child_coeff)
        item = items.names[f.child]
        parts.append(
            f"Combine with the fact that {_lowercase_first(sentence_of[f])}, "
            f"we get {_quantity(1, item)} costs {_format_amount(value)} dollars."
        )
    return " ".join(parts)


def render_unanswerable_solution(
    formulas: Sequence[Formula],
    sentences: Sequence[str],
    items: ItemMap,
    questioned_var: int,
) -> str:
    """Count the facts left about the questioned variable's component."""
    component, _ = constraint_component(list(formulas), questioned_var)
    names = [items.names[v].display for v in sorted(component, reverse=True)]
    facts = [
        _lowercase_first(s)
        for f, s in zip(formulas, sentences)
        if f.child_var in component
    ]
    formula_word = "linear formula" if len(facts) == 1 else "linear formulas"
    target = items.names[questioned_var]
    return (
        f"All we know about the prices of {_join_names(names)} is: "
        f"{'. '.join(facts)}. "
        f"There are {len(component)} variables but only {len(facts)} {formula_word}, "
        f"so we cannot calculate the price of {_quantity(1, target)}."
    )


def render_gold_solution(
    formulas: Sequence[Formula],
    sentences: Sequence[str],
    items: ItemMap,
    questioned_var: int,
    answerable: bool,
    determination: Determination,
) -> str:
    """Dispatch on the label after checking it against the oracle verdict."""
    if answerable and not determination.is_unique:
        raise CertificationError(
            f"answerable gold solution requested but oracle says {determination.kind}"
        )
    if not answerable and determination.kind != UNDERDETERMINED:
        raise CertificationError(
            f"unanswerable gold solution requested but oracle says {determination.kind}"
        )
    if answerable:
        return render_answerable_solution(formulas, sentences, items, questioned_var)
    return render_unanswerable_solution(formulas, sentences, items, questioned_var)
