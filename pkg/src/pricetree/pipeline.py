"""Corpus generation: configs, instances, pairs, presets.

Every emitted instance is certified by the oracle before it can be
serialized; a certification failure is a generator bug and raises rather
than writing bad labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CertificationError, InvalidConfigError
from .formulas import (
    CONDITION_ORDERS,
    CutSpec,
    Formula,
    Linear,
    RootValue,
    order_formulas,
    sample_formula,
)
from .oracle import solve_exact, verify_instance
from .rng import PcgStream, substream
from .tree import bfs_edges, build_tree, sample_var_values
from .wording import (
    QUESTION_PHRASINGS,
    ItemMap,
    ItemName,
    Vocabulary,
    assemble_text,
    assign_items,
    load_vocabulary,
    needs_phrasing_coin,
    render_formula_fixed,
    render_gold_solution,
    render_question,
)

ANSWERABLE = "answerable"
UNANSWERABLE = "unanswerable"


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

_CONFIG_KEYS = (
    ("numVars", "num_vars"),
    ("ansDepth", "ans_depth"),
    ("cutDepth", "cut_depth"),
    ("compositeName", "composite_name"),
    ("order", "order"),
    ("count", "count"),
    ("corpusSeed", "corpus_seed"),
    ("questionPhrasing", "question_phrasing"),
    ("dishVocab", "dish_vocab"),
    ("restaurantVocab", "restaurant_vocab"),
)


@dataclass(frozen=True)
class GenConfig:
    num_vars: int
    ans_depth: int
    cut_depth: int
    composite_name: bool
    order: str = "random"
    count: int = 1
    corpus_seed: int = 0
    question_phrasing: str = "how-much"
    dish_vocab: Optional[str] = None
    restaurant_vocab: Optional[str] = None

    def __post_init__(self) -> None:
        if self.ans_depth < 2:
            raise InvalidConfigError(f"ansDepth must be >= 2, got {self.ans_depth}")
        if self.num_vars < self.ans_depth:
            raise InvalidConfigError(
                f"numVars must be >= ansDepth, got numVars={self.num_vars} ansDepth={self.ans_depth}"
            )
        if not 1 <= self.cut_depth < self.ans_depth:
            raise InvalidConfigError(
                f"cutDepth must satisfy 1 <= cutDepth < ansDepth, "
                f"got cutDepth={self.cut_depth} ansDepth={self.ans_depth}"
            )
        if self.order not in CONDITION_ORDERS:
            raise InvalidConfigError(f"order must be one of {CONDITION_ORDERS}, got {self.order!r}")
        if self.count < 1:
            raise InvalidConfigError(f"count must be >= 1, got {self.count}")
        if self.corpus_seed < 0:
            raise InvalidConfigError(f"corpusSeed must be >= 0, got {self.corpus_seed}")
        if self.question_phrasing not in QUESTION_PHRASINGS:
            raise InvalidConfigError(
                f"questionPhrasing must be one of {QUESTION_PHRASINGS}, got {self.question_phrasing!r}"
            )

    def to_json_dict(self) -> dict:
        return {json_key: getattr(self, attr) for json_key, attr in _CONFIG_KEYS}

    @classmethod
    def from_json_dict(cls, data: dict) -> "GenConfig":
        known = {json_key: attr for json_key, attr in _CONFIG_KEYS}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise InvalidConfigError(f"unknown config keys: {', '.join(unknown)}")
        missing = [k for k in ("numVars", "ansDepth", "cutDepth", "compositeName") if k not in data]
        if missing:
            raise InvalidConfigError(f"missing config keys: {', '.join(missing)}")
        return cls(**{known[k]: v for k, v in data.items()})


def cell_label(config: GenConfig) -> str:
    """Filesystem-friendly name for one configuration cell."""
    mode = "composite" if config.composite_name else "simple"
    return (
        f"d{config.ans_depth}_v{config.num_vars}_c{config.cut_depth}_{mode}_{config.order}"
    )


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------


def _formula_to_json(f: Formula) -> dict:
    if isinstance(f, RootValue):
        return {"kind": "rootValue", "var": f.var, "value": f.value}
    return {
        "kind": "linear",
        "parent": f.parent,
        "child": f.child,
        "parentCoeff": f.parent_coeff,
        "childCoeff": f.child_coeff,
        "rhs": f.rhs,
    }


def _formula_from_json(data: dict) -> Formula:
    if data["kind"] == "rootValue":
        return RootValue(var=data["var"], value=data["value"])
    if data["kind"] == "linear":
        return Linear(
            parent=data["parent"],
            child=data["child"],
            parent_coeff=data["parentCoeff"],
            child_coeff=data["childCoeff"],
            rhs=data["rhs"],
        )
    raise InvalidConfigError(f"unknown formula kind {data.get('kind')!r}")


def _item_map_to_json(items: ItemMap) -> dict:
    return {
        "composite": items.composite,
        "names": {
            str(var): {"dish": n.dish, "plural": n.plural, "restaurant": n.restaurant}
            for var, n in sorted(items.names.items())
        },
    }


def _item_map_from_json(data: dict) -> ItemMap:
    names = {
        int(var): ItemName(d["dish"], d["plural"], d["restaurant"])
        for var, d in data["names"].items()
    }
    return ItemMap(names=names, composite=data["composite"])


@dataclass(frozen=True)
class ProblemInstance:
    id: str
    variant: str  # "answerable" | "unanswerable"
    full_text: str
    condition_sentences: tuple[str, ...]
    formulas: tuple[Formula, ...]
    item_map: ItemMap
    questioned_var: int
    gold_answer: Optional[int]
    gold_solution_text: str
    pair_id: str
    metadata: dict

    def to_json_dict(self) -> dict:
        record = {
            "id": self.id,
            "variant": self.variant,
            "fullText": self.full_text,
            "conditionSentences": list(self.condition_sentences),
            "formulas": [_formula_to_json(f) for f in self.formulas],
            "itemMap": _item_map_to_json(self.item_map),
            "questionedVar": self.questioned_var,
        }
        if self.gold_answer is not None:
            record["goldAnswer"] = self.gold_answer
        record["goldSolutionText"] = self.gold_solution_text
        record["pairId"] = self.pair_id
        record["metadata"] = self.metadata
        return record

    @classmethod
    def from_json_dict(cls, data: dict) -> "ProblemInstance":
        return cls(
            id=data["id"],
            variant=data["variant"],
            full_text=data["fullText"],
            condition_sentences=tuple(data["conditionSentences"]),
            formulas=tuple(_formula_from_json(f) for f in data["formulas"]),
            item_map=_item_map_from_json(data["itemMap"]),
            questioned_var=data["questionedVar"],
            gold_answer=data.get("goldAnswer"),
            gold_solution_text=data["goldSolutionText"],
            pair_id=data["pairId"],
            metadata=data["metadata"],
        )


@dataclass
class Dataset:
    config: GenConfig
    instances: list[ProblemInstance]
    certification: dict

    def by_id(self, instance_id: str) -> ProblemInstance:
        for inst in self.instances:
            if inst.id == instance_id:
                return inst
        raise KeyError(instance_id)


# ---------------------------------------------------------------------------
# Pair generation
# ---------------------------------------------------------------------------


def build_pair(
    config: GenConfig,
    index: int,
    rng: PcgStream,
    vocab: Vocabulary,
) -> tuple[ProblemInstance, ProblemInstance]:
    """Build and certify one answerable/unanswerable pair from one stream.

    Stream consumption order is part of the determinism contract:
    variable values, tree attachment, edge coefficients (breadth-first),
    condition-order permutation, item assignment, then one phrasing coin per
    difference sentence in condition order.  The two variants share every
    draw; the unanswerable one just drops the cut sentence.
    """
    values = sample_var_values(config.num_vars, rng)
    tree = build_tree(config.num_vars, config.ans_depth, rng)
    edges = bfs_edges(tree)
    bfs_formulas = [sample_formula(e, values, rng) for e in edges]
    ordered = order_formulas(bfs_formulas, config.order, rng)
    items = assign_items(config.num_vars, config.composite_name, vocab, rng)

    phrasing: dict[int, str] = {}
    sentences = []
    for f in ordered:
        coin = None
        if needs_phrasing_coin(f):
            coin = "more" if rng.coin() else "less"
            phrasing[f.child_var] = coin
        sentences.append(render_formula_fixed(f, items, coin))

    questioned = config.ans_depth
    question = render_question(items, questioned, config.question_phrasing)

    cut = CutSpec(ans_depth=config.ans_depth, cut_depth=config.cut_depth)
    cut_child = cut.cut_child
    kept = [(f, s) for f, s in zip(ordered, sentences) if f.child_var != cut_child]
    if len(kept) != len(ordered) - 1:
        raise CertificationError(f"cut removed {len(ordered) - len(kept)} formulas, expected 1")
    una_formulas = [f for f, _ in kept]
    una_sentences = [s for _, s in kept]

    ans_text = assemble_text(sentences, question)
    una_text = assemble_text(una_sentences, question)

    det_ans = solve_exact(ordered, questioned)
    det_una = solve_exact(una_formulas, questioned)
    gold = values[questioned]
    ans_solution = render_gold_solution(ordered, sentences, items, questioned, True, det_ans)
    una_solution = render_gold_solution(una_formulas, una_sentences, items, questioned, False, det_una)

    pair_id = f"s{config.corpus_seed}-p{index:06d}"  # unique across corpus seeds
    metadata = {
        "config": config.to_json_dict(),
        "index": index,
        "cutEdge": {"parent": cut_child - 1, "child": cut_child},  # parent 0 is the root
        "phrasing": {str(var): coin for var, coin in sorted(phrasing.items())},
    }
    answerable = ProblemInstance(
        id=f"{pair_id}-{ANSWERABLE}",
        variant=ANSWERABLE,
        full_text=ans_text.full_text,
        condition_sentences=ans_text.condition_sentences,
        formulas=tuple(ordered),
        item_map=items,
        questioned_var=questioned,
        gold_answer=gold,
        gold_solution_text=ans_solution,
        pair_id=pair_id,
        metadata=dict(metadata),
    )
    unanswerable = ProblemInstance(
        id=f"{pair_id}-{UNANSWERABLE}",
        variant=UNANSWERABLE,
        full_text=una_text.full_text,
        condition_sentences=una_text.condition_sentences,
        formulas=tuple(una_formulas),
        item_map=items,
        questioned_var=questioned,
        gold_answer=None,
        gold_solution_text=una_solution,
        pair_id=pair_id,
        metadata=dict(metadata),
    )

    for inst in (answerable, unanswerable):
        report = verify_instance(inst)
        if not report.label_confirmed:
            raise CertificationError(f"{inst.id}: {report.failure}")
    return answerable, unanswerable


def generate_pair(config: GenConfig, index: int) -> tuple[ProblemInstance, ProblemInstance]:
    """One certified pair, deterministic given (config, corpusSeed, index)."""
    vocab = load_vocabulary(config.dish_vocab, config.restaurant_vocab)
    return build_pair(config, index, substream(config.corpus_seed, index), vocab)


def generate_corpus(config: GenConfig) -> Dataset:
    """config.count certified pairs; per-index sub-seeds keep them independent."""
    vocab = load_vocabulary(config.dish_vocab, config.restaurant_vocab)
    instances: list[ProblemInstance] = []
    for index in range(config.count):
        pair = build_pair(config, index, substream(config.corpus_seed, index), vocab)
        instances.extend(pair)
    certification = {
        "instances": len(instances),
        "answerable": config.count,
        "unanswerable": config.count,
        "labelConfirmed": len(instances),
        "failures": 0,
    }
    return Dataset(config=config, instances=instances, certification=certification)


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

PRESET_NAMES = ("table-main", "fig-structure", "fig-cutdepth")


def preset(name: str, corpus_seed: int = 0, count: int = 500) -> list[GenConfig]:
    """The shipped experiment grids; each cell gets its own derived seed.

    table-main fixes cutDepth = ansDepth // 2, numVars = ansDepth + 2 and
    composite names; those values are an assumption of this package, chosen
    to mirror the fig-structure defaults, and are not claimed to match any
    particular published run.
    """
    cells: list[GenConfig] = []

    def add(**kwargs) -> None:
        cells.append(GenConfig(corpus_seed=corpus_seed + len(cells), count=count, **kwargs))

    if name == "table-main":
        for depth in (2, 4, 6, 8):
            add(
                num_vars=depth + 2,
                ans_depth=depth,
                cut_depth=depth // 2,
                composite_name=True,
            )
    elif name == "fig-structure":
        for depth in range(4, 9):
            for num_vars in (depth, depth + 2):
                for composite in (False, True):
                    add(
                        num_vars=num_vars,
                        ans_depth=depth,
                        cut_depth=depth // 2,
                        composite_name=composite,
                    )
    elif name == "fig-cutdepth":
        for depth in (7, 8):
            for cut in range(1, depth):
                add(
                    num_vars=depth + 2,
                    ans_depth=depth,
                    cut_depth=cut,
                    composite_name=True,
                )
    else:
        raise InvalidConfigError(f"unknown preset {name!r}, expected one of {PRESET_NAMES}")
    return cells
