"""Answer extraction and outcome scoring.

The parsing rule: lowercase the response, find the last occurrence of the
trigger word "answer", and call the response "unknown" if that word appears
anywhere after the trigger.  Otherwise the first integer-valued number
token after the trigger is the model's answer.  Responses with no trigger,
or no usable number, are unparseable.
"""

from __future__ import annotations

import json
import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from ..errors import DatasetParseError, InvalidConfigError, TransportError
from ..pipeline import ANSWERABLE, Dataset, ProblemInstance
from ..rng import substream
from .prompts import ModelProfile, build_few_shot_prompt, build_zero_shot_prompt
from .transport import query_model

TRIGGER = "answer"

VERDICT_UNKNOWN = "unknown"
VERDICT_NUMBER = "number"
VERDICT_UNPARSEABLE = "unparseable"

OUTCOME_CORRECT_UNANSWERABLE = "correct_unanswerable"
OUTCOME_HALLUCINATION = "hallucination"
OUTCOME_CORRECT_ANSWER = "correct_answer"
OUTCOME_WRONG_ANSWER = "wrong_answer"
OUTCOME_FALSE_UNANSWERABLE = "false_unanswerable"

_NUMBER_TOKEN = re.compile(r"[-+]?\$?\d[\d,]*(?:\.\d+)?")


@dataclass(frozen=True)
class ParsedAnswer:
    verdict: str
    value: Optional[int] = None
    raw_tail: str = ""


def extract_answer(response: str) -> ParsedAnswer:
    """Deterministic, case-insensitive, total parse of a model response."""
    lowered = response.lower()
    pos = lowered.rfind(TRIGGER)
    if pos < 0:
        return ParsedAnswer(VERDICT_UNPARSEABLE)
    tail = lowered[pos + len(TRIGGER):]
    if "unknown" in tail:
        return ParsedAnswer(VERDICT_UNKNOWN, raw_tail=tail)
    match = _NUMBER_TOKEN.search(tail)
    if match:
        token = match.group().replace("$", "").replace(",", "")
        value = float(token)
        if value.is_integer():
            return ParsedAnswer(VERDICT_NUMBER, value=int(value), raw_tail=tail)
    return ParsedAnswer(VERDICT_UNPARSEABLE, raw_tail=tail)


def score_outcome(variant: str, gold_answer: Optional[int], parsed: ParsedAnswer) -> str:
    """Pure outcome function; every record lands in exactly one bucket.

    Unparseable responses to answerable questions count against accuracy
    (wrong-answer bucket); the verdict field keeps them distinguishable.
    """
    if variant != ANSWERABLE:
        if parsed.verdict == VERDICT_UNKNOWN:
            return OUTCOME_CORRECT_UNANSWERABLE
        return OUTCOME_HALLUCINATION
    if parsed.verdict == VERDICT_UNKNOWN:
        return OUTCOME_FALSE_UNANSWERABLE
    if parsed.verdict == VERDICT_NUMBER and parsed.value == gold_answer:
        return OUTCOME_CORRECT_ANSWER
    return OUTCOME_WRONG_ANSWER


# ---------------------------------------------------------------------------
# Evaluation records
# ---------------------------------------------------------------------------

GROUPABLE_KEYS = ("ansDepth", "cutDepth", "numVars", "compositeName", "order")


@dataclass(frozen=True)
class EvalRecord:
    instance_id: str
    pair_id: str
    variant: str
    mode: str  # "zero" | "few"
    outcome: Optional[str]  # None when the transport failed
    verdict: Optional[str]
    value: Optional[int]
    raw_tail: str
    response: Optional[str]  # persisted verbatim so scoring can be re-run
    latency_ms: Optional[float]
    transport_failed: bool
    config_cell: dict
    gold_answer: Optional[int]
    exemplar_ids: Optional[list[str]] = None

    def to_json_dict(self) -> dict:
        return {
            "instanceId": self.instance_id,
            "pairId": self.pair_id,
            "variant": self.variant,
            "mode": self.mode,
            "outcome": self.outcome,
            "verdict": self.verdict,
            "value": self.value,
            "rawTail": self.raw_tail,
            "response": self.response,
            "latencyMs": self.latency_ms,
            "transportFailed": self.transport_failed,
            "configCell": self.config_cell,
            "goldAnswer": self.gold_answer,
            "exemplarIds": self.exemplar_ids,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "EvalRecord":
        return cls(
            instance_id=data["instanceId"],
            pair_id=data["pairId"],
            variant=data["variant"],
            mode=data["mode"],
            outcome=data["outcome"],
            verdict=data["verdict"],
            value=data["value"],
            raw_tail=data["rawTail"],
            response=data["response"],
            latency_ms=data["latencyMs"],
            transport_failed=data["transportFailed"],
            config_cell=data["configCell"],
            gold_answer=data["goldAnswer"],
            exemplar_ids=data["exemplarIds"],
        )


def _config_cell(instance: ProblemInstance) -> dict:
    config = instance.metadata.get("config", {})
    return {key: config.get(key) for key in GROUPABLE_KEYS}


def run_eval(
    dataset: Dataset,
    profile: ModelProfile,
    mode: str,
    transport,
    pool: Optional[Dataset] = None,
    eval_seed: int = 0,
    sleep=time.sleep,
) -> list[EvalRecord]:
    """Score every instance of a dataset; requests run concurrently.

    Records come back in dataset order regardless of completion order.
    Transport failures (after retries) yield records flagged as excluded
    rather than aborting the run.
    """
    if mode not in ("zero", "few"):
        raise InvalidConfigError(f"mode must be 'zero' or 'few', got {mode!r}")
    if mode == "few" and pool is None:
        raise InvalidConfigError("few-shot mode needs an exemplar pool")

    def evaluate(indexed: tuple[int, ProblemInstance]) -> EvalRecord:
        index, instance = indexed
        exemplar_ids = None
        if mode == "zero":
            messages = build_zero_shot_prompt(instance, profile)
        else:
            prompt = build_few_shot_prompt(instance, pool, substream(eval_seed, index), profile)
            messages = prompt.messages
            exemplar_ids = prompt.exemplar_ids
        base = dict(
            instance_id=instance.id,
            pair_id=instance.pair_id,
            variant=instance.variant,
            mode=mode,
            config_cell=_config_cell(instance),
            gold_answer=instance.gold_answer,
            exemplar_ids=exemplar_ids,
        )
        try:
            response, latency = query_model(profile, messages, transport, instance.id, sleep)
        except TransportError:
            return EvalRecord(
                outcome=None,
                verdict=None,
                value=None,
                raw_tail="",
                response=None,
                latency_ms=None,
                transport_failed=True,
                **base,
            )
        parsed = extract_answer(response)
        return EvalRecord(
            outcome=score_outcome(instance.variant, instance.gold_answer, parsed),
            verdict=parsed.verdict,
            value=parsed.value,
            raw_tail=parsed.raw_tail,
            response=response,
            latency_ms=latency,
            transport_failed=False,
            **base,
        )

    with ThreadPoolExecutor(max_workers=profile.concurrency) as executor:
        return list(executor.map(evaluate, enumerate(dataset.instances)))


def write_records(records: list[EvalRecord], path: str | Path) -> None:
    lines = [json.dumps(r.to_json_dict(), ensure_ascii=False) for r in records]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_records(path: str | Path) -> list[EvalRecord]:
    records = []
    for n, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(EvalRecord.from_json_dict(json.loads(line)))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise DatasetParseError(f"{path} line {n}: {exc}") from exc
    return records
