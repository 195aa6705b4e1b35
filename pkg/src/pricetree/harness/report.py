"""Aggregation of scored records into tables and plot-ready CSV series.

Rates are exact fractions of the per-cell counts; formatting to one decimal
happens only at the output boundary.  Cells with no eligible records render
as missing, never as 0%.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from ..errors import InvalidConfigError
from ..pipeline import ANSWERABLE
from .scoring import (
    GROUPABLE_KEYS,
    OUTCOME_CORRECT_ANSWER,
    OUTCOME_FALSE_UNANSWERABLE,
    OUTCOME_HALLUCINATION,
    VERDICT_UNPARSEABLE,
    EvalRecord,
)

MISSING = "—"  # em dash: a rate with no eligible records is missing, not 0%


@dataclass
class CellMetrics:
    key: dict
    n: int = 0
    n_unanswerable: int = 0
    hallucinations: int = 0
    n_answerable: int = 0
    correct: int = 0
    false_unanswerable: int = 0
    unparseable: int = 0
    excluded: int = 0

    @property
    def hallucination_rate(self) -> Optional[Fraction]:
        if self.n_unanswerable == 0:
            return None
        return Fraction(self.hallucinations, self.n_unanswerable)

    @property
    def accuracy(self) -> Optional[Fraction]:
        if self.n_answerable == 0:
            return None
        return Fraction(self.correct, self.n_answerable)

    @property
    def false_unanswerable_rate(self) -> Optional[Fraction]:
        if self.n_answerable == 0:
            return None
        return Fraction(self.false_unanswerable, self.n_answerable)


@dataclass
class MetricsTable:
    group_keys: list[str]
    cells: list[CellMetrics] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "groupKeys": self.group_keys,
            "cells": [
                {
                    "key": cell.key,
                    "n": cell.n,
                    "nUnanswerable": cell.n_unanswerable,
                    "hallucinations": cell.hallucinations,
                    "hallucinationRate": _rate_float(cell.hallucination_rate),
                    "nAnswerable": cell.n_answerable,
                    "correct": cell.correct,
                    "accuracy": _rate_float(cell.accuracy),
                    "falseUnanswerable": cell.false_unanswerable,
                    "falseUnanswerableRate": _rate_float(cell.false_unanswerable_rate),
                    "unparseable": cell.unparseable,
                    "excluded": cell.excluded,
                }
                for cell in self.cells
            ],
        }


def _rate_float(rate: Optional[Fraction]) -> Optional[float]:
    return None if rate is None else float(rate)


def format_rate(rate: Optional[Fraction]) -> str:
    """"64.0%" style; missing cells render as a dash."""
    if rate is None:
        return MISSING
    return f"{float(rate) * 100:.1f}%"


def aggregate(records: list[EvalRecord], group_by: list[str]) -> MetricsTable:
    """Group scored records by configuration keys and tally exact rates.

    Transport-failed records are excluded from every rate but counted per
    cell so the exclusion is visible.
    """
    bad = [k for k in group_by if k not in GROUPABLE_KEYS]
    if bad:
        raise InvalidConfigError(
            f"cannot group by {', '.join(bad)}; valid keys: {', '.join(GROUPABLE_KEYS)}"
        )
    cells: dict[tuple, CellMetrics] = {}
    for record in records:
        key_tuple = tuple(record.config_cell.get(k) for k in group_by)
        cell = cells.get(key_tuple)
        if cell is None:
            cell = cells[key_tuple] = CellMetrics(key=dict(zip(group_by, key_tuple)))
        if record.transport_failed:
            cell.excluded += 1
            continue
        cell.n += 1
        if record.verdict == VERDICT_UNPARSEABLE:
            cell.unparseable += 1
        if record.variant == ANSWERABLE:
            cell.n_answerable += 1
            if record.outcome == OUTCOME_CORRECT_ANSWER:
                cell.correct += 1
            elif record.outcome == OUTCOME_FALSE_UNANSWERABLE:
                cell.false_unanswerable += 1
        else:
            cell.n_unanswerable += 1
            if record.outcome == OUTCOME_HALLUCINATION:
                cell.hallucinations += 1
    ordered = sorted(cells, key=lambda k: tuple(str(p) for p in k))
    return MetricsTable(group_keys=list(group_by), cells=[cells[k] for k in ordered])


def format_text_table(table: MetricsTable) -> str:
    """Aligned plain-text table, one row per cell."""
    headers = table.group_keys + [
        "n",
        "halluc%",
        "acc%",
        "falseUnk%",
        "unparseable",
        "excluded",
    ]
    rows = []
    for cell in table.cells:
        rows.append(
            [str(cell.key[k]) for k in table.group_keys]
            + [
                str(cell.n),
                format_rate(cell.hallucination_rate),
                format_rate(cell.accuracy),
                format_rate(cell.false_unanswerable_rate),
                str(cell.unparseable),
                str(cell.excluded),
            ]
        )
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)),
        "  ".join("-" * w for w in widths),
    ]
    lines += ["  ".join(r[i].ljust(widths[i]) for i in range(len(headers))) for r in rows]
    return "\n".join(lines)


def _series(records: list[EvalRecord], keys: list[str]) -> list[dict]:
    table = aggregate(records, keys)
    rows = []
    for cell in table.cells:
        row = dict(cell.key)
        row["nUnanswerable"] = cell.n_unanswerable
        row["hallucinationRate"] = _rate_float(cell.hallucination_rate)
        rows.append(row)
    return rows


def structure_series(records: list[EvalRecord]) -> list[dict]:
    """Hallucination rate per (ansDepth, numVars, compositeName) cell."""
    return _series(records, ["ansDepth", "numVars", "compositeName"])


def cutdepth_series(records: list[EvalRecord]) -> list[dict]:
    """Hallucination rate per (ansDepth, cutDepth) cell."""
    return _series(records, ["ansDepth", "cutDepth"])


def _write_csv(rows: list[dict], path: Path) -> None:
    if not rows:
        path.write_text("", encoding="utf-8")
        return
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)


def write_report(records: list[EvalRecord], group_by: list[str], out_dir: str | Path) -> MetricsTable:
    """Emit metrics.txt, metrics.json and the two plot-data CSV series."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    table = aggregate(records, group_by)
    (out / "metrics.txt").write_text(format_text_table(table) + "\n", encoding="utf-8")
    (out / "metrics.json").write_text(
        json.dumps(table.to_json_dict(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    _write_csv(structure_series(records), out / "by_structure.csv")
    _write_csv(cutdepth_series(records), out / "by_cut_depth.csv")
    return table
