"""
Frontier survey: certify and bound-check every member of a family sweep and
collect the results in a fixed-column table.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, List, Sequence, Tuple

from ..primitives.f2 import SearchBudget, encode_weight
from .bounds import BoundThresholds, check_bounds
from .placement import certify_local

if TYPE_CHECKING:
    from ...families.base import CodeFamily

LOGGER = logging.getLogger(__name__)

FORMAT_VERSION = 1

COLUMNS: Tuple[str, ...] = (
    "family",
    "n",
    "L",
    "V",
    "dim",
    "d",
    "d_exact",
    "distance_ratio",
    "tradeoff_ratio",
    "distance_pass",
    "tradeoff_pass",
    "label",
    "injective",
    "check_constant",
    "cube_constant",
    "runtime",
    "seed",
)


@dataclass(frozen=True)
class SweepParams:
    sizes: Tuple[int, ...] = ()
    seed: int = 7
    thresholds: BoundThresholds = BoundThresholds()
    budget: SearchBudget = SearchBudget()
    workers: int = 1
    timing: bool = False  # runtime column is 0.0 unless set

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sizes": list(self.sizes),
            "seed": self.seed,
            "thresholds": self.thresholds.to_dict(),
            "budget": self.budget.to_dict(),
            "workers": self.workers,
            "timing": self.timing,
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "SweepParams":
        return cls(
            sizes=tuple(int(s) for s in payload.get("sizes", ())),
            seed=int(payload.get("seed", 7)),
            thresholds=BoundThresholds.from_dict(payload.get("thresholds", {})),
            budget=SearchBudget.from_dict(payload.get("budget", {})),
            workers=int(payload.get("workers", 1)),
            timing=bool(payload.get("timing", False)),
        )


def parse_sizes(text: str) -> Tuple[int, ...]:
    """``"3..6"`` (inclusive), ``"3,5,8"`` or a mix such as ``"3..5,9"``."""
    sizes: List[int] = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        if ".." in part:
            low, high = part.split("..", 1)
            sizes.extend(range(int(low), int(high) + 1))
        else:
            sizes.append(int(part))
    return tuple(sizes)


@dataclass
class SurveyTable:
    rows: List[Dict[str, Any]] = field(default_factory=list)
    columns: Tuple[str, ...] = COLUMNS
    format_version: int = FORMAT_VERSION

    @property
    def all_pass(self) -> bool:
        return all(row["distance_pass"] and row["tradeoff_pass"] for row in self.rows)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow([f"# format_version={self.format_version}"])
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_cell(row[column]) for column in self.columns])
        return buffer.getvalue()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "format_version": self.format_version,
            "columns": list(self.columns),
            "rows": [{column: row[column] for column in self.columns} for row in self.rows],
        }

    def write(self, path: Path, fmt: str = "csv") -> None:
        if fmt == "csv":
            path.write_text(self.to_csv(), encoding="utf-8")
        elif fmt == "json":
            path.write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
        else:
            raise ValueError(f"Unknown table format '{fmt}'. Available: ('csv', 'json')")


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(round(value, 12))
    return str(value)


def survey_row(family: "CodeFamily", size: int, sweep: SweepParams) -> Dict[str, Any]:
    started = time.perf_counter()
    instance = family.build(size, seed=sweep.seed)
    certificate = certify_local(instance.code, instance.placement)
    bound = check_bounds(instance.code, certificate, sweep.thresholds, budget=sweep.budget)
    runtime = time.perf_counter() - started if sweep.timing else 0.0
    d = encode_weight(bound.d)
    return {
        "family": family.name,
        "n": instance.n,
        "L": size,
        "V": bound.size,
        "dim": bound.dim,
        "d": d,
        "d_exact": bound.exact,
        "distance_ratio": bound.distance_ratio,
        "tradeoff_ratio": bound.tradeoff_ratio if bound.tradeoff_ratio != math.inf else "infinity",
        "distance_pass": bound.distance_passes,
        "tradeoff_pass": bound.tradeoff_passes,
        "label": bound.label,
        "injective": certificate.injective,
        "check_constant": certificate.check_constant,
        "cube_constant": certificate.cube_constant,
        "runtime": runtime,
        "seed": sweep.seed,
    }


def frontier_survey(family: "CodeFamily", sweep: SweepParams) -> SurveyTable:
    """Rows follow ``sweep.sizes``; bound failures are recorded, not raised."""
    LOGGER.info(
        "\n%s\n[FRONTIER SURVEY]\nFamily: %s\nSizes: %s\nSeed: %d\n%s",
        "=" * 80,
        family.describe(),
        list(sweep.sizes),
        sweep.seed,
        "=" * 80,
    )
    if sweep.workers > 1 and len(sweep.sizes) > 1:
        with ThreadPoolExecutor(max_workers=sweep.workers) as pool:
            rows = list(pool.map(lambda size: survey_row(family, size, sweep), sweep.sizes))
    else:
        rows = [survey_row(family, size, sweep) for size in sweep.sizes]
    table = SurveyTable(rows)
    failures = sum(1 for row in rows if not (row["distance_pass"] and row["tradeoff_pass"]))
    LOGGER.info("Survey finished: %d rows, %d bound failures", len(rows), failures)
    return table


def survey_families(families: Sequence["CodeFamily"], sweep: SweepParams) -> SurveyTable:
    table = SurveyTable()
    for family in families:
        table.rows.extend(frontier_survey(family, sweep).rows)
    return table


__all__ = [
    "COLUMNS",
    "FORMAT_VERSION",
    "SurveyTable",
    "SweepParams",
    "frontier_survey",
    "parse_sizes",
    "survey_families",
    "survey_row",
]
