"""Tabular output of census records: CSV and JSON lines with fixed schemas."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, List, Sequence

import pandas as pd

from core.records.record import COUNT_FIELDS, CensusRecord

from .engine import GrowthRow

RECORD_COLUMNS = ["n", "r", *COUNT_FIELDS]
GROWTH_COLUMNS = ["r", "count", "ratio"]


def records_frame(records: Iterable[CensusRecord]) -> pd.DataFrame:
    """One row per (N, R); lattice keys are left out of the tabular form."""

    rows = [{"n": record.n, "r": record.r, **record.counts()} for record in records]
    frame = pd.DataFrame(rows, columns=RECORD_COLUMNS)
    return frame.astype({column: "int64" for column in RECORD_COLUMNS})


def records_csv(records: Iterable[CensusRecord]) -> str:
    return records_frame(records).to_csv(index=False, lineterminator="\n")


def record_json(record: CensusRecord) -> str:
    payload = {
        "n": record.n,
        "r": record.r,
        **record.counts(),
        "lattice_keys": [list(key) for key in record.lattice_keys],
    }
    return json.dumps(payload, separators=(",", ":"), sort_keys=False)


def records_jsonl(records: Iterable[CensusRecord]) -> str:
    return "".join(record_json(record) + "\n" for record in records)


def write_csv(records: Sequence[CensusRecord], path: Path) -> Path:
    path.write_text(records_csv(records), encoding="utf-8", newline="\n")
    return path


def write_jsonl(records: Sequence[CensusRecord], path: Path) -> Path:
    path.write_text(records_jsonl(records), encoding="utf-8", newline="\n")
    return path


def growth_frame(rows: Iterable[GrowthRow]) -> pd.DataFrame:
    data: List[dict] = [{"r": row.r, "count": row.count, "ratio": str(row.ratio)} for row in rows]
    return pd.DataFrame(data, columns=GROWTH_COLUMNS)
