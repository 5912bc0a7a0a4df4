"""Repository helpers for stored census records."""
from __future__ import annotations

import json
from typing import Optional

import pandas as pd
from sqlalchemy import Select, select

from .record import COUNT_FIELDS, CensusRecord
from ..database import Database
from ..models import CensusRow

CIRCULANT = "circulant"
TAU = "tau"

FRAME_COLUMNS = ["kind", "n", "r", "tau", *COUNT_FIELDS, "created_at"]


def _check_kind(kind: str) -> None:
    if kind not in (CIRCULANT, TAU):
        raise ValueError(f"Unknown census kind: {kind}")


class CensusRepository:
    """High-level data access helpers for census records."""

    def __init__(self, database: Database) -> None:
        self._database = database

    def _base_filter(self, kind: str, n: Optional[int] = None) -> Select[tuple[CensusRow]]:
        _check_kind(kind)
        stmt: Select[tuple[CensusRow]] = select(CensusRow).where(CensusRow.kind == kind)
        if n is not None:
            stmt = stmt.where(CensusRow.n == n)
        return stmt

    def save(self, record: CensusRecord, kind: str = CIRCULANT, tau: str = "") -> None:
        """Insert or replace the row for (kind, N, R, τ)."""

        _check_kind(kind)
        if kind == CIRCULANT and tau:
            raise ValueError("circulant records carry no permutation")
        if kind == TAU and not tau:
            raise ValueError("τ records need the permutation literal")
        row = CensusRow(
            kind=kind,
            n=record.n,
            r=record.r,
            tau=tau,
            lattice_keys=json.dumps([list(key) for key in record.lattice_keys], separators=(",", ":")),
            **record.counts(),
        )
        with self._database.session() as session:
            session.merge(row)

    def get(self, n: int, r: int, kind: str = CIRCULANT, tau: str = "") -> Optional[CensusRecord]:
        stmt = self._base_filter(kind, n).where(CensusRow.r == r, CensusRow.tau == tau)
        with self._database.session() as session:
            row = session.execute(stmt).scalars().first()
        if row is None:
            return None
        keys = tuple(tuple(key) for key in json.loads(row.lattice_keys))
        return CensusRecord(
            n=row.n,
            r=row.r,
            lattice_keys=keys,
            **{name: getattr(row, name) for name in COUNT_FIELDS},
        )

    def list_records(self, n: Optional[int] = None, kind: str = CIRCULANT) -> pd.DataFrame:
        """Return stored records ordered by (N, R, τ)."""

        stmt = self._base_filter(kind, n).order_by(CensusRow.n, CensusRow.r, CensusRow.tau)
        with self._database.session() as session:
            rows = session.execute(stmt).scalars().all()

        if not rows:
            return pd.DataFrame(columns=FRAME_COLUMNS)

        data = [{column: getattr(row, column) for column in FRAME_COLUMNS} for row in rows]
        frame = pd.DataFrame(data, columns=FRAME_COLUMNS)
        frame.reset_index(drop=True, inplace=True)
        return frame
