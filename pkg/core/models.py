"""ORM models for the census store."""
from __future__ import annotations

from datetime import datetime

from sqlalchemy import DateTime, Integer, String, Text, func
from sqlalchemy.orm import Mapped, mapped_column

from .database import Base


class CensusRow(Base):
    """One census record; ``tau`` is the cycle notation of τ, empty for the circulant census."""

    __tablename__ = "census_records"

    kind: Mapped[str] = mapped_column(String(16), primary_key=True)
    n: Mapped[int] = mapped_column(Integer, primary_key=True)
    r: Mapped[int] = mapped_column(Integer, primary_key=True)
    tau: Mapped[str] = mapped_column(String(128), primary_key=True, default="")
    count_vectors: Mapped[int] = mapped_column(Integer, nullable=False)
    count_lattices: Mapped[int] = mapped_column(Integer, nullable=False)
    count_wr: Mapped[int] = mapped_column(Integer, nullable=False)
    count_wr_prime: Mapped[int] = mapped_column(Integer, nullable=False)
    count_rprime: Mapped[int] = mapped_column(Integer, nullable=False)
    max_multiplicity: Mapped[int] = mapped_column(Integer, nullable=False)
    lattice_keys: Mapped[str] = mapped_column(Text, nullable=False, default="[]")
    created_at: Mapped[datetime] = mapped_column(
        DateTime(timezone=True), server_default=func.now(), nullable=False
    )
