"""The census record shared by the sweeps, the exporters and the store."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from ..utils import InvariantViolation

COUNT_FIELDS = (
    "count_vectors",
    "count_lattices",
    "count_wr",
    "count_wr_prime",
    "count_rprime",
    "max_multiplicity",
)

Key = Tuple[int, ...]


@dataclass(slots=True)
class CensusRecord:
    """Counts for one (N, R): qualifying vectors, their distinct lattices and how those classify."""

    n: int
    r: int
    count_vectors: int = 0
    count_lattices: int = 0
    count_wr: int = 0
    count_wr_prime: int = 0
    count_rprime: int = 0
    max_multiplicity: int = 0
    lattice_keys: Tuple[Key, ...] = ()

    def counts(self) -> Dict[str, int]:
        return {name: getattr(self, name) for name in COUNT_FIELDS}

    def check_ordering(self) -> None:
        chain = [self.count_rprime, self.count_wr_prime, self.count_wr, self.count_lattices, self.count_vectors]
        if chain != sorted(chain):
            raise InvariantViolation(f"census counts out of order for N={self.n}, R={self.r}: {self.counts()}")
