from __future__ import annotations

import random

import pytest

from census.engine import CensusEngine
from core.utils import Settings


@pytest.fixture
def settings(tmp_path) -> Settings:
    return Settings(guard=10**6, workers=1, database_url=f"sqlite:///{tmp_path / 'census.db'}", log_dir=tmp_path)


@pytest.fixture
def engine(settings: Settings) -> CensusEngine:
    return CensusEngine(settings, workers=1)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture
def unimodular_mix(rng: random.Random):
    """Random unimodular column operations: additions of integer multiples, swaps and sign flips."""

    def mix(columns, steps: int = 12):
        cols = [list(col) for col in columns]
        for _ in range(steps):
            i, j = rng.sample(range(len(cols)), 2) if len(cols) > 1 else (0, 0)
            move = rng.choice(["add", "swap", "negate"])
            if move == "add" and i != j:
                c = rng.choice([-3, -2, -1, 1, 2, 3])
                cols[i] = [x + c * y for x, y in zip(cols[i], cols[j])]
            elif move == "swap":
                cols[i], cols[j] = cols[j], cols[i]
            else:
                cols[i] = [-x for x in cols[i]]
        return [tuple(col) for col in cols]

    return mix
