"""Counting experiments over cyclic sublattices."""
from core.records import CensusRecord

from .dim2 import Dim2Report, dim2_brute, dim2_closed_forms
from .engine import CensusEngine, GrowthRow, ProbReport

__all__ = [
    "CensusEngine",
    "CensusRecord",
    "Dim2Report",
    "GrowthRow",
    "ProbReport",
    "dim2_brute",
    "dim2_closed_forms",
]
