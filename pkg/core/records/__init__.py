"""Census records and their store."""
from .record import COUNT_FIELDS, CensusRecord
from .repository import CIRCULANT, TAU, CensusRepository

__all__ = ["CIRCULANT", "COUNT_FIELDS", "TAU", "CensusRecord", "CensusRepository"]
