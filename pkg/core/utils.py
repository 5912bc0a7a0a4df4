"""Utility helpers for the cyclic lattice toolkit."""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from datetime import datetime, timedelta
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, TypeVar

from dotenv import load_dotenv

# Configure logging early so that modules importing helpers inherit defaults.
load_dotenv(".env")

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
LOG_DIR = Path(os.getenv("LOG_DIR", ".log")).resolve()
LOG_DIR.mkdir(parents=True, exist_ok=True)
LOG_FILE = LOG_DIR / "cyclat.log"

file_handler = logging.FileHandler(LOG_FILE, encoding="utf-8")
stream_handler = logging.StreamHandler()
logging.basicConfig(
    level=getattr(logging, LOG_LEVEL, logging.INFO),
    format=LOG_FORMAT,
    handlers=[file_handler, stream_handler],
)
logger = logging.getLogger("cyclat")

DEFAULT_GUARD = 10**8
DEFAULT_DATABASE_URL = "sqlite:///cyclat.db"

T = TypeVar("T")


class GuardExceeded(ValueError):
    """Raised when a sweep would enumerate more points than the configured guard."""

    def __init__(self, message: str, suggested_r: Optional[int] = None) -> None:
        super().__init__(message)
        self.suggested_r = suggested_r


class InvariantViolation(RuntimeError):
    """Raised when two independent computations of the same quantity disagree."""


def get_census_logger(log_dir: Optional[Path] = None) -> logging.Logger:
    """Create and return a dedicated logger for census sweeps with timestamped log files."""
    census_logger = logging.getLogger("cyclat.census.run")

    # Fresh handlers for every run
    for handler in list(census_logger.handlers):
        census_logger.removeHandler(handler)
        handler.close()

    target_dir = Path(log_dir if log_dir is not None else LOG_DIR)
    target_dir.mkdir(parents=True, exist_ok=True)
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    census_log_file = target_dir / f"census_{timestamp}.log"

    file_handler = logging.FileHandler(census_log_file, encoding="utf-8", mode="w")
    file_handler.setLevel(getattr(logging, LOG_LEVEL, logging.INFO))

    console_handler = logging.StreamHandler()
    console_handler.setLevel(getattr(logging, LOG_LEVEL, logging.INFO))

    formatter = logging.Formatter("%(asctime)s | CENSUS | %(levelname)s | %(name)s | %(message)s")
    file_handler.setFormatter(formatter)
    console_handler.setFormatter(formatter)

    census_logger.addHandler(file_handler)
    census_logger.addHandler(console_handler)
    census_logger.setLevel(getattr(logging, LOG_LEVEL, logging.INFO))

    # Prevent propagation to root logger to avoid duplicate messages
    census_logger.propagate = False

    census_logger.debug("Census log file created: %s", census_log_file)
    return census_logger


def cleanup_old_census_logs(
    keep_days: int = 7, dry_run: bool = False, log_dir: Optional[Path] = None
) -> List[Path]:
    """Remove census log files older than ``keep_days`` days.

    Args:
        keep_days: Number of days to keep log files (default: 7)
        dry_run: Only report the files that would be removed.
        log_dir: Directory to prune (default: LOG_DIR)

    Returns:
        The files removed (or selected for removal in dry-run mode).
    """
    cutoff_date = datetime.now() - timedelta(days=keep_days)
    selected: List[Path] = []

    for log_file in sorted(Path(log_dir if log_dir is not None else LOG_DIR).glob("census_*.log")):
        try:
            # Filenames look like "census_20251016_144549.log"
            timestamp_str = log_file.stem.replace("census_", "")
            file_date = datetime.strptime(timestamp_str, "%Y%m%d_%H%M%S")
            if file_date >= cutoff_date:
                continue
            if not dry_run:
                log_file.unlink()
            selected.append(log_file)
        except (ValueError, OSError):
            # Skip files that don't match the expected format or can't be deleted
            continue

    return selected


@dataclass(slots=True)
class Settings:
    """Runtime configuration loaded from environment variables."""

    guard: int = DEFAULT_GUARD
    workers: int = 1
    database_url: str = DEFAULT_DATABASE_URL
    log_level: str = LOG_LEVEL
    log_dir: Path = LOG_DIR

    @classmethod
    def from_env(cls, env_file: Optional[str | os.PathLike[str]] = ".env") -> "Settings":
        """Load settings from environment variables, defaulting to ``.env``."""

        if env_file:
            load_dotenv(env_file)  # type: ignore[arg-type]

        def _positive_int(name: str, default: int) -> int:
            raw = os.getenv(name)
            if raw is None or not raw.strip():
                return default
            try:
                value = int(raw.strip())
            except ValueError as exc:
                raise ValueError(f"Invalid {name}: {raw}") from exc
            if value < 1:
                raise ValueError(f"Invalid {name}: {raw} (must be positive)")
            return value

        return cls(
            guard=_positive_int("CYCLAT_GUARD", DEFAULT_GUARD),
            workers=_positive_int("CYCLAT_WORKERS", 1),
            database_url=os.getenv("CYCLAT_DATABASE_URL", DEFAULT_DATABASE_URL),
            log_level=LOG_LEVEL,
            log_dir=LOG_DIR,
        )


def chunked(iterable: Iterable[T], size: int) -> Iterable[List[T]]:
    """Yield chunks from ``iterable`` with a maximum size of ``size``."""

    chunk: List[T] = []
    for item in iterable:
        chunk.append(item)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def split_contiguous(values: Sequence[T], parts: int) -> List[List[T]]:
    """Split ``values`` into at most ``parts`` contiguous, order-preserving, non-empty slices."""

    if parts < 1:
        raise ValueError("parts must be positive")
    if not values:
        return []
    size = -(-len(values) // parts)
    return list(chunked(values, size))


def parse_int_list(text: str) -> List[int]:
    """Parse a comma separated integer literal such as ``"4,1"`` or ``"-3, 2"``."""

    if text is None or not text.strip():
        raise ValueError("empty integer list")
    items = [item.strip() for item in text.split(",")]
    if any(not item for item in items):
        raise ValueError(f"Invalid integer list: {text!r}")
    try:
        return [int(item) for item in items]
    except ValueError as exc:
        raise ValueError(f"Invalid integer list: {text!r}") from exc
