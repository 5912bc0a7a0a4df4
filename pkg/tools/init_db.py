#!/usr/bin/env python3
"""Initialize the census store.

Runs the Alembic migrations against ``CYCLAT_DATABASE_URL`` and verifies that the
census table exists afterwards.
"""
from __future__ import annotations

import sys
from pathlib import Path

# Add the project root directory to the Python path
PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from alembic import command
from alembic.config import Config
from alembic.runtime.migration import MigrationContext
from alembic.script import ScriptDirectory
from sqlalchemy import inspect

from core.database import Database
from core.models import CensusRow
from core.utils import Settings, logger


def init_database() -> None:
    """Bring the census store to the head revision, re-stamping when the table went missing."""
    try:
        logger.info("Loading settings from environment...")
        settings = Settings.from_env()
        database = Database(settings.database_url)

        alembic_cfg = Config(str(PROJECT_ROOT / "alembic.ini"))
        alembic_cfg.set_main_option("script_location", str(PROJECT_ROOT / "alembic"))
        alembic_cfg.attributes["database_url"] = settings.database_url

        with database.engine.connect() as connection:
            current_rev = MigrationContext.configure(connection).get_current_revision()
        head_rev = ScriptDirectory.from_config(alembic_cfg).get_current_head()

        if current_rev == head_rev:
            logger.info("Migrations are already at head. Verifying tables exist...")
            if not inspect(database.engine).has_table(CensusRow.__tablename__):
                logger.warning("Migration marked as applied but %s is missing. Re-running migration...",
                               CensusRow.__tablename__)
                command.stamp(alembic_cfg, "base")
                command.upgrade(alembic_cfg, "head")
            else:
                logger.info("Tables verified successfully")
        else:
            logger.info("Running database migrations (%s -> %s)...", current_rev, head_rev)
            command.upgrade(alembic_cfg, "head")

        logger.info("Database initialization completed successfully!")

    except Exception as e:
        logger.error("Database initialization failed: %s", e)
        raise


def main() -> None:
    logger.info("Starting census store initialization...")
    init_database()
    logger.info("Census store is ready for use!")


if __name__ == "__main__":
    main()
