"""Alembic environment for the census store."""
from __future__ import annotations

import os
import sys
from logging.config import fileConfig

# Add the project root directory to the Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from alembic import context
from sqlalchemy import engine_from_config, pool

from core import models  # noqa: F401  # ensure models are registered
from core.database import Base
from core.utils import Settings

config = context.config

if config.config_file_name is not None:
    # keep the cyclat loggers configured by core.utils
    fileConfig(config.config_file_name, disable_existing_loggers=False)


def _database_url() -> str:
    """URL handed over by tools/init_db.py, else CYCLAT_DATABASE_URL / .env."""

    return config.attributes.get("database_url") or Settings.from_env().database_url


def _is_sqlite(url: str) -> bool:
    return url.startswith("sqlite")


def run_migrations_offline() -> None:
    url = _database_url()
    context.configure(
        url=url,
        target_metadata=Base.metadata,
        literal_binds=True,
        render_as_batch=_is_sqlite(url),
        dialect_opts={"paramstyle": "named"},
    )

    with context.begin_transaction():
        context.run_migrations()


def run_migrations_online() -> None:
    url = _database_url()
    configuration = config.get_section(config.config_ini_section) or {}
    configuration["sqlalchemy.url"] = url
    connectable = engine_from_config(configuration, prefix="sqlalchemy.", poolclass=pool.NullPool)

    with connectable.connect() as connection:
        context.configure(
            connection=connection,
            target_metadata=Base.metadata,
            render_as_batch=_is_sqlite(url),
        )

        with context.begin_transaction():
            context.run_migrations()


if context.is_offline_mode():
    run_migrations_offline()
else:
    run_migrations_online()
