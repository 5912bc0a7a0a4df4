"""Create census_records table

Revision ID: 202610010001
Revises: 
Create Date: 2026-10-01 00:01:00.000000
"""
from __future__ import annotations

from alembic import op
import sqlalchemy as sa


# revision identifiers, used by Alembic.
revision = "202610010001"
down_revision = None
branch_labels = None
depends_on = None


def upgrade() -> None:
    op.create_table(
        "census_records",
        sa.Column("kind", sa.String(length=16), primary_key=True, nullable=False),
        sa.Column("n", sa.Integer(), primary_key=True, nullable=False),
        sa.Column("r", sa.Integer(), primary_key=True, nullable=False),
        sa.Column("tau", sa.String(length=128), primary_key=True, nullable=False),
        sa.Column("count_vectors", sa.Integer(), nullable=False),
        sa.Column("count_lattices", sa.Integer(), nullable=False),
        sa.Column("count_wr", sa.Integer(), nullable=False),
        sa.Column("count_wr_prime", sa.Integer(), nullable=False),
        sa.Column("count_rprime", sa.Integer(), nullable=False),
        sa.Column("max_multiplicity", sa.Integer(), nullable=False),
        sa.Column("lattice_keys", sa.Text(), nullable=False),
        sa.Column("created_at", sa.DateTime(timezone=True), server_default=sa.func.now(), nullable=False),
    )
    op.create_index("ix_census_records_n_r", "census_records", ["n", "r"])


def downgrade() -> None:
    op.drop_index("ix_census_records_n_r", table_name="census_records")
    op.drop_table("census_records")
