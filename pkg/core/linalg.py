"""Exact integer vectors and matrices.

Vectors are plain tuples of Python integers (``IntVec``); every norm is kept squared so
comparisons never leave the integers. Matrices wrap row-major tuples and delegate
determinant and rank to sympy's ``DomainMatrix`` (fraction-free Bareiss elimination over ZZ).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

IntVec = Tuple[int, ...]


def as_intvec(values: Iterable[int]) -> IntVec:
    """Return ``values`` as an ``IntVec``; dimension must be at least 2."""

    vec = tuple(int(v) for v in values)
    if len(vec) < 2:
        raise ValueError(f"vector dimension must be >= 2, got {len(vec)}")
    return vec


def norm_sq(v: Sequence[int]) -> int:
    return sum(x * x for x in v)


def sup_norm(v: Sequence[int]) -> int:
    return max((abs(x) for x in v), default=0)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def is_zero(v: Sequence[int]) -> bool:
    return not any(v)


def neg(v: Sequence[int]) -> IntVec:
    return tuple(-x for x in v)


def add(u: Sequence[int], v: Sequence[int]) -> IntVec:
    return tuple(a + b for a, b in zip(u, v))


def scale(c: int, v: Sequence[int]) -> IntVec:
    return tuple(c * x for x in v)


def canonical_sign(v: Sequence[int]) -> IntVec:
    """Representative of ``{v, -v}`` whose first nonzero coordinate is positive."""

    for x in v:
        if x > 0:
            return tuple(v)
        if x < 0:
            return neg(v)
    return tuple(v)


def rot_shift(v: Sequence[int], k: int = 1) -> IntVec:
    """Return rot^k(v) where rot(x_1, ..., x_N) = (x_N, x_1, ..., x_{N-1})."""

    if k < 0:
        raise ValueError("rotation count must be nonnegative")
    n = len(v)
    k %= n
    if k == 0:
        return tuple(v)
    return tuple(v[-k:]) + tuple(v[:-k])


def rotations(v: Sequence[int]) -> List[IntVec]:
    """All N rotations v, rot(v), ..., rot^{N-1}(v)."""

    return [rot_shift(v, k) for k in range(len(v))]


def cube_points(n: int, r: int, heads: Optional[Iterable[int]] = None) -> Iterator[IntVec]:
    """Yield every point of [-r, r]^n in lexicographic order; (2r+1)^n points in total.

    With ``heads`` only points whose first coordinate is listed are produced, so contiguous
    runs of heads partition the stream into contiguous slices.
    """

    if r < 0:
        raise ValueError("cube radius must be nonnegative")
    if n < 1:
        raise ValueError("dimension must be positive")
    side = range(-r, r + 1)
    if heads is None:
        return itertools.product(side, repeat=n)
    return (
        (head,) + tail
        for head in heads
        for tail in itertools.product(side, repeat=n - 1)
    )


def cube_size(n: int, r: int) -> int:
    return (2 * r + 1) ** n


@dataclass(frozen=True, slots=True)
class IntMat:
    """Row-major arbitrary-precision integer matrix."""

    entries: Tuple[IntVec, ...]
    rows: int
    cols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMat":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if not data:
            raise ValueError("matrix must have at least one row")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise ValueError("ragged matrix rows")
        return cls(entries=data, rows=len(data), cols=width)

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable[int]]) -> "IntMat":
        cols = [tuple(int(x) for x in col) for col in columns]
        if not cols:
            raise ValueError("matrix must have at least one column")
        height = len(cols[0])
        if any(len(col) != height for col in cols):
            raise ValueError("ragged matrix columns")
        return cls.from_rows(zip(*cols))

    @classmethod
    def identity(cls, n: int) -> "IntMat":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def columns(self) -> List[IntVec]:
        return [tuple(row[j] for row in self.entries) for j in range(self.cols)]

    def transpose(self) -> "IntMat":
        return IntMat.from_rows(self.columns())

    def matmul(self, other: "IntMat") -> "IntMat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        other_cols = other.columns()
        return IntMat.from_rows([[dot(row, col) for col in other_cols] for row in self.entries])

    def apply(self, v: Sequence[int]) -> IntVec:
        if len(v) != self.cols:
            raise ValueError("vector length does not match matrix width")
        return tuple(dot(row, v) for row in self.entries)

    def gram(self) -> "IntMat":
        """MᵗM: the matrix of inner products of the columns."""

        cols = self.columns()
        return IntMat.from_rows([[dot(a, b) for b in cols] for a in cols])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def _domain(self) -> DomainMatrix:
        return DomainMatrix.from_list([list(row) for row in self.entries], ZZ)

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return int(self._domain().det())

    def rank(self) -> int:
        return int(self._domain().to_field().rank())

    def row_major(self) -> List[int]:
        return [x for row in self.entries for x in row]


def matrix_det(columns: Sequence[Sequence[int]]) -> int:
    return IntMat.from_columns(columns).det()


def matrix_rank(columns: Sequence[Sequence[int]]) -> int:
    if not columns:
        return 0
    return IntMat.from_columns(columns).rank()


def gram_det(vectors: Sequence[Sequence[int]]) -> int:
    """det of the Gram matrix of ``vectors``; positive iff they are linearly independent."""

    if not vectors:
        return 1
    return IntMat.from_columns(vectors).gram().det()


def minor_rank(matrix: IntMat) -> int:
    """Rank as the largest k with a nonzero k×k minor, by cofactor expansion.

    Exponential; only meant as an oracle for small matrices.
    """

    def cofactor_det(rows: List[List[int]]) -> int:
        if len(rows) == 1:
            return rows[0][0]
        total = 0
        for j, pivot in enumerate(rows[0]):
            if pivot == 0:
                continue
            minor = [row[:j] + row[j + 1:] for row in rows[1:]]
            total += (-1) ** j * pivot * cofactor_det(minor)
        return total

    data = [list(row) for row in matrix.entries]
    for k in range(min(matrix.rows, matrix.cols), 0, -1):
        for row_idx in itertools.combinations(range(matrix.rows), k):
            for col_idx in itertools.combinations(range(matrix.cols), k):
                sub = [[data[i][j] for j in col_idx] for i in row_idx]
                if cofactor_det(sub) != 0:
                    return k
    return 0
