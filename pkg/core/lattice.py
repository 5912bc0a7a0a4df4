"""Sublattices of Z^N keyed by a canonical Hermite Normal Form.

Convention (used everywhere downstream): the HNF basis is an N×r matrix whose columns are in
column echelon form. Column j has its first nonzero entry (the pivot) at row p_j with
p_0 < p_1 < ... and pivot > 0; every earlier column's entry in a later pivot row is reduced
into [0, pivot). For a full-rank lattice this is lower-triangular with a positive diagonal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from .linalg import IntMat, IntVec, dot
from .utils import InvariantViolation, logger

Generators = Union[IntMat, Iterable[Sequence[int]]]


def _gcdex(a: int, b: int) -> Tuple[int, int, int]:
    s, t, g = ZZ.gcdex(ZZ(a), ZZ(b))
    return int(s), int(t), int(g)


def _echelon(columns: List[List[int]], dim: int) -> Tuple[List[List[int]], List[int]]:
    """Column-echelonize ``columns`` by unimodular column operations; returns (basis, pivot rows)."""

    pending = [col for col in columns if any(col)]
    basis: List[List[int]] = []
    pivots: List[int] = []
    for row in range(dim):
        hits = [col for col in pending if col[row] != 0]
        if not hits:
            continue
        rest = [col for col in pending if col[row] == 0]
        pivot = hits[0]
        for other in hits[1:]:
            a, b = pivot[row], other[row]
            s, t, g = _gcdex(a, b)
            ua, ub = a // g, b // g
            # (s, t; -ub, ua) is unimodular since s·a + t·b = g
            pivot, other = (
                [s * x + t * y for x, y in zip(pivot, other)],
                [ua * y - ub * x for x, y in zip(pivot, other)],
            )
            if any(other):
                rest.append(other)
        if pivot[row] < 0:
            pivot = [-x for x in pivot]
        basis.append(pivot)
        pivots.append(row)
        pending = rest
    # reduce earlier columns against later pivots
    for j, row in enumerate(pivots):
        d = basis[j][row]
        for k in range(j):
            q = basis[k][row] // d
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], basis[j])]
    return basis, pivots


@dataclass(frozen=True, slots=True)
class Lattice:
    """A sublattice of Z^N; equality and hashing use the HNF key only."""

    ambient_dim: int
    rank: int
    hnf_key: Tuple[int, ...]
    pivots: Tuple[int, ...] = field(compare=False)

    @property
    def basis(self) -> IntMat:
        rows = [self.hnf_key[i * self.rank:(i + 1) * self.rank] for i in range(self.ambient_dim)]
        return IntMat.from_rows(rows)

    def columns(self) -> List[IntVec]:
        return self.basis.columns()

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_dim

    def det(self) -> int:
        """Covolume of a full-rank lattice: the product of the HNF diagonal."""

        if not self.is_full_rank:
            raise ValueError("determinant of a partial-rank lattice; use gram_det")
        key = self.hnf_key
        n = self.ambient_dim
        return prod(key[i * n + i] for i in range(n))

    def gram_det(self) -> int:
        """det(BᵗB) for the HNF basis B; equals det(L)² at full rank."""

        return self.basis.gram().det()

    def coordinates(self, v: Sequence[int]) -> Optional[Tuple[int, ...]]:
        """Integer coordinates of ``v`` in the HNF basis, or None when v is not a member."""

        if len(v) != self.ambient_dim:
            raise ValueError(f"vector of dimension {len(v)} in a lattice of dimension {self.ambient_dim}")
        residual = list(v)
        cols = self.columns()
        coords: List[int] = []
        for col, row in zip(cols, self.pivots):
            c, rem = divmod(residual[row], col[row])
            if rem:
                return None
            if c:
                residual = [x - c * y for x, y in zip(residual, col)]
            coords.append(c)
        if any(residual):
            return None
        return tuple(coords)

    def contains(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.contains(v)

    def image(self, f: Callable[[IntVec], IntVec]) -> "Lattice":
        """The lattice generated by f applied to every basis column."""

        return hnf_canonicalize([f(col) for col in self.columns()])

    def is_stable_under(self, f: Callable[[IntVec], IntVec]) -> bool:
        """True when f maps every basis column back into the lattice.

        For an isometry (rotations, permutations, sign changes) this is equivalent to
        ``self.image(f) == self``.
        """

        return all(self.contains(f(col)) for col in self.columns())

    def key_list(self) -> List[int]:
        return list(self.hnf_key)


def hnf_canonicalize(basis: Generators) -> Lattice:
    """Canonical HNF lattice spanned by the columns of ``basis`` (a generating set is fine)."""

    if isinstance(basis, IntMat):
        columns = [list(col) for col in basis.columns()]
    else:
        columns = [[int(x) for x in col] for col in basis]
    if not columns or not any(any(col) for col in columns):
        raise ValueError("empty lattice")
    dim = len(columns[0])
    if any(len(col) != dim for col in columns):
        raise ValueError("generators of different dimensions")
    echelon, pivots = _echelon(columns, dim)
    rank = len(echelon)
    key = tuple(echelon[j][i] for i in range(dim) for j in range(rank))
    return Lattice(ambient_dim=dim, rank=rank, hnf_key=key, pivots=tuple(pivots))


def lattice_from_key(ambient_dim: int, key: Sequence[int]) -> Lattice:
    """Rebuild a lattice from its row-major HNF key."""

    if not key or len(key) % ambient_dim:
        raise ValueError(f"key of length {len(key)} does not fit dimension {ambient_dim}")
    rank = len(key) // ambient_dim
    rows = [list(key[i * rank:(i + 1) * rank]) for i in range(ambient_dim)]
    lattice = hnf_canonicalize(IntMat.from_rows(rows))
    if lattice.hnf_key != tuple(key):
        raise ValueError("key is not in Hermite normal form")
    return lattice


def standard_lattice(n: int, scale: int = 1) -> Lattice:
    """scale·Z^n."""

    if scale < 1:
        raise ValueError("scale must be positive")
    return hnf_canonicalize([[scale if i == j else 0 for i in range(n)] for j in range(n)])


def sublattice_index(lattice: Lattice, sub: Lattice) -> int:
    """|L : Lsub| = det(Lsub) / det(L) for full-rank Lsub ⊆ L."""

    if lattice.ambient_dim != sub.ambient_dim:
        raise ValueError("lattices live in different dimensions")
    if not (lattice.is_full_rank and sub.is_full_rank):
        raise ValueError("index requires full-rank lattices")
    if not all(lattice.contains(col) for col in sub.columns()):
        raise ValueError("not a sublattice")
    index, rem = divmod(sub.det(), lattice.det())
    if rem:
        raise InvariantViolation(f"non-integral index {sub.det()}/{lattice.det()}")
    return index


def lll_reduce(lattice: Lattice, delta: Tuple[int, int] = (3, 4)) -> IntMat:
    """LLL-reduced basis of ``lattice`` (columns), exact over ZZ.

    The reduced basis spans the same lattice; this is checked by HNF comparison.
    """

    cols = lattice.columns()
    if lattice.rank == 1:
        return IntMat.from_columns(cols)
    reduced = DomainMatrix.from_list([list(col) for col in cols], ZZ).lll(delta=QQ(*delta))
    vectors = [tuple(int(x) for x in row) for row in reduced.to_list()]
    if hnf_canonicalize(vectors) != lattice:
        raise InvariantViolation("LLL changed the lattice span")
    logger.debug(
        "LLL reduced rank-%d basis: max norm² %d -> %d",
        lattice.rank,
        max(dot(c, c) for c in cols),
        max(dot(v, v) for v in vectors),
    )
    return IntMat.from_columns(vectors)
