"""Exact shortest-vector machinery.

Short vectors are found by Fincke-Pohst enumeration over an LLL-reduced basis. The Gram matrix is
decomposed into Q(x) = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)² with ``Fraction`` entries, so the coefficient
box is derived without floating point and every candidate is filtered by its exact squared norm.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, floor, ceil, isqrt, prod
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from .lattice import Lattice, hnf_canonicalize, lll_reduce
from .linalg import IntVec, canonical_sign, gram_det, matrix_rank, norm_sq
from .utils import InvariantViolation, logger

MINKOWSKIAN_MAX_RANK = 8

# π to 14 decimals; both ends are exact rationals
PI_LO = Fraction(314159265358979, 10**14)
PI_HI = Fraction(314159265358980, 10**14)


@dataclass(frozen=True, slots=True)
class SvpResult:
    """Successive minima of a rank-r lattice."""

    lambda_sq: Tuple[int, ...]
    minimal_reps: FrozenSet[IntVec]
    enum_radius_sq: int
    vectors: Tuple[IntVec, ...]

    @property
    def minimal_count(self) -> int:
        """|S(Γ)|: every representative stands for a ± pair."""

        return 2 * len(self.minimal_reps)

    @property
    def is_well_rounded(self) -> bool:
        return self.lambda_sq[0] == self.lambda_sq[-1]


def _decompose(gram: Sequence[Sequence[int]]) -> List[List[Fraction]]:
    r = len(gram)
    q = [[Fraction(x) for x in row] for row in gram]
    for i in range(r):
        if q[i][i] <= 0:
            raise ValueError("dependent basis")
        for j in range(i + 1, r):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, r):
            for l in range(k, r):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _integer_window(center: Fraction, budget: Fraction) -> range:
    """Integers x with (x - center)² ≤ budget lie inside this range."""

    reach = isqrt(floor(budget)) + 1
    return range(floor(center) - reach, ceil(center) + reach + 1)


def enumerate_basis(columns: Sequence[IntVec], bound_sq: int) -> Set[IntVec]:
    """± representatives of every nonzero v in span_Z(columns) with ‖v‖² ≤ bound_sq."""

    if bound_sq < 0:
        raise ValueError("bound must be nonnegative")
    r = len(columns)
    dim = len(columns[0])
    gram = [[sum(a * b for a, b in zip(u, v)) for v in columns] for u in columns]
    q = _decompose(gram)
    found: Set[IntVec] = set()
    coeffs = [0] * r

    def descend(i: int, budget: Fraction) -> None:
        center = -sum((q[i][j] * coeffs[j] for j in range(i + 1, r)), Fraction(0))
        limit = budget / q[i][i]
        for x in _integer_window(center, limit):
            gap = (x - center) ** 2
            if gap > limit:
                continue
            coeffs[i] = x
            rest = budget - q[i][i] * gap
            if i > 0:
                descend(i - 1, rest)
                continue
            if not any(coeffs):
                continue
            v = tuple(sum(c * col[k] for c, col in zip(coeffs, columns)) for k in range(dim))
            if norm_sq(v) <= bound_sq:
                found.add(canonical_sign(v))
        coeffs[i] = 0

    descend(r - 1, Fraction(bound_sq))
    return found


def reduced_columns(lattice: Lattice) -> List[IntVec]:
    return lll_reduce(lattice).columns()


def enumerate_short(lattice: Lattice, bound_sq: int) -> Set[IntVec]:
    """One representative per ± pair of every nonzero lattice vector with ‖v‖² ≤ bound_sq."""

    found = enumerate_basis(reduced_columns(lattice), bound_sq)
    logger.debug("Enumerated %d short vectors (bound² %d, rank %d)", len(found), bound_sq, lattice.rank)
    return found


def _by_norm(vectors: Set[IntVec]) -> List[IntVec]:
    return sorted(vectors, key=lambda v: (norm_sq(v), v))


@lru_cache(maxsize=4096)
def successive_minima(lattice: Lattice) -> SvpResult:
    """Squared successive minima by greedy independent selection in (norm², lex) order."""

    basis = reduced_columns(lattice)
    radius = max(norm_sq(col) for col in basis)
    candidates = _by_norm(enumerate_basis(basis, radius))
    selected: List[IntVec] = []
    for v in candidates:
        if gram_det(selected + [v]) > 0:
            selected.append(v)
            if len(selected) == lattice.rank:
                break
    if len(selected) != lattice.rank:
        raise InvariantViolation(f"found {len(selected)} independent vectors in a rank-{lattice.rank} lattice")
    lambda_sq = tuple(norm_sq(v) for v in selected)
    minimal = frozenset(v for v in candidates if norm_sq(v) == lambda_sq[0])
    return SvpResult(lambda_sq=lambda_sq, minimal_reps=minimal, enum_radius_sq=radius, vectors=tuple(selected))


def minimal_vectors(lattice: Lattice) -> Tuple[int, Tuple[IntVec, ...]]:
    """(λ_1², sorted ± representatives of S(Γ))."""

    result = successive_minima(lattice)
    return result.lambda_sq[0], tuple(sorted(result.minimal_reps))


def is_well_rounded(lattice: Lattice) -> bool:
    """λ_1 = λ_r, i.e. S(Γ) spans an r-dimensional space."""

    _, reps = minimal_vectors(lattice)
    return matrix_rank(reps) == lattice.rank


def is_wr_prime(lattice: Lattice) -> bool:
    """Γ is generated over Z by its minimal vectors."""

    _, reps = minimal_vectors(lattice)
    return hnf_canonicalize(reps) == lattice


def _extends_to_basis(lattice: Lattice, chosen: Sequence[IntVec]) -> bool:
    """The chosen vectors are primitive in the lattice (all invariant factors of their coordinates are 1)."""

    coords = [lattice.coordinates(v) for v in chosen]
    if any(c is None for c in coords):
        raise InvariantViolation("enumerated vector outside its lattice")
    factors = invariant_factors(DomainMatrix.from_list([list(c) for c in coords], ZZ))
    return len(factors) == len(chosen) and all(int(f) == 1 for f in factors)


def is_minkowskian(lattice: Lattice) -> bool:
    """True when some vectors achieving λ_1, ..., λ_r form a basis."""

    if lattice.rank > MINKOWSKIAN_MAX_RANK:
        raise ValueError("search too large")
    result = successive_minima(lattice)
    pool: Dict[int, List[IntVec]] = {}
    for v in enumerate_basis(reduced_columns(lattice), result.lambda_sq[-1]):
        pool.setdefault(norm_sq(v), []).append(v)
    groups = [(value, len(list(run))) for value, run in itertools.groupby(result.lambda_sq)]

    def search(level: int, chosen: List[IntVec]) -> bool:
        if level == len(groups):
            return True
        value, count = groups[level]
        for combo in itertools.combinations(sorted(pool.get(value, [])), count):
            attempt = chosen + list(combo)
            if gram_det(attempt) == 0 or not _extends_to_basis(lattice, attempt):
                continue
            if search(level + 1, attempt):
                return True
        return False

    found = search(0, [])
    if not found and lattice.rank <= 4:
        raise InvariantViolation(f"rank-{lattice.rank} lattice without a basis of successive minima")
    return found


def minkowskian_index(lattice: Lattice) -> int:
    """|Γ : Γ_1| where Γ_1 is spanned by the greedy successive-minima vectors."""

    vectors = successive_minima(lattice).vectors
    ratio = Fraction(gram_det(vectors), lattice.gram_det())
    index = isqrt(ratio.numerator)
    if ratio.denominator != 1 or index * index != ratio.numerator:
        raise InvariantViolation(f"non-integral Minkowskian index² {ratio}")
    return index


def unit_ball_volume(n: int) -> Tuple[Fraction, Fraction]:
    """Rational enclosure (lo, hi) of the volume of the n-dimensional unit ball."""

    if n < 1:
        raise ValueError("dimension must be positive")
    k, odd = divmod(n, 2)
    if not odd:
        return PI_LO**k / factorial(k), PI_HI**k / factorial(k)
    scale = Fraction(2 * factorial(k) * 4**k, factorial(2 * k + 1))
    return scale * PI_LO**k, scale * PI_HI**k


def minkowski_sanity(lattice: Lattice, result: Optional[SvpResult] = None) -> bool:
    """det ≤ ∏λ_i ≤ 2^r det / V_r, compared on squares with the conservative end of V_r."""

    result = result or successive_minima(lattice)
    r = lattice.rank
    det_sq = lattice.gram_det()
    minima_sq = prod(result.lambda_sq)
    volume_lo, _ = unit_ball_volume(r)
    lower_ok = det_sq <= minima_sq
    upper_ok = minima_sq * volume_lo**2 <= 4**r * det_sq
    if not (lower_ok and upper_ok):
        logger.warning(
            "Minkowski bounds violated: det²=%d ∏λ²=%d (lower %s, upper %s)", det_sq, minima_sq, lower_ok, upper_ok
        )
    return lower_ok and upper_ok
