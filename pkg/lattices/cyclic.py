"""Cyclic lattices Λ(a) and the predicates built on their minimal vectors."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple

from core.lattice import Lattice, hnf_canonicalize
from core.linalg import IntVec, as_intvec, canonical_sign, dot, gram_det, norm_sq, rot_shift, rotations
from core.polyring import ONE, cyclic_order, gcd_with_cycle
from core.svp import enumerate_short, is_wr_prime, minimal_vectors, successive_minima
from core.utils import InvariantViolation, logger

QUARTER = Fraction(1, 4)


@dataclass(frozen=True, slots=True)
class AngleSequence:
    """cos²θ_i, where θ_i is the angle between a_{i+1} and span(a_1, ..., a_i)."""

    cos_sq: Tuple[Fraction, ...]

    def all_below(self, threshold: Fraction = QUARTER) -> bool:
        return all(value < threshold for value in self.cos_sq)


def _nonzero(a: Sequence[int]) -> IntVec:
    vec = as_intvec(a)
    if not any(vec):
        raise ValueError("zero vector")
    return vec


def circulant_lattice(a: Sequence[int]) -> Lattice:
    """Λ(a) = span_Z{a, rot(a), ..., rot^{N-1}(a)}."""

    return hnf_canonicalize(rotations(_nonzero(a)))


def is_cyclic(lattice: Lattice) -> bool:
    return lattice.is_stable_under(rot_shift)


def angle_sequence(vectors: Sequence[Sequence[int]]) -> AngleSequence:
    vecs = [tuple(v) for v in vectors]
    values: List[Fraction] = []
    previous = gram_det(vecs[:1])
    if previous == 0:
        raise ValueError("dependent prefix: zero first vector")
    for i in range(1, len(vecs)):
        current = gram_det(vecs[: i + 1])
        if current == 0:
            raise ValueError(f"dependent prefix at vector {i + 1}")
        length = norm_sq(vecs[i])
        distance = Fraction(current, previous)
        values.append((length - distance) / length)
        previous = current
    return AngleSequence(tuple(values))


def angles_certificate(a: Sequence[int]) -> bool:
    """Near-orthogonality of the rotation basis: every cos²θ_i < 1/4.

    A positive answer implies a ∈ D_N, which is checked against the enumeration oracle.
    """

    vec = _nonzero(a)
    if cyclic_order(vec) != len(vec):
        return False
    if not angle_sequence(rotations(vec)).all_below(QUARTER):
        return False
    if not in_D_N(vec):
        raise InvariantViolation(f"angle certificate holds for {vec} but it is not in D_N")
    return True


def rotation_inner_products(a: Sequence[int]) -> Tuple[int, ...]:
    """First row of the Gram matrix of the rotations: a·rot^i(a) for 0 ≤ i < N."""

    return tuple(dot(a, rot_shift(a, i)) for i in range(len(a)))


def gram_symmetries(a: Sequence[int]) -> bool:
    """Check the circulant structure of Q(a) = Gram(a, rot a, ...).

    A False return means an arithmetic bug, not a property of ``a``.
    """

    vec = as_intvec(a)
    n = len(vec)
    rots = rotations(vec)
    gram = [[dot(u, v) for v in rots] for u in rots]
    first_row = rotation_inner_products(vec)
    circulant = all(gram[i][j] == first_row[(j - i) % n] for i in range(n) for j in range(n))
    diagonal = all(gram[i][i] == norm_sq(vec) for i in range(n))
    mirrored = all(first_row[k] == first_row[n - k] for k in range(1, n))
    distinct = {gram[i][j] for i in range(n) for j in range(n) if i != j}
    bounded = len(distinct) <= n // 2
    ok = circulant and diagonal and mirrored and bounded
    if not ok:
        logger.error("Gram symmetries failed for %s: %s", vec, sorted(distinct))
    return ok


def in_D_N(a: Sequence[int]) -> bool:
    """Full cyclic order, a minimal in Λ(a), and Λ(a) generated by its minimal vectors."""

    vec = _nonzero(a)
    if cyclic_order(vec) != len(vec):
        return False
    lattice = circulant_lattice(vec)
    lambda1_sq, _ = minimal_vectors(lattice)
    return norm_sq(vec) == lambda1_sq and is_wr_prime(lattice)


def in_R_N(a: Sequence[int]) -> bool:
    """Λ(a) full rank with ‖a‖ = λ_1 = λ_N.

    The N rotations already give λ_N ≤ ‖a‖, so it suffices that nothing is strictly shorter than a.
    """

    vec = _nonzero(a)
    if cyclic_order(vec) != len(vec):
        return False
    return not enumerate_short(circulant_lattice(vec), norm_sq(vec) - 1)


def in_rprime(a: Sequence[int]) -> bool:
    """Λ(a) ∈ R_N and every minimal vector has full cyclic order."""

    vec = _nonzero(a)
    if not in_R_N(vec):
        return False
    _, reps = minimal_vectors(circulant_lattice(vec))
    return all(gcd_with_cycle(c) == ONE for c in reps)


def sivp_via_rotations(a: Sequence[int]) -> List[IntVec]:
    """SIVP solution a, rot(a), ..., rot^{N-1}(a) for Λ(a) ∈ R'_N."""

    vec = _nonzero(a)
    if not in_rprime(vec):
        raise ValueError("not in R'_N")
    solution = rotations(vec)
    minima = successive_minima(circulant_lattice(vec)).lambda_sq
    if tuple(norm_sq(v) for v in solution) != minima:
        raise InvariantViolation(f"rotation norms of {vec} differ from successive minima {minima}")
    return solution


def corollary_vector(k: Sequence[int]) -> IntVec:
    """a = (m, m/k_1, ..., m/k_{N-1}) with m = lcm(|k_1|, ..., |k_{N-1}|)."""

    ks = [int(x) for x in k]
    if not ks:
        raise ValueError("at least one k is required")
    if any(x == 0 for x in ks):
        raise ValueError("k entries must be nonzero")
    m = lcm(*(abs(x) for x in ks))
    return (m,) + tuple(m // x for x in ks)


def verify_corollary_family(a: Sequence[int]) -> bool:
    """S(Λ(a)) is exactly ±{rot^i(a)} and a has full cyclic order, i.e. Λ(a) ∈ R'_N."""

    vec = _nonzero(a)
    if cyclic_order(vec) != len(vec):
        return False
    lambda1_sq, reps = minimal_vectors(circulant_lattice(vec))
    expected = {canonical_sign(v) for v in rotations(vec)}
    ok = lambda1_sq == norm_sq(vec) and set(reps) == expected
    if ok and not in_rprime(vec):
        raise InvariantViolation(f"{vec} has rotations as minimal vectors but is not in R'_N")
    return ok
