"""Permutation and signed-permutation invariance of sublattices of Z^N.

Permutations are 1-indexed value types. The action on vectors sends e_j to e_{τ(j)}, so
``apply(τ, x)[τ(j)] = x[j]``; with this action E_{(1 2 … N)} is the rotational shift and
composition (στ)(i) = σ(τ(i)) satisfies E_{στ} = E_σ E_τ.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation as SymPermutation

from core.lattice import Lattice, hnf_canonicalize
from core.linalg import IntMat, IntVec, as_intvec, matrix_rank
from core.polyring import negacyclic_det_resultant
from core.svp import is_well_rounded
from core.utils import InvariantViolation, logger

_CYCLE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, slots=True)
class Permutation:
    """τ on {1, ..., N}; ``image[i - 1] = τ(i)``."""

    image: Tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.image) != list(range(1, len(self.image) + 1)):
            raise ValueError(f"not a bijection of 1..{len(self.image)}: {self.image}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def ncycle(cls, n: int) -> "Permutation":
        """σ = (1 2 … N)."""

        return cls(tuple(range(2, n + 1)) + (1,))

    @classmethod
    def random(cls, n: int, rng: Optional[random.Random] = None) -> "Permutation":
        values = list(range(1, n + 1))
        (rng or random.Random()).shuffle(values)
        return cls(tuple(values))

    @property
    def size(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """self ∘ other: i ↦ self(other(i))."""

        if other.size != self.size:
            raise ValueError("permutations of different degrees")
        return Permutation(tuple(self(other(i)) for i in range(1, self.size + 1)))

    __mul__ = compose

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, t in enumerate(self.image, start=1):
            inv[t - 1] = i
        return Permutation(tuple(inv))

    def power(self, k: int) -> "Permutation":
        result = Permutation.identity(self.size)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = base.compose(result)
        return result

    def _sympy(self) -> SymPermutation:
        return SymPermutation([t - 1 for t in self.image])

    @property
    def order(self) -> int:
        return int(self._sympy().order())

    def is_ncycle(self) -> bool:
        return self.size >= 2 and self._sympy().cycles == 1

    def cycles(self) -> List[Tuple[int, ...]]:
        return [tuple(i + 1 for i in cycle) for cycle in self._sympy().cyclic_form]

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(i) for i in cycle) + ")" for cycle in cycles)


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``"(1 3 2)(4 5)"``; 1-indexed, whitespace-insensitive."""

    if n < 1:
        raise ValueError("degree must be positive")
    stripped = re.sub(r"\s+", " ", text or "").strip()
    if not stripped:
        raise ValueError("empty permutation literal")
    if _CYCLE.sub("", stripped).strip():
        raise ValueError(f"Invalid cycle notation: {text!r}")
    cycles: List[List[int]] = []
    for body in _CYCLE.findall(stripped):
        items = body.replace(",", " ").split()
        try:
            cycles.append([int(item) for item in items])
        except ValueError as exc:
            raise ValueError(f"Invalid cycle notation: {text!r}") from exc
    seen = [i for cycle in cycles for i in cycle]
    if len(seen) != len(set(seen)):
        raise ValueError(f"cycles are not disjoint: {text!r}")
    if any(i < 1 or i > n for i in seen):
        raise ValueError(f"cycle entries must lie in 1..{n}: {text!r}")
    zero_based = [[i - 1 for i in cycle] for cycle in cycles if len(cycle) > 1]
    array = SymPermutation(zero_based, size=n).array_form
    return Permutation(tuple(i + 1 for i in array))


@dataclass(frozen=True, slots=True)
class SignedPermutation:
    """g·E_τ with g = diag(signs)."""

    perm: Permutation
    signs: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.signs) != self.perm.size or any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"signs must be ±1 of length {self.perm.size}: {self.signs}")

    @classmethod
    def negacyclic(cls, n: int) -> "SignedPermutation":
        """diag(-1, 1, ..., 1)·E_{(1 2 … N)}: the signed shift of Z[x]/(x^N + 1)."""

        return cls(Permutation.ncycle(n), (-1,) + (1,) * (n - 1))

    def matrix(self) -> IntMat:
        base = perm_matrix(self.perm)
        return IntMat.from_rows([[s * x for x in row] for s, row in zip(self.signs, base.entries)])

    def __call__(self, x: Sequence[int]) -> IntVec:
        return tuple(s * v for s, v in zip(self.signs, apply(self.perm, x)))


def perm_matrix(tau: Permutation) -> IntMat:
    """E_τ, with E_τ e_j = e_{τ(j)}."""

    n = tau.size
    return IntMat.from_rows([[1 if i == tau(j) else 0 for j in range(1, n + 1)] for i in range(1, n + 1)])


def apply(tau: Permutation, x: Sequence[int]) -> IntVec:
    if len(x) != tau.size:
        raise ValueError(f"vector of dimension {len(x)} for a permutation of degree {tau.size}")
    out = [0] * tau.size
    for j, value in enumerate(x, start=1):
        out[tau(j) - 1] = value
    return tuple(out)


def permute_lattice(lattice: Lattice, tau: Permutation) -> Lattice:
    """E_τ L."""

    return lattice.image(lambda v: apply(tau, v))


def is_invariant(lattice: Lattice, tau: Permutation) -> bool:
    if lattice.ambient_dim != tau.size:
        raise ValueError("permutation degree differs from the lattice dimension")
    return lattice.is_stable_under(lambda v: apply(tau, v))


def is_signed_invariant(lattice: Lattice, signed: SignedPermutation) -> bool:
    if lattice.ambient_dim != signed.perm.size:
        raise ValueError("permutation degree differs from the lattice dimension")
    return lattice.is_stable_under(signed)


def conjugator_for_ncycle(tau: Permutation) -> Permutation:
    """g with τ = g σ g⁻¹ for σ = (1 2 … N), built as g(i) = τ^{i-1}(1)."""

    if not tau.is_ncycle():
        raise ValueError(f"{tau} is not an N-cycle")
    n = tau.size
    images = [1]
    for _ in range(n - 1):
        images.append(tau(images[-1]))
    g = Permutation(tuple(images))
    sigma = Permutation.ncycle(n)
    conjugated = perm_matrix(g).matmul(perm_matrix(sigma)).matmul(perm_matrix(g.inverse()))
    if conjugated != perm_matrix(tau):
        raise InvariantViolation(f"E_g E_σ E_g⁻¹ differs from E_τ for τ = {tau}")
    return g


def orbit_rank(x: Sequence[int], tau: Permutation) -> int:
    """Rank of the orbit {E_τ^k x}; the cyclic order of x when τ = (1 2 … N)."""

    orbit = [tuple(x)]
    for _ in range(tau.order - 1):
        orbit.append(apply(tau, orbit[-1]))
    return matrix_rank(orbit)


def signed_shift(x: Sequence[int]) -> IntVec:
    """srot(x) = (-x_N, x_1, ..., x_{N-1})."""

    return (-x[-1],) + tuple(x[:-1])


def signed_circulant_lattice(a: Sequence[int]) -> Lattice:
    """Lattice of the ideal generated by a(x) in Z[x]/(x^N + 1)."""

    vec = as_intvec(a)
    if not any(vec):
        raise ValueError("zero vector")
    shifts = [vec]
    for _ in range(len(vec) - 1):
        shifts.append(signed_shift(shifts[-1]))
    lattice = hnf_canonicalize(shifts)
    resultant = negacyclic_det_resultant(vec)
    if lattice.is_full_rank and lattice.det() != abs(resultant):
        raise InvariantViolation(f"signed circulant det {lattice.det()} differs from |Res| = {abs(resultant)}")
    if not is_signed_invariant(lattice, SignedPermutation.negacyclic(len(vec))):
        raise InvariantViolation(f"signed circulant lattice of {vec} is not closed under the signed shift")
    return lattice


def dim2_signed_wr_check(a: int, b: int) -> bool:
    """The orthogonal lattice with basis (a, b), (-b, a) is well-rounded."""

    if a == 0 and b == 0:
        raise ValueError("(a, b) must be nonzero")
    lattice = hnf_canonicalize([(a, b), (-b, a)])
    ok = is_well_rounded(lattice)
    if not ok:
        logger.error("Signed dimension-2 lattice for (%d, %d) is not well-rounded", a, b)
    return ok
