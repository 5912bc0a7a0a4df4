"""Integer polynomials and the vector <-> residue correspondence of Z[x]/(x^N - 1).

A length-N vector (a_0, ..., a_{N-1}) corresponds to a(x) = Σ a_n xⁿ. Multiplying by x
modulo x^N - 1 is the rotational shift. All arithmetic runs on sympy ``Poly`` over ZZ.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

from sympy import Poly, cyclotomic_poly, divisors, symbols, totient

from .lattice import Lattice, hnf_canonicalize
from .linalg import IntMat, IntVec, matrix_rank, rot_shift
from .utils import InvariantViolation, logger

X = symbols("x")

ZERO_DEGREE = float("-inf")


@dataclass(frozen=True, slots=True)
class IntPoly:
    """Integer polynomial, coefficients lowest degree first, no trailing zeros."""

    coeffs: Tuple[int, ...]

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> "IntPoly":
        values = [int(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        return cls(tuple(values))

    @classmethod
    def from_sympy(cls, poly: Poly) -> "IntPoly":
        if poly.is_zero:
            return cls(())
        return cls.from_coeffs(int(c) for c in reversed(poly.all_coeffs()))

    def to_sympy(self) -> Poly:
        return Poly(list(reversed(self.coeffs)) or [0], X, domain="ZZ")

    @property
    def degree(self) -> Union[int, float]:
        """Index of the last nonzero coefficient; ``ZERO_DEGREE`` (-inf) for the zero polynomial."""

        if not self.coeffs:
            return ZERO_DEGREE
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly.from_sympy(self.to_sympy() * other.to_sympy())

    def __call__(self, value: int) -> int:
        return sum(c * value**i for i, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        return str(self.to_sympy().as_expr()) if self.coeffs else "0"


ONE = IntPoly((1,))


def vec_to_poly(a: Sequence[int]) -> IntPoly:
    return IntPoly.from_coeffs(a)


def poly_to_vec(p: IntPoly, n: int) -> IntVec:
    if not p.is_zero and p.degree > n - 1:
        raise ValueError(f"degree overflow: deg {p.degree} does not fit in dimension {n}")
    return tuple(p.coeffs) + (0,) * (n - len(p.coeffs))


def cycle_polynomial(n: int, sign: int = -1) -> IntPoly:
    """x^N - 1 (sign=-1) or x^N + 1 (sign=+1)."""

    return IntPoly.from_coeffs([sign] + [0] * (n - 1) + [1])


def mul_x_mod(p: IntPoly, n: int) -> IntPoly:
    """x·p(x) reduced modulo x^N - 1."""

    _, rem = (Poly([1, 0], X, domain="ZZ") * p.to_sympy()).div(cycle_polynomial(n).to_sympy())
    return IntPoly.from_sympy(rem)


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPoly:
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    return IntPoly.from_sympy(cyclotomic_poly(d, X, polys=True))


def divides(p: IntPoly, q: IntPoly) -> bool:
    """True when q = p·s for some s in Z[x]."""

    if p.is_zero:
        return q.is_zero
    if q.is_zero:
        return True
    quo, rem = q.to_sympy().div(p.to_sympy())
    return rem.is_zero and all(c.is_integer for c in quo.all_coeffs())


def verify_cyclotomic_factorization(n: int) -> bool:
    """Check ∏_{d|N} Φ_d = x^N - 1 exactly."""

    product = ONE
    for d in divisors(n):
        product = product * cyclotomic(d)
    if product != cycle_polynomial(n):
        raise InvariantViolation(f"cyclotomic factors of x^{n} - 1 multiply to {product}")
    return True


def residue_mod_cyclotomic(a: Sequence[int], d: int) -> Tuple[int, ...]:
    """Coefficients of a(x) mod Φ_d(x), lowest degree first.

    a(x) is folded modulo x^d - 1 (a multiple of Φ_d) and then divided by the monic Φ_d,
    all in integer arithmetic.
    """

    folded = [0] * d
    for i, c in enumerate(a):
        folded[i % d] += c
    phi = cyclotomic(d).coeffs
    deg = len(phi) - 1
    for top in range(d - 1, deg - 1, -1):
        lead = folded[top]
        if lead:
            shift = top - deg
            for k, p in enumerate(phi):
                folded[shift + k] -= lead * p
    return tuple(folded[:deg])


def in_cyclotomic_subspace(v: Sequence[int], d: int) -> bool:
    """v ∈ H_{Φ_d}, i.e. Φ_d divides v(x); the zero vector lies in every subspace."""

    if len(v) % d:
        raise ValueError(f"{d} does not divide {len(v)}")
    return not any(residue_mod_cyclotomic(v, d))


def gcd_with_cycle(a: Sequence[int]) -> IntPoly:
    """Monic gcd of a(x) and x^N - 1 as the product of the Φ_d (d | N) dividing a(x)."""

    if not any(a):
        raise ValueError("zero polynomial")
    result = ONE
    for d in divisors(len(a)):
        if in_cyclotomic_subspace(a, d):
            result = result * cyclotomic(d)
    return result


def circulant_matrix(a: Sequence[int]) -> IntMat:
    """M(a): the N×N matrix whose columns are a, rot(a), ..., rot^{N-1}(a)."""

    return IntMat.from_columns(rot_shift(a, k) for k in range(len(a)))


def cyclic_order(a: Sequence[int]) -> int:
    """co(a): rank of M(a), computed by elimination and from the gcd with x^N - 1."""

    n = len(a)
    if not any(a):
        raise ValueError("zero vector has no cyclic order")
    by_gcd = n - int(gcd_with_cycle(a).degree)
    by_rank = matrix_rank(circulant_matrix(a).columns())
    if by_gcd != by_rank:
        raise InvariantViolation(f"cyclic order of {tuple(a)}: rank {by_rank} but gcd gives {by_gcd}")
    return by_rank


def _resultant(f: IntPoly, g: IntPoly) -> int:
    if g.is_zero:
        return 0
    return int(f.to_sympy().resultant(g.to_sympy()))


def circulant_det_resultant(a: Sequence[int]) -> int:
    """Res(x^N - 1, a(x)) = ∏ a(ω) over the N-th roots of unity; checked against det M(a)."""

    res = _resultant(cycle_polynomial(len(a)), vec_to_poly(a))
    det = circulant_matrix(a).det()
    if res != det:
        raise InvariantViolation(f"resultant {res} differs from circulant determinant {det} for {tuple(a)}")
    return res


def negacyclic_det_resultant(a: Sequence[int]) -> int:
    """Res(x^N + 1, a(x)): the determinant of the signed (negacyclic) circulant of a."""

    return _resultant(cycle_polynomial(len(a), sign=1), vec_to_poly(a))


def cyclotomic_sublattice(n: int, d: int) -> Lattice:
    """Λ_{Φ_d} = H_{Φ_d} ∩ Z^N, spanned by ρ(Φ_d·xⁱ) for 0 ≤ i ≤ N-1-φ(d)."""

    if d < 1 or n % d:
        raise ValueError(f"{d} does not divide {n}")
    phi = cyclotomic(d)
    size = n - int(totient(d))
    if size == 0:
        raise ValueError(f"Λ_Φ{d} is the zero lattice in dimension {n}")
    shifted: List[IntVec] = []
    for i in range(size):
        shifted.append(poly_to_vec(IntPoly((0,) * i + phi.coeffs), n))
    lattice = hnf_canonicalize(shifted)
    logger.debug("Cyclotomic sublattice N=%d d=%d has rank %d", n, d, lattice.rank)
    if not all(divides(phi, vec_to_poly(col)) for col in lattice.columns()):
        raise InvariantViolation(f"basis of Λ_Φ{d} in dimension {n} leaves H_Φ{d}")
    return lattice
