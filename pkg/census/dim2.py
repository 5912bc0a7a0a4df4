"""Dimension-2 counts of well-rounded cyclic sublattices of Z².

Three views of the same number are kept side by side: the published closed forms (evaluated with
exact integer floors), a brute-force count obtained by two independent routes, and the quadratic
lower/upper bounds whose constants are held as rational enclosures.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, isqrt
from typing import Dict, Iterator, Optional, Set, Tuple

from core.lattice import Lattice, hnf_canonicalize
from core.linalg import IntVec, dot, norm_sq
from core.svp import minkowski_sanity, successive_minima
from core.utils import GuardExceeded, InvariantViolation, logger
from lattices.cyclic import circulant_lattice, is_cyclic

BRUTE_MAX_R = 60
# radii up to which the pruned HNF scan is re-run without pruning
UNPRUNED_SCAN_MAX_R = 8

# scale of the isqrt-based square-root enclosures (10^-30 before propagation)
_SQRT_SCALE = 10**30

# six-decimal constants as published: c_low², c_low¹, c_up², c_up¹
PUBLISHED_CONSTANTS: Dict[str, Fraction] = {
    "lower_quadratic": Fraction("0.200650"),
    "lower_linear": Fraction("3.035275"),
    "upper_quadratic": Fraction("0.267638"),
    "upper_linear": Fraction("1.673031"),
}

Enclosure = Tuple[Fraction, Fraction]


@dataclass(slots=True)
class Dim2Report:
    r: int
    f2_formula: int
    g2_formula: int
    brute_count: Optional[int]
    lower_bound: Enclosure
    upper_bound: Enclosure

    @property
    def discrepancy(self) -> Optional[int]:
        if self.brute_count is None:
            return None
        return self.brute_count - (self.f2_formula + self.g2_formula)

    @property
    def within_bounds(self) -> Optional[bool]:
        """lower ≤ brute ≤ upper, using the pessimistic end of each enclosure."""

        if self.brute_count is None:
            return None
        return self.lower_bound[1] <= self.brute_count <= self.upper_bound[0]

    def to_dict(self) -> Dict[str, object]:
        return {
            "r": self.r,
            "f2_formula": self.f2_formula,
            "g2_formula": self.g2_formula,
            "brute_count": self.brute_count,
            "discrepancy": self.discrepancy,
            "lower_bound": decimal_ceil(self.lower_bound[1]),
            "upper_bound": decimal_floor(self.upper_bound[0]),
            "within_bounds": self.within_bounds,
        }


def decimal_floor(value: Fraction, places: int = 6) -> str:
    scaled = floor(value * 10**places)
    return _fixed(scaled, places)


def decimal_ceil(value: Fraction, places: int = 6) -> str:
    scaled = ceil(value * 10**places)
    return _fixed(scaled, places)


def _fixed(scaled: int, places: int) -> str:
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


def _sqrt_enclosure(lo: Fraction, hi: Fraction) -> Enclosure:
    """Enclosure of √x for x in [lo, hi], lo ≥ 0."""

    s2 = _SQRT_SCALE * _SQRT_SCALE
    low = isqrt(floor(lo * s2))
    high = isqrt(ceil(hi * s2)) + 1
    return Fraction(low, _SQRT_SCALE), Fraction(high, _SQRT_SCALE)


@lru_cache(maxsize=None)
def theorem_constants() -> Dict[str, Enclosure]:
    """Rational enclosures of the four constants of the quadratic bounds."""

    r2_lo, r2_hi = _sqrt_enclosure(Fraction(2), Fraction(2))
    r3_lo, r3_hi = _sqrt_enclosure(Fraction(3), Fraction(3))
    t_lo, t_hi = _sqrt_enclosure(2 + r3_lo, 2 + r3_hi)  # √(2 + √3)
    return {
        # (4√(2+√3) - 3 - √3) / (8 + 4√3)
        "lower_quadratic": ((4 * t_lo - 3 - r3_hi) / (8 + 4 * r3_hi), (4 * t_hi - 3 - r3_lo) / (8 + 4 * r3_lo)),
        # (5 + √3 + 4√(2+√3)) / (2√(2+√3)) - 1/√2  =  (5 + √3)/(2√(2+√3)) + 2 - 1/√2
        "lower_linear": ((5 + r3_lo) / (2 * t_hi) + 2 - 1 / r2_lo, (5 + r3_hi) / (2 * t_lo) + 2 - 1 / r2_hi),
        # 1/√(2+√3) - 1/4
        "upper_quadratic": (1 / t_hi - Fraction(1, 4), 1 / t_lo - Fraction(1, 4)),
        # √(2+√3)/2 + 1/√2
        "upper_linear": (t_lo / 2 + 1 / r2_hi, t_hi / 2 + 1 / r2_lo),
    }


def bound_enclosures(r: int) -> Tuple[Enclosure, Enclosure]:
    c = theorem_constants()
    lower = (
        c["lower_quadratic"][0] * r * r - c["lower_linear"][1] * r,
        c["lower_quadratic"][1] * r * r - c["lower_linear"][0] * r,
    )
    upper = (
        c["upper_quadratic"][0] * r * r + c["upper_linear"][0] * r,
        c["upper_quadratic"][1] * r * r + c["upper_linear"][1] * r,
    )
    return lower, upper


def max_a(r: int) -> int:
    """A(R) = ⌊R / (2√(2+√3))⌋: the largest A with 4A²(2+√3) ≤ R²."""

    a = 0
    while True:
        nxt = a + 1
        rest = r * r - 8 * nxt * nxt
        if rest < 0 or 48 * nxt**4 > rest * rest:
            return a
        a = nxt


def floor_two_plus_root3(a: int) -> int:
    """⌊(2+√3)a⌋ for a ≥ 0."""

    return 2 * a + isqrt(3 * a * a)


def f2_formula(r: int) -> int:
    total = 0
    for a2 in range(1, max_a(r) + 1):
        total += isqrt(r * r - a2 * a2) - floor_two_plus_root3(a2) - 1
    return 2 * total


def g2_formula(r: int) -> int:
    """⌊R/√2⌋."""

    return isqrt(r * r // 2)


def gauss_reduce(u: IntVec, v: IntVec) -> Tuple[IntVec, IntVec]:
    """Lagrange reduction of a rank-2 basis; returns (b1, b2) with ‖b1‖ = λ_1 and ‖b2‖ = λ_2."""

    if norm_sq(u) > norm_sq(v):
        u, v = v, u
    while True:
        n = norm_sq(u)
        # nearest integer to <u, v> / ‖u‖²
        q = (2 * dot(u, v) + n) // (2 * n)
        v = tuple(y - q * x for x, y in zip(u, v))
        if norm_sq(v) >= n:
            return u, v
        u, v = v, u


def _wr_norm(lattice: Lattice, bound: int) -> Optional[int]:
    """λ² when the rank-2 lattice is well-rounded with λ² ≤ bound, else None."""

    b1, b2 = gauss_reduce(*lattice.columns())
    norm = norm_sq(b1)
    if norm != norm_sq(b2) or norm > bound:
        return None
    return norm


def _classification_keys(r_max: int) -> Dict[Lattice, int]:
    """Λ(a) over the reduction region plus the α·[(1,1),(1,-1)] family, each with λ²."""

    bound = r_max * r_max
    found: Dict[Lattice, int] = {}
    for a1 in range(-r_max, r_max + 1):
        for a2 in range(-r_max, r_max + 1):
            norm = a1 * a1 + a2 * a2
            if norm == 0 or norm > bound or abs(a1) == abs(a2):
                continue
            if norm < 4 * abs(a1 * a2):
                continue
            found.setdefault(circulant_lattice((a1, a2)), norm)
    alpha = 1
    while 2 * alpha * alpha <= bound:
        found[hnf_canonicalize([(alpha, alpha), (alpha, -alpha)])] = 2 * alpha * alpha
        alpha += 1
    return found


def _hnf_candidates(r_max: int, pruned: bool) -> Iterator[Tuple[int, int, int]]:
    """(d1, x, d2) for HNF keys [[d1, 0], [x, d2]] with d1·d2 ≤ R² and 0 ≤ x < d2.

    The pruned stream keeps only keys with d1 | d2, d1 | x and rot((d1, x)) ∈ L, which every
    cyclic lattice satisfies since rot((0, d2)) = (d2, 0) and rot((d1, x)) = (x, d1) must lie in L.
    """

    bound = r_max * r_max
    for d1 in range(1, bound + 1):
        if pruned:
            if d1 * d1 > bound:
                return
            for m in range(1, bound // (d1 * d1) + 1):
                d2 = d1 * m
                for t in range(m):
                    if (1 - t * t) % m == 0:
                        yield d1, d1 * t, d2
        else:
            for d2 in range(1, bound // d1 + 1):
                for x in range(d2):
                    yield d1, x, d2


def _hnf_scan_keys(r_max: int, pruned: bool = True) -> Dict[Lattice, int]:
    """All cyclic well-rounded HNF sublattices of Z² with λ ≤ R, found by scanning keys."""

    bound = r_max * r_max
    found: Dict[Lattice, int] = {}
    for d1, x, d2 in _hnf_candidates(r_max, pruned):
        lattice = hnf_canonicalize([(d1, x), (0, d2)])
        if not is_cyclic(lattice):
            continue
        norm = _wr_norm(lattice, bound)
        if norm is not None:
            found[lattice] = norm
    return found


def _check_classified(lattices: Dict[Lattice, int]) -> None:
    for lattice, norm in lattices.items():
        result = successive_minima(lattice)
        if result.lambda_sq != (norm, norm):
            raise InvariantViolation(f"classified lattice {lattice.key_list()} does not have λ² = ({norm}, {norm})")
        if not minkowski_sanity(lattice, result):
            raise InvariantViolation(f"Minkowski bounds fail for {lattice.key_list()}")


# counts for R = 1..len; extended in place when a larger radius is requested
_BRUTE_TABLE: Dict[int, int] = {}


def _extend_brute_table(r_max: int) -> None:
    by_classification = _classification_keys(r_max)
    by_scan = _hnf_scan_keys(r_max)
    if r_max <= UNPRUNED_SCAN_MAX_R and _hnf_scan_keys(r_max, pruned=False) != by_scan:
        raise InvariantViolation(f"pruned and unpruned HNF scans disagree at R={r_max}")
    _check_classified(by_classification)
    for r in range(len(_BRUTE_TABLE) + 1, r_max + 1):
        bound = r * r
        first: Set[Lattice] = {lat for lat, norm in by_classification.items() if norm <= bound}
        second: Set[Lattice] = {lat for lat, norm in by_scan.items() if norm <= bound}
        if first != second:
            raise InvariantViolation(
                f"dimension-2 routes disagree at R={r}: {len(first)} classified vs {len(second)} scanned"
            )
        _BRUTE_TABLE[r] = len(first)
    logger.info("Dimension-2 brute table computed up to R=%d (%d lattices)", r_max, _BRUTE_TABLE[r_max])


def dim2_brute_table(r_max: int) -> Dict[int, int]:
    """Brute counts for every 1 ≤ R ≤ r_max, with both routes compared radius by radius."""

    if r_max < 1:
        raise ValueError("R must be positive")
    if r_max > BRUTE_MAX_R:
        raise GuardExceeded(f"dimension-2 brute oracle is limited to R ≤ {BRUTE_MAX_R}", suggested_r=BRUTE_MAX_R)
    if r_max > len(_BRUTE_TABLE):
        _extend_brute_table(r_max)
    return {r: _BRUTE_TABLE[r] for r in range(1, r_max + 1)}


def dim2_brute(r: int) -> int:
    return dim2_brute_table(r)[r]


def dim2_closed_forms(r: int) -> Dim2Report:
    if r < 1:
        raise ValueError("R must be positive")
    lower, upper = bound_enclosures(r)
    report = Dim2Report(
        r=r,
        f2_formula=f2_formula(r),
        g2_formula=g2_formula(r),
        brute_count=dim2_brute(r) if r <= BRUTE_MAX_R else None,
        lower_bound=lower,
        upper_bound=upper,
    )
    if report.discrepancy:
        logger.info(
            "R=%d: brute count %d differs from f2+g2 = %d by %d",
            r,
            report.brute_count,
            report.f2_formula + report.g2_formula,
            report.discrepancy,
        )
    return report
