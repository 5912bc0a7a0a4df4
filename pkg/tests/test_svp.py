from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import isqrt

import pytest

from core.lattice import hnf_canonicalize, standard_lattice
from core.linalg import canonical_sign, gram_det, norm_sq
from core.svp import (
    PI_HI,
    PI_LO,
    enumerate_short,
    is_minkowskian,
    is_well_rounded,
    is_wr_prime,
    minimal_vectors,
    minkowski_sanity,
    minkowskian_index,
    successive_minima,
    unit_ball_volume,
)
from lattices.cyclic import circulant_lattice

CHECKERBOARD_5 = hnf_canonicalize(
    [tuple(2 if i == j else 0 for i in range(5)) for j in range(5)] + [(1, 1, 1, 1, 1)]
)


def test_enumerate_short_examples():
    z2 = standard_lattice(2)
    assert enumerate_short(z2, 1) == {(1, 0), (0, 1)}
    assert enumerate_short(z2, 0) == set()
    assert enumerate_short(circulant_lattice((4, 1)), 17) == {(4, 1), (1, 4)}


@pytest.mark.parametrize(
    "lattice, expected",
    [
        (standard_lattice(2), (1, 1)),
        (hnf_canonicalize([(1, 1), (2, -2)]), (2, 8)),
        (circulant_lattice((4, 1)), (17, 17)),
        (standard_lattice(3, scale=3), (9, 9, 9)),
    ],
)
def test_successive_minima(lattice, expected):
    assert successive_minima(lattice).lambda_sq == expected


def test_minimal_vectors_of_rotation_lattice():
    lambda1_sq, reps = minimal_vectors(circulant_lattice((4, 1)))
    assert lambda1_sq == 17
    assert reps == ((1, 4), (4, 1))
    assert successive_minima(circulant_lattice((4, 1))).minimal_count == 4


@pytest.mark.parametrize(
    "lattice, wr, wr_prime",
    [
        (standard_lattice(4), True, True),
        (hnf_canonicalize([(1, 1), (2, -2)]), False, False),
        (circulant_lattice((4, 1)), True, True),
        (CHECKERBOARD_5, True, False),
    ],
)
def test_well_rounded_predicates(lattice, wr, wr_prime):
    assert is_well_rounded(lattice) is wr
    assert is_wr_prime(lattice) is wr_prime


def test_minkowskian_examples():
    assert is_minkowskian(hnf_canonicalize([(3, 1), (1, 5)]))
    assert is_minkowskian(standard_lattice(5))
    assert is_minkowskian(circulant_lattice((31, 1, 1)))
    with pytest.raises(ValueError, match="search too large"):
        is_minkowskian(standard_lattice(9))


def test_non_minkowskian_rank_five():
    # λ_1 = ... = λ_5 = 2 is attained only by the 2e_i, which span an index-2 sublattice
    assert successive_minima(CHECKERBOARD_5).lambda_sq == (4, 4, 4, 4, 4)
    assert not is_minkowskian(CHECKERBOARD_5)
    assert minkowskian_index(CHECKERBOARD_5) == 2
    assert minkowskian_index(standard_lattice(3)) == 1


def test_unit_ball_volume_enclosures():
    lo, hi = unit_ball_volume(2)
    assert (lo, hi) == (PI_LO, PI_HI)
    lo, hi = unit_ball_volume(3)
    assert lo == Fraction(4, 3) * PI_LO and hi == Fraction(4, 3) * PI_HI
    lo, hi = unit_ball_volume(1)
    assert lo == hi == 2
    with pytest.raises(ValueError):
        unit_ball_volume(0)


@pytest.mark.parametrize(
    "lattice",
    [standard_lattice(2), circulant_lattice((4, 1)), standard_lattice(3, scale=3), CHECKERBOARD_5],
)
def test_minkowski_sanity(lattice):
    assert minkowski_sanity(lattice)


def _naive_short(lattice, bound_sq):
    reach = isqrt(bound_sq)
    found = set()
    for v in product(range(-reach, reach + 1), repeat=lattice.ambient_dim):
        if any(v) and norm_sq(v) <= bound_sq and lattice.contains(v):
            found.add(canonical_sign(v))
    return found


@pytest.mark.slow
def test_enumeration_matches_naive_scan(rng):
    checked = 0
    while checked < 200:
        dim = rng.choice([2, 3])
        rank = rng.randint(2, dim)
        gens = [tuple(rng.randint(-5, 5) for _ in range(dim)) for _ in range(rank)]
        if gram_det(gens) == 0:
            continue
        lattice = hnf_canonicalize(gens)
        bound = min(max(norm_sq(g) for g in gens), 40)
        assert enumerate_short(lattice, bound) == _naive_short(lattice, bound)
        checked += 1


def test_lambda1_is_invariant_under_unimodular_basis_change(rng, unimodular_mix):
    checked = 0
    while checked < 40:
        dim = rng.choice([2, 3])
        gens = [tuple(rng.randint(-5, 5) for _ in range(dim)) for _ in range(dim)]
        if gram_det(gens) == 0:
            continue
        lattice = hnf_canonicalize(gens)
        mixed = hnf_canonicalize(unimodular_mix(lattice.columns()))
        assert mixed == lattice
        assert minimal_vectors(mixed)[0] == minimal_vectors(lattice)[0]
        assert minimal_vectors(hnf_canonicalize(unimodular_mix(gens)))[0] == successive_minima(lattice).lambda_sq[0]
        checked += 1


def test_wr_prime_implies_wr(rng):
    lattices = [standard_lattice(3), CHECKERBOARD_5, circulant_lattice((4, 1)), circulant_lattice((3, 1, 1))]
    while len(lattices) < 60:
        dim = rng.choice([2, 3])
        gens = [tuple(rng.randint(-4, 4) for _ in range(dim)) for _ in range(dim)]
        if gram_det(gens):
            lattices.append(hnf_canonicalize(gens))
    lattices.extend(circulant_lattice(a) for a in product(range(-2, 3), repeat=3) if any(a))
    for lattice in lattices:
        if is_wr_prime(lattice):
            assert is_well_rounded(lattice)
