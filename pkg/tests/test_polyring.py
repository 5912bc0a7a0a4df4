from __future__ import annotations

from itertools import product

import pytest
from sympy import divisors

from core.lattice import hnf_canonicalize
from core.linalg import matrix_rank
from core.polyring import (
    ONE,
    IntPoly,
    circulant_det_resultant,
    circulant_matrix,
    cyclic_order,
    cyclotomic,
    cyclotomic_sublattice,
    divides,
    gcd_with_cycle,
    in_cyclotomic_subspace,
    mul_x_mod,
    negacyclic_det_resultant,
    poly_to_vec,
    residue_mod_cyclotomic,
    vec_to_poly,
    verify_cyclotomic_factorization,
)


def test_vector_polynomial_correspondence():
    assert vec_to_poly((1, 0, 2)).coeffs == (1, 0, 2)
    assert vec_to_poly((0, 0)).is_zero
    assert poly_to_vec(vec_to_poly((0, 3, 0)), 3) == (0, 3, 0)
    with pytest.raises(ValueError, match="degree overflow"):
        poly_to_vec(IntPoly((1, 2, 3)), 2)


def test_multiplication_by_x_is_rotation():
    assert poly_to_vec(mul_x_mod(vec_to_poly((3, 1, 4)), 3), 3) == (4, 3, 1)


@pytest.mark.parametrize("d, coeffs", [(1, (-1, 1)), (2, (1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1))])
def test_cyclotomic(d, coeffs):
    assert cyclotomic(d).coeffs == coeffs


@pytest.mark.parametrize("n", range(1, 13))
def test_cyclotomic_factorization(n):
    assert verify_cyclotomic_factorization(n)


@pytest.mark.parametrize(
    "a, expected",
    [
        ((1, 1), IntPoly((1, 1))),
        ((1, 0, 0), ONE),
        ((1, 0, 1, 0), IntPoly((1, 0, 1))),
    ],
)
def test_gcd_with_cycle(a, expected):
    assert gcd_with_cycle(a) == expected


def test_gcd_of_zero_rejected():
    with pytest.raises(ValueError, match="zero polynomial"):
        gcd_with_cycle((0, 0, 0))


@pytest.mark.parametrize(
    "a, order",
    [((1, 1, 1), 1), ((1, 0, 0), 3), ((1, 0, 1, 0), 2), ((1, 1, 0, 0), 3), ((4, 1), 2), ((1, -1), 1)],
)
def test_cyclic_order(a, order):
    assert cyclic_order(a) == order


def test_cyclic_order_of_zero_rejected():
    with pytest.raises(ValueError):
        cyclic_order((0, 0))


@pytest.mark.parametrize("a, det", [((2, 1), 3), ((1, 0, 0), 1), ((1, 1, 0), 2), ((1, 1, 1), 0)])
def test_circulant_det_resultant(a, det):
    assert circulant_det_resultant(a) == det


def test_negacyclic_resultant():
    assert abs(negacyclic_det_resultant((1, 2))) == 5
    assert abs(negacyclic_det_resultant((1, 1, 0, 0))) == 2


def test_cyclotomic_sublattices():
    assert cyclotomic_sublattice(2, 1) == hnf_canonicalize([(-1, 1)])
    assert cyclotomic_sublattice(2, 2) == hnf_canonicalize([(1, 1)])
    phi4 = cyclotomic_sublattice(4, 4)
    assert phi4.rank == 2
    assert phi4 == hnf_canonicalize([(1, 0, 1, 0), (0, 1, 0, 1)])
    with pytest.raises(ValueError):
        cyclotomic_sublattice(4, 3)


def test_cyclotomic_sublattice_matches_subspace_scan():
    lattice = cyclotomic_sublattice(2, 1)
    for v in product(range(-3, 4), repeat=2):
        assert lattice.contains(v) == in_cyclotomic_subspace(v, 1)


def test_residue_matches_polynomial_division(rng):
    for _ in range(200):
        n = rng.randint(2, 12)
        a = tuple(rng.randint(-4, 4) for _ in range(n))
        for d in divisors(n):
            assert in_cyclotomic_subspace(a, d) == divides(cyclotomic(d), vec_to_poly(a))
            assert len(residue_mod_cyclotomic(a, d)) == len(cyclotomic(d).coeffs) - 1


def test_subspace_requires_divisor():
    with pytest.raises(ValueError):
        in_cyclotomic_subspace((1, 2, 3), 2)


def _check_circulant_identities(a):
    circulant_det_resultant(a)
    order = cyclic_order(a)
    assert order == matrix_rank(circulant_matrix(a).columns())
    assert order == len(a) - gcd_with_cycle(a).degree


@pytest.mark.slow
@pytest.mark.parametrize("n", [2, 3, 4])
def test_circulant_identities_exhaustive(n):
    for a in product(range(-3, 4), repeat=n):
        if any(a):
            _check_circulant_identities(a)


@pytest.mark.slow
def test_circulant_identities_random(rng):
    for _ in range(1000):
        n = rng.randint(2, 8)
        a = tuple(rng.randint(-100, 100) for _ in range(n))
        if any(a):
            _check_circulant_identities(a)
