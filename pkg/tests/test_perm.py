from __future__ import annotations

from itertools import permutations

import pytest

from core.lattice import hnf_canonicalize, standard_lattice
from core.linalg import rot_shift
from core.polyring import cyclic_order
from core.svp import successive_minima
from lattices.cyclic import circulant_lattice
from lattices.perm import (
    Permutation,
    SignedPermutation,
    apply,
    conjugator_for_ncycle,
    dim2_signed_wr_check,
    is_invariant,
    is_signed_invariant,
    orbit_rank,
    parse_cycles,
    perm_matrix,
    permute_lattice,
    signed_circulant_lattice,
    signed_shift,
)


def _ncycles(n):
    for rest in permutations(range(2, n + 1)):
        order = (1,) + rest
        image = [0] * n
        for i, j in zip(order, order[1:] + order[:1]):
            image[i - 1] = j
        yield Permutation(tuple(image))


def test_ncycle_acts_as_rotation():
    x = (5, -1, 7, 2)
    assert apply(Permutation.ncycle(4), x) == rot_shift(x)
    assert perm_matrix(Permutation.ncycle(4)).apply(x) == rot_shift(x)


def test_identity_and_transposition():
    assert apply(Permutation.identity(3), (7, 8, 9)) == (7, 8, 9)
    assert apply(parse_cycles("(1 2)", 3), (7, 8, 9)) == (8, 7, 9)


def test_permutation_validation():
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))
    with pytest.raises(ValueError):
        apply(Permutation.identity(3), (1, 2))


def test_composition_matches_matrix_product(rng):
    for _ in range(20):
        sigma, tau = Permutation.random(5, rng), Permutation.random(5, rng)
        assert perm_matrix(sigma * tau) == perm_matrix(sigma).matmul(perm_matrix(tau))
        assert sigma.compose(sigma.inverse()) == Permutation.identity(5)
        assert sigma.power(sigma.order) == Permutation.identity(5)


@pytest.mark.parametrize(
    "text, n, image",
    [
        ("(1 3 2)", 3, (3, 1, 2)),
        ("( 1  2 )(3 4)", 4, (2, 1, 4, 3)),
        ("(1,2,3)", 3, (2, 3, 1)),
        ("(2)", 3, (1, 2, 3)),
    ],
)
def test_parse_cycles(text, n, image):
    assert parse_cycles(text, n).image == image


@pytest.mark.parametrize("text", ["", "1 2", "(1 2)(2 3)", "(1 4)", "(1 x)"])
def test_parse_cycles_rejects(text):
    with pytest.raises(ValueError):
        parse_cycles(text, 3)


def test_cycle_notation_roundtrip():
    tau = parse_cycles("(1 3 2 4)", 4)
    assert str(tau) == "(1 3 2 4)"
    assert tau.is_ncycle()
    assert not parse_cycles("(1 2)(3 4)", 4).is_ncycle()
    assert str(Permutation.identity(3)) == "()"


@pytest.mark.parametrize(
    "lattice, tau, expected",
    [
        (standard_lattice(3), "(1 3 2)", True),
        (hnf_canonicalize([(1, 0), (0, 2)]), "(1 2)", False),
        (hnf_canonicalize([(1, 1), (1, -1)]), "(1 2)", True),
    ],
)
def test_is_invariant(lattice, tau, expected):
    assert is_invariant(lattice, parse_cycles(tau, lattice.ambient_dim)) is expected


@pytest.mark.parametrize(
    "tau, n, g_image",
    [("(1 2 3)", 3, (1, 2, 3)), ("(1 3 2)", 3, (1, 3, 2)), ("(1 3 2 4)", 4, (1, 3, 2, 4))],
)
def test_conjugator_for_ncycle(tau, n, g_image):
    assert conjugator_for_ncycle(parse_cycles(tau, n)).image == g_image


def test_conjugator_requires_ncycle():
    with pytest.raises(ValueError):
        conjugator_for_ncycle(parse_cycles("(1 2)", 3))


@pytest.mark.parametrize("n", [3, 4])
def test_conjugation_maps_cyclic_lattices_to_invariant_ones(n):
    sources = [circulant_lattice(a) for a in [(2, 1, 0, 0)[:n], (3, -1, 1, 0)[:n], (1, 0, 0, 0)[:n]]]
    for tau in _ncycles(n):
        g = conjugator_for_ncycle(tau)
        images = [permute_lattice(lattice, g) for lattice in sources]
        assert all(is_invariant(image, tau) for image in images)
        assert len({image.hnf_key for image in images}) == len({lattice.hnf_key for lattice in sources})


def test_permuted_lattices_are_isometric(rng):
    for a in [(4, 1, 0), (3, -2, 1), (5, 1, 1)]:
        lattice = circulant_lattice(a)
        for _ in range(5):
            tau = Permutation.random(3, rng)
            assert successive_minima(permute_lattice(lattice, tau)).lambda_sq == successive_minima(lattice).lambda_sq


def _closure(generators, perms):
    lattice = hnf_canonicalize(generators)
    while True:
        grown = hnf_canonicalize(lattice.columns() + [apply(p, c) for p in perms for c in lattice.columns()])
        if grown == lattice:
            return lattice
        lattice = grown


def test_invariance_is_closed_under_composition():
    sigma, tau = parse_cycles("(1 2)", 4), parse_cycles("(3 4)", 4)
    lattice = _closure([(3, 1, 0, 2)], [sigma, tau])
    assert is_invariant(lattice, sigma) and is_invariant(lattice, tau)
    assert is_invariant(lattice, sigma * tau)


def test_transposition_and_ncycle_generate_everything(rng):
    n = 4
    lattice = _closure([(2, 1, 0, 0)], [parse_cycles("(1 2)", n), Permutation.ncycle(n)])
    for _ in range(20):
        assert is_invariant(lattice, Permutation.random(n, rng))


def test_orbit_rank_matches_cyclic_order():
    sigma = Permutation.ncycle(4)
    for x in [(1, 0, 1, 0), (1, 1, 0, 0), (1, 1, 1, 1), (2, 1, 0, 0)]:
        assert orbit_rank(x, sigma) == cyclic_order(x)


def test_signed_shift_and_lattices():
    assert signed_shift((1, 2, 3)) == (-3, 1, 2)
    lattice = signed_circulant_lattice((1, 2))
    assert lattice == hnf_canonicalize([(1, 2), (-2, 1)])
    assert lattice.det() == 5
    assert signed_circulant_lattice((1, 0, 0)) == standard_lattice(3)
    quartic = signed_circulant_lattice((1, 1, 0, 0))
    assert quartic.rank == 4 and quartic.det() == 2
    assert is_signed_invariant(quartic, SignedPermutation.negacyclic(4))
    with pytest.raises(ValueError):
        signed_circulant_lattice((0, 0))


def test_signed_permutation_matrix():
    negacyclic = SignedPermutation.negacyclic(3)
    x = (1, 2, 3)
    assert negacyclic(x) == signed_shift(x)
    assert negacyclic.matrix().apply(x) == signed_shift(x)
    with pytest.raises(ValueError):
        SignedPermutation(Permutation.identity(2), (1, 2))


@pytest.mark.parametrize("a, b, lambda_sq", [(1, 2, (5, 5)), (1, 0, (1, 1)), (2, 2, (8, 8))])
def test_dim2_signed_examples(a, b, lambda_sq):
    assert dim2_signed_wr_check(a, b)
    assert successive_minima(hnf_canonicalize([(a, b), (-b, a)])).lambda_sq == lambda_sq


def test_dim2_signed_rejects_zero():
    with pytest.raises(ValueError):
        dim2_signed_wr_check(0, 0)


@pytest.mark.slow
def test_dim2_signed_always_well_rounded():
    for a in range(-20, 21):
        for b in range(-20, 21):
            if (a, b) != (0, 0):
                assert dim2_signed_wr_check(a, b)
