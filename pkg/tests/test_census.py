from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import pytest
from sympy import totient

from census import engine as census_engine
from census.engine import CensusEngine, ProbReport
from core.lattice import standard_lattice
from core.records import CensusRecord
from core.utils import GuardExceeded, InvariantViolation, Settings
from lattices.cyclic import circulant_lattice
from lattices.perm import Permutation, parse_cycles


def _ncycles(n):
    for rest in permutations(range(2, n + 1)):
        order = (1,) + rest
        image = [0] * n
        for i, j in zip(order, order[1:] + order[:1]):
            image[i - 1] = j
        yield Permutation(tuple(image))


def test_census_n2_r3(engine):
    record = engine.census_circulant(2, 3)
    assert record.counts() == {
        "count_vectors": 12,
        "count_lattices": 3,
        "count_wr": 3,
        "count_wr_prime": 3,
        "count_rprime": 3,
        "max_multiplicity": 2,
    }
    assert set(record.lattice_keys) == {standard_lattice(2, c).hnf_key for c in (1, 2, 3)}


def test_census_n2_r5(engine):
    record = engine.census_circulant(2, 5)
    assert record.count_lattices == 7
    assert record.count_vectors == 28
    expected = {standard_lattice(2, c).hnf_key for c in range(1, 6)}
    expected |= {circulant_lattice((4, 1)).hnf_key, circulant_lattice((-4, 1)).hnf_key}
    assert set(record.lattice_keys) == expected
    assert list(record.lattice_keys) == sorted(record.lattice_keys)


@pytest.mark.parametrize("n", [2, 3])
def test_census_radius_zero_is_empty(engine, n):
    record = engine.census_circulant(n, 0)
    assert all(value == 0 for value in record.counts().values())
    assert record.lattice_keys == ()


def test_census_counts_monotone_in_r(engine):
    records = [engine.census_circulant(2, r) for r in range(1, 6)]
    for smaller, larger in zip(records, records[1:]):
        assert all(smaller.counts()[name] <= larger.counts()[name] for name in smaller.counts())


def test_census_is_independent_of_worker_count(settings):
    single = CensusEngine(settings, workers=1).census_circulant(3, 2)
    pooled = CensusEngine(settings, workers=2).census_circulant(3, 2)
    many = CensusEngine(settings, workers=8).census_circulant(3, 2)
    assert single == pooled == many


def test_record_ordering_check():
    CensusRecord(n=2, r=1, count_vectors=4, count_lattices=1, count_wr=1, count_wr_prime=1, count_rprime=1).check_ordering()
    with pytest.raises(InvariantViolation):
        CensusRecord(n=2, r=1, count_vectors=1, count_lattices=2).check_ordering()


def test_guard_suggests_smaller_radius(settings):
    small = Settings(guard=100, workers=1, database_url=settings.database_url)
    with pytest.raises(GuardExceeded) as info:
        CensusEngine(small).census_circulant(3, 2)
    assert info.value.suggested_r == 1
    assert "R <= 1" in str(info.value)


def test_engine_rejects_bad_input(settings):
    with pytest.raises(ValueError):
        CensusEngine(settings, workers=0)
    with pytest.raises(ValueError):
        CensusEngine(settings).census_circulant(1, 2)
    with pytest.raises(ValueError):
        CensusEngine(settings).census_circulant(2, -1)


@pytest.mark.parametrize(
    "n, r, fraction, bound",
    [(2, 1, Fraction(4, 9), Fraction(1, 3)), (2, 2, Fraction(16, 25), Fraction(3, 5)), (3, 1, Fraction(18, 27), 0)],
)
def test_prob_full_rank_examples(engine, n, r, fraction, bound):
    report = engine.prob_full_rank(n, r)
    assert report.fraction == fraction
    assert report.bound == bound
    assert report.ok


def test_prob_hit_counts(engine):
    report = engine.prob_full_rank(3, 1)
    assert report.hits == {1: 7, 3: 3}
    assert report.full == 18 and report.total == 27
    payload = report.to_dict()
    assert payload["fraction"] == "2/3"
    assert payload["bound"] == "0"
    assert payload["hits"] == {"1": 7, "3": 3}


def test_prob_is_independent_of_worker_count(settings):
    one = CensusEngine(settings, workers=1).prob_full_rank(4, 2)
    three = CensusEngine(settings, workers=3).prob_full_rank(4, 2)
    assert one.to_dict() == three.to_dict()


def test_growth_table(engine):
    rows = engine.growth_table(2, [1, 5])
    assert [(row.r, row.count) for row in rows] == [(1, 1), (5, 7)]
    assert rows[0].ratio == 1
    assert rows[1].ratio == Fraction(7, 25)
    with pytest.raises(ValueError):
        engine.growth_table(2, [0])


def test_tau_census_identity_conjugation(engine):
    sigma = Permutation.ncycle(3)
    assert engine.tau_census(3, sigma, 2) == engine.census_circulant(3, 2)


@pytest.mark.parametrize("n, tau, r", [(3, "(1 3 2)", 3), (4, "(1 3 2 4)", 2)])
def test_tau_census_matches_circulant(engine, n, tau, r):
    record = engine.tau_census(n, parse_cycles(tau, n), r)
    assert record.counts() == engine.census_circulant(n, r).counts()


def test_tau_census_rejects_non_cycles(engine):
    with pytest.raises(ValueError):
        engine.tau_census(3, parse_cycles("(1 2)", 3), 1)
    with pytest.raises(ValueError):
        engine.tau_census(4, Permutation.ncycle(3), 1)


@pytest.mark.slow
@pytest.mark.parametrize("n", [3, 4])
def test_tau_census_for_every_ncycle(engine, n):
    baseline = engine.census_circulant(n, 3)
    for tau in _ncycles(n):
        assert engine.tau_census(n, tau, 3).counts() == baseline.counts()


@pytest.mark.slow
def test_prob_bound_holds_on_small_grid(engine):
    for n in range(2, 6):
        for r in range(1, 6):
            if 2 * r > n - 1:
                assert engine.prob_full_rank(n, r).ok


@pytest.mark.slow
def test_growth_ratio_is_stable_for_n3(engine):
    rows = engine.growth_table(3, [3, 4, 5, 6])
    ratios = [row.ratio for row in rows]
    assert min(ratios) > 0
    assert max(ratios) / min(ratios) < 10


def test_prob_report_ok_follows_comparison():
    assert not ProbReport(n=2, r=1, full=2, total=9).ok
    assert ProbReport(n=2, r=1, full=3, total=9).ok


@pytest.mark.parametrize("n, r", [(2, 3), (3, 2), (4, 1), (6, 1)])
def test_prob_divisor_hits_respect_caps(engine, n, r):
    report = engine.prob_full_rank(n, r)
    side = 2 * r + 1
    caps = {d: side ** (n - int(totient(d))) for d in report.hits}
    assert all(report.hits[d] <= caps[d] for d in caps)
    assert report.total - report.full <= sum(report.hits.values()) <= n * side ** (n - 1)


def test_prob_rejects_hits_past_the_cap(engine, monkeypatch):
    # 4 points on the line Λ_Φ1 of Z² cannot fit in a cube of side 3
    monkeypatch.setattr(census_engine, "_sweep_hits", lambda task: (5, 4, {1: 4, 2: 0}))
    with pytest.raises(InvariantViolation):
        engine.prob_full_rank(2, 1)
