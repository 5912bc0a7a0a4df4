"""Census sweeps over the integer cube [-R, R]^N.

Sweeps split the lexicographic cube stream by first coordinate into contiguous slices, one per
worker. Workers return partial tables keyed by HNF key; merging is a union with summed counters
and a minimum representative, so the merged result does not depend on the worker count.
"""
from __future__ import annotations

import multiprocessing
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

from sympy import divisors, integer_nthroot, totient

from core.lattice import Lattice
from core.linalg import IntVec, cube_points, cube_size, neg, norm_sq, rotations
from core.polyring import in_cyclotomic_subspace
from core.records.record import CensusRecord, Key
from core.svp import is_well_rounded, is_wr_prime, minimal_vectors, minkowski_sanity
from core.utils import GuardExceeded, InvariantViolation, Settings, get_census_logger, split_contiguous
from lattices.cyclic import circulant_lattice, in_D_N, in_R_N, in_rprime
from lattices.perm import Permutation, apply, conjugator_for_ncycle, is_invariant, orbit_rank, permute_lattice

Partial = Dict[Key, Tuple[IntVec, int]]
T = TypeVar("T")


@dataclass(slots=True)
class LatticeEntry:
    key: Key
    representative: IntVec
    vectors: int


@dataclass(slots=True)
class ProbReport:
    n: int
    r: int
    full: int
    total: int
    hits: Dict[int, int] = field(default_factory=dict)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.full, self.total)

    @property
    def bound(self) -> Fraction:
        return 1 - Fraction(self.n, 2 * self.r + 1)

    @property
    def ok(self) -> bool:
        return self.fraction >= self.bound

    def to_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "r": self.r,
            "fraction": str(self.fraction),
            "bound": str(self.bound),
            "ok": self.ok,
            "full": self.full,
            "total": self.total,
            "hits": {str(d): count for d, count in sorted(self.hits.items())},
        }


@dataclass(slots=True)
class GrowthRow:
    r: int
    count: int
    ratio: Fraction


def _orbit_key(a: IntVec) -> IntVec:
    """Smallest element of {±rot^k(a)}; every member generates the same lattice."""

    return min(min(rotations(a)), min(rotations(neg(a))))


def _sweep_circulant(task: Tuple[int, int, Sequence[int]]) -> Partial:
    n, r, heads = task
    bound = r * r
    verdicts: Dict[IntVec, Optional[Key]] = {}
    partial: Partial = {}
    for a in cube_points(n, r, heads):
        norm = norm_sq(a)
        if norm == 0 or norm > bound:
            continue
        orbit = _orbit_key(a)
        if orbit not in verdicts:
            verdicts[orbit] = circulant_lattice(a).hnf_key if in_R_N(a) else None
        key = verdicts[orbit]
        if key is None:
            continue
        rep, count = partial.get(key, (a, 0))
        partial[key] = (min(rep, a), count + 1)
    return partial


def _sweep_hits(task: Tuple[int, int, Sequence[int]]) -> Tuple[int, int, Dict[int, int]]:
    n, r, heads = task
    divs = [int(d) for d in divisors(n)]
    hits = {d: 0 for d in divs}
    full = union = 0
    for a in cube_points(n, r, heads):
        inside = [d for d in divs if in_cyclotomic_subspace(a, d)]
        if inside:
            union += 1
            for d in inside:
                hits[d] += 1
        else:
            full += 1
    return full, union, hits


def _make_executor(workers: int) -> Optional[Executor]:
    try:
        return ProcessPoolExecutor(max_workers=workers, mp_context=multiprocessing.get_context("fork"))
    except ValueError:
        return None


class CensusEngine:
    def __init__(self, settings: Settings, workers: Optional[int] = None) -> None:
        self.settings = settings
        self.workers = workers if workers is not None else settings.workers
        if self.workers < 1:
            raise ValueError("worker count must be positive")
        self.logger = get_census_logger(settings.log_dir)
        self.logger.debug("Census engine initialized (workers=%d, guard=%d)", self.workers, settings.guard)

    def check_guard(self, n: int, r: int) -> None:
        if n < 2:
            raise ValueError("dimension must be at least 2")
        if r < 0:
            raise ValueError("R must be nonnegative")
        points = cube_size(n, r)
        if points > self.settings.guard:
            root, _ = integer_nthroot(self.settings.guard, n)
            suggested = max((int(root) - 1) // 2, 0)
            raise GuardExceeded(
                f"cube of {points} points for N={n}, R={r} exceeds the guard of {self.settings.guard}; "
                f"try R <= {suggested}",
                suggested_r=suggested,
            )

    def _tasks(self, n: int, r: int) -> List[Tuple[int, int, List[int]]]:
        return [(n, r, heads) for heads in split_contiguous(list(range(-r, r + 1)), self.workers)]

    def _run(self, worker: Callable[[Tuple[int, int, Sequence[int]]], T], n: int, r: int) -> List[T]:
        tasks = self._tasks(n, r)
        if self.workers == 1 or len(tasks) == 1:
            return [worker(task) for task in tasks]
        executor = _make_executor(self.workers)
        if executor is None:
            self.logger.warning("Process pool unavailable; sweeping N=%d R=%d in-process", n, r)
            return [worker(task) for task in tasks]
        with executor:
            return list(executor.map(worker, tasks))

    def circulant_entries(self, n: int, r: int) -> List[LatticeEntry]:
        """Distinct Λ(a) in R_N with ‖a‖ ≤ R, sorted by key."""

        self.check_guard(n, r)
        merged: Partial = {}
        for partial in self._run(_sweep_circulant, n, r):
            for key, (rep, count) in partial.items():
                if key in merged:
                    old_rep, old_count = merged[key]
                    merged[key] = (min(old_rep, rep), old_count + count)
                else:
                    merged[key] = (rep, count)
        return [LatticeEntry(key, rep, count) for key, (rep, count) in sorted(merged.items())]

    def census_circulant(self, n: int, r: int) -> CensusRecord:
        self.logger.info("Circulant census N=%d R=%d over %d cube points", n, r, cube_size(n, r))
        return self._classify(n, r, self.circulant_entries(n, r))

    def _classify(self, n: int, r: int, entries: Sequence[LatticeEntry]) -> CensusRecord:
        record = CensusRecord(n=n, r=r, lattice_keys=tuple(entry.key for entry in entries))
        for entry in entries:
            lattice = circulant_lattice(entry.representative)
            if not minkowski_sanity(lattice):
                raise InvariantViolation(f"Minkowski bounds fail for Λ({entry.representative})")
            record.count_vectors += entry.vectors
            record.count_lattices += 1
            record.count_wr += is_well_rounded(lattice)
            record.count_wr_prime += in_D_N(entry.representative)
            record.count_rprime += in_rprime(entry.representative)
            record.max_multiplicity = max(record.max_multiplicity, entry.vectors // 2)
        record.check_ordering()
        self.logger.info("Census N=%d R=%d: %s", n, r, record.counts())
        return record

    def tau_census(self, n: int, tau: Permutation, r: int) -> CensusRecord:
        """Census of τ-invariant lattices E_g Λ(a), with τ = g σ g⁻¹."""

        if tau.size != n:
            raise ValueError(f"permutation of degree {tau.size} for N={n}")
        g = conjugator_for_ncycle(tau)
        entries = self.circulant_entries(n, r)
        baseline = self._classify(n, r, entries)
        record = CensusRecord(n=n, r=r)
        keys: List[Key] = []
        for entry in entries:
            image: Lattice = permute_lattice(circulant_lattice(entry.representative), g)
            if not is_invariant(image, tau):
                raise InvariantViolation(f"E_g Λ({entry.representative}) is not invariant under {tau}")
            b = apply(g, entry.representative)
            lambda1_sq, reps = minimal_vectors(image)
            well_rounded = is_well_rounded(image)
            keys.append(image.hnf_key)
            record.count_vectors += entry.vectors
            record.count_lattices += 1
            record.count_wr += well_rounded
            record.count_wr_prime += lambda1_sq == norm_sq(b) and is_wr_prime(image)
            record.count_rprime += well_rounded and all(orbit_rank(c, tau) == n for c in reps)
            record.max_multiplicity = max(record.max_multiplicity, entry.vectors // 2)
        if len(set(keys)) != len(keys):
            raise InvariantViolation(f"E_g is not injective on census keys for τ = {tau}")
        record.lattice_keys = tuple(sorted(keys))
        if record.counts() != baseline.counts():
            raise InvariantViolation(
                f"τ-census for {tau} differs from the circulant census: {record.counts()} vs {baseline.counts()}"
            )
        self.logger.info("τ-census for %s matches the circulant census at N=%d R=%d", tau, n, r)
        return record

    def prob_full_rank(self, n: int, r: int) -> ProbReport:
        """Fraction of cube points with full cyclic order, with per-divisor Λ_Φd hit counts.

        The counting chain is checked on the way: each |C ∩ Λ_Φd| is at most (2R+1)^(N-φ(d)),
        the union is at most their sum, and the sum of those caps is at most N(2R+1)^(N-1).
        """

        self.check_guard(n, r)
        side = 2 * r + 1
        total = cube_size(n, r)
        full = union = 0
        hits: Dict[int, int] = {}
        for part_full, part_union, part_hits in self._run(_sweep_hits, n, r):
            full += part_full
            union += part_union
            for d, count in part_hits.items():
                hits[d] = hits.get(d, 0) + count
        if full != total - union:
            raise InvariantViolation(f"full-rank count {full} + degenerate {union} != {total}")
        caps = {d: side ** (n - int(totient(d))) for d in hits}
        for d, count in hits.items():
            if count > caps[d]:
                raise InvariantViolation(f"{count} cube points in Λ_Φ{d} exceed (2R+1)^(N-φ(d)) = {caps[d]}")
        if union > sum(hits.values()):
            raise InvariantViolation("union of cyclotomic hits exceeds their sum")
        if sum(caps.values()) > n * side ** (n - 1):
            raise InvariantViolation(f"per-divisor caps sum past N(2R+1)^(N-1) for N={n}, R={r}")
        report = ProbReport(n=n, r=r, full=full, total=total, hits=hits)
        if report.ok:
            self.logger.info("N=%d R=%d: full-rank fraction %s (bound %s)", n, r, report.fraction, report.bound)
        else:
            self.logger.error("N=%d R=%d: full-rank fraction %s below %s", n, r, report.fraction, report.bound)
        return report

    def growth_table(self, n: int, r_values: Sequence[int]) -> List[GrowthRow]:
        rows: List[GrowthRow] = []
        for r in r_values:
            if r < 1:
                raise ValueError("R must be positive")
            count = self.census_circulant(n, r).count_lattices
            rows.append(GrowthRow(r=r, count=count, ratio=Fraction(count, r**n)))
        if rows:
            low = min(row.ratio for row in rows)
            self.logger.info("Empirical lower estimate of α_%d over R=%s: %s", n, list(r_values), low)
        return rows


def _default_engine(workers: Optional[int]) -> CensusEngine:
    return CensusEngine(Settings.from_env(), workers=workers)


def census_circulant(n: int, r: int, workers: Optional[int] = None) -> CensusRecord:
    return _default_engine(workers).census_circulant(n, r)


def tau_census(n: int, tau: Permutation, r: int, workers: Optional[int] = None) -> CensusRecord:
    return _default_engine(workers).tau_census(n, tau, r)


def prob_full_rank(n: int, r: int, workers: Optional[int] = None) -> ProbReport:
    return _default_engine(workers).prob_full_rank(n, r)


def growth_table(n: int, r_values: Sequence[int], workers: Optional[int] = None) -> List[GrowthRow]:
    return _default_engine(workers).growth_table(n, r_values)
