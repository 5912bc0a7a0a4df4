"""Command-line entry point for the cyclic lattice toolkit.

Every subcommand writes machine-readable output to stdout; logs go to stderr and the log directory.
Exit codes: 0 success, 1 failed verification, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional

from census.dim2 import dim2_closed_forms
from census.engine import CensusEngine
from census.export import growth_frame, records_csv, records_jsonl, write_csv, write_jsonl
from core.database import Database
from core.lattice import hnf_canonicalize
from core.polyring import circulant_det_resultant, cyclic_order
from core.records import CIRCULANT, TAU, CensusRecord, CensusRepository
from core.svp import is_wr_prime, successive_minima
from core.utils import GuardExceeded, InvariantViolation, Settings, logger, parse_int_list
from lattices.cyclic import (
    angles_certificate,
    circulant_lattice,
    corollary_vector,
    in_D_N,
    in_R_N,
    in_rprime,
    sivp_via_rotations,
    verify_corollary_family,
)
from lattices.perm import conjugator_for_ncycle, is_invariant, parse_cycles

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2


def _emit(payload: Dict[str, object]) -> None:
    sys.stdout.write(json.dumps(payload, separators=(",", ":")) + "\n")


def _vector(text: str) -> List[int]:
    values = parse_int_list(text)
    if len(values) < 2:
        raise ValueError(f"vector dimension must be >= 2, got {len(values)}")
    if not any(values):
        raise ValueError("zero vector")
    return values


def cmd_analyze(args: argparse.Namespace, settings: Settings) -> int:
    a = _vector(args.vector)
    lattice = circulant_lattice(a)
    result = successive_minima(lattice)
    _emit(
        {
            "vector": a,
            "n": len(a),
            "cyclic_order": cyclic_order(a),
            "det": circulant_det_resultant(a),
            "hnf_key": lattice.key_list(),
            "lambda_sq": list(result.lambda_sq),
            "minimal_count": result.minimal_count,
            "wr": result.is_well_rounded,
            "wr_prime": is_wr_prime(lattice),
            "in_D_N": in_D_N(a),
            "in_R_N": in_R_N(a),
            "in_rprime": in_rprime(a),
            "angles_certificate": angles_certificate(a),
        }
    )
    return EXIT_OK


def _store(settings: Settings, record: CensusRecord, kind: str, tau: str = "") -> None:
    database = Database(settings.database_url)
    database.create_all()
    CensusRepository(database).save(record, kind=kind, tau=tau)
    logger.info("Stored %s census N=%d R=%d in %s", kind, record.n, record.r, settings.database_url)


def _write_record(record: CensusRecord, fmt: str, out: Optional[str] = None) -> None:
    if fmt == "csv":
        sys.stdout.write(records_csv([record]))
    else:
        sys.stdout.write(records_jsonl([record]))
    if out:
        path = Path(out)
        written = write_csv([record], path) if path.suffix == ".csv" else write_jsonl([record], path)
        logger.info("Wrote census N=%d R=%d to %s", record.n, record.r, written)


def cmd_census(args: argparse.Namespace, settings: Settings) -> int:
    engine = CensusEngine(settings, workers=args.workers)
    record = engine.census_circulant(args.n, args.r)
    _write_record(record, args.format, args.out)
    if args.store:
        _store(settings, record, CIRCULANT)
    return EXIT_OK


def cmd_tau_census(args: argparse.Namespace, settings: Settings) -> int:
    tau = parse_cycles(args.tau, args.n)
    engine = CensusEngine(settings, workers=args.workers)
    record = engine.tau_census(args.n, tau, args.r)
    _write_record(record, args.format, args.out)
    if args.store:
        _store(settings, record, TAU, str(tau))
    return EXIT_OK


def cmd_growth(args: argparse.Namespace, settings: Settings) -> int:
    engine = CensusEngine(settings, workers=args.workers)
    rows = engine.growth_table(args.n, parse_int_list(args.radii))
    sys.stdout.write(growth_frame(rows).to_csv(index=False, lineterminator="\n"))
    return EXIT_OK


def cmd_dim2(args: argparse.Namespace, settings: Settings) -> int:
    report = dim2_closed_forms(args.r)
    _emit(report.to_dict())
    if report.discrepancy is not None and abs(report.discrepancy) > 3 * args.r:
        logger.warning("R=%d: formula discrepancy %d exceeds 3R", args.r, report.discrepancy)
        return EXIT_FAILED
    if report.within_bounds is False:
        logger.error("R=%d: brute count %d escapes the quadratic bounds", args.r, report.brute_count)
        return EXIT_FAILED
    return EXIT_OK


def cmd_prob(args: argparse.Namespace, settings: Settings) -> int:
    engine = CensusEngine(settings, workers=args.workers)
    report = engine.prob_full_rank(args.n, args.r)
    _emit(report.to_dict())
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_construct(args: argparse.Namespace, settings: Settings) -> int:
    a = corollary_vector(parse_int_list(args.k))
    verified = verify_corollary_family(a)
    payload: Dict[str, object] = {"vector": list(a), "n": len(a), "verified": verified}
    if verified:
        payload["sivp"] = [list(v) for v in sivp_via_rotations(a)]
        payload["lambda_sq"] = list(successive_minima(circulant_lattice(a)).lambda_sq)
    _emit(payload)
    return EXIT_OK if verified else EXIT_FAILED


def cmd_perm_check(args: argparse.Namespace, settings: Settings) -> int:
    columns = [parse_int_list(text) for text in args.basis]
    n = len(columns[0])
    if any(len(col) != n for col in columns):
        raise ValueError("basis vectors of different dimensions")
    tau = parse_cycles(args.tau, n)
    lattice = hnf_canonicalize(columns)
    payload: Dict[str, object] = {
        "tau": str(tau),
        "n": n,
        "rank": lattice.rank,
        "hnf_key": lattice.key_list(),
        "invariant": is_invariant(lattice, tau),
    }
    if tau.is_ncycle():
        payload["conjugator"] = str(conjugator_for_ncycle(tau))
    _emit(payload)
    return EXIT_OK


def _add_census_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-N", type=int, required=True, dest="n")
    parser.add_argument("-R", type=int, required=True, dest="r")
    parser.add_argument("--workers", type=int, default=None)


def parse_args(args: Optional[Iterable[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Exact arithmetic on cyclic sublattices of Z^N")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="Report the invariants of Λ(a)")
    analyze.add_argument("-v", "--vector", required=True, help="Comma separated integers, e.g. 4,1")
    analyze.set_defaults(handler=cmd_analyze)

    for name, handler in (("census", cmd_census), ("tau-census", cmd_tau_census)):
        census = sub.add_parser(name, help="Count well-rounded cyclic lattices with λ ≤ R")
        _add_census_flags(census)
        if name == "tau-census":
            census.add_argument("-t", "--tau", required=True, help='N-cycle in cycle notation, e.g. "(1 3 2)"')
        fmt = census.add_mutually_exclusive_group()
        fmt.add_argument("--csv", action="store_const", const="csv", dest="format")
        fmt.add_argument("--json", action="store_const", const="json", dest="format")
        census.add_argument("--store", action="store_true", help="Persist the record in the census store")
        census.add_argument("--out", default=None, help="Also write the record to a file; .csv or JSON lines otherwise")
        census.set_defaults(handler=handler, format="json")

    growth = sub.add_parser("growth", help="f_N(R) / R^N over a list of radii")
    growth.add_argument("-N", type=int, required=True, dest="n")
    growth.add_argument("--radii", required=True, help="Comma separated radii, e.g. 3,4,5,6")
    growth.add_argument("--workers", type=int, default=None)
    growth.set_defaults(handler=cmd_growth)

    dim2 = sub.add_parser("dim2", help="Dimension-2 closed forms, brute count and bounds")
    dim2.add_argument("-R", type=int, required=True, dest="r")
    dim2.set_defaults(handler=cmd_dim2)

    prob = sub.add_parser("prob", help="Fraction of cube points with full cyclic order")
    _add_census_flags(prob)
    prob.set_defaults(handler=cmd_prob)

    construct = sub.add_parser("construct", help="Build and verify (m, m/k_1, ..., m/k_{N-1})")
    construct.add_argument("-k", required=True, help="Comma separated nonzero integers")
    construct.set_defaults(handler=cmd_construct)

    perm_check = sub.add_parser("perm-check", help="Test E_τ-invariance of a lattice")
    perm_check.add_argument("-t", "--tau", required=True)
    perm_check.add_argument(
        "--basis", action="append", required=True, help="Basis column as comma separated integers; repeat per column"
    )
    perm_check.set_defaults(handler=cmd_perm_check)

    return parser.parse_args(args=args)


def main(cli_args: Optional[Iterable[str]] = None) -> int:
    args = parse_args(cli_args)
    handler: Callable[[argparse.Namespace, Settings], int] = args.handler
    try:
        settings = Settings.from_env()
        return handler(args, settings)
    except InvariantViolation as exc:
        logger.error("Verification failed: %s", exc)
        return EXIT_FAILED
    except GuardExceeded as exc:
        logger.error("%s", exc)
        return EXIT_BAD_INPUT
    except ValueError as exc:
        logger.error("Invalid input: %s", exc)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
