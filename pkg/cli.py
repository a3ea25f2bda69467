# cli.py
import argparse
import json
import logging
import sys
from typing import Dict, List, Optional

import pandas as pd

from closedform import ehrhart_a_closed, ehrhart_b_closed
from hslab_config import get_all_suites, get_command_limits, get_log_level
from lattice import SliceRegion, a_polynomial, b_polynomial, ehrhart_polynomial
from permstats import flag_eulerian_row
from polynomials import IntPolynomial, RatPolynomial
from verdicts import to_json_value
from verification_service import VerificationService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IDENTITY_FAILED = 1
EXIT_USAGE = 2

_SERVICE_CACHE: Dict[tuple, VerificationService] = {}


def get_verification_service(max_n: Optional[int], max_r: Optional[int],
                             fixtures: Optional[str]) -> VerificationService:
    """Get or create a verification service for the given bounds"""
    key = (max_n, max_r, fixtures)
    if key not in _SERVICE_CACHE:
        _SERVICE_CACHE[key] = VerificationService(max_n=max_n, max_r=max_r, fixture_path=fixtures)
    return _SERVICE_CACHE[key]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hslab",
                                     description="Colored permutation statistics and Ehrhart series of hypersimplices")
    sub = parser.add_subparsers(dest="command", required=True)

    table = sub.add_parser("table", help="Slice polynomials or flag Eulerian numbers")
    table.add_argument("--family", required=True, choices=get_command_limits("table")["families"])
    table.add_argument("--n", type=int, required=True)
    table.add_argument("--r", type=int, default=1)
    table.add_argument("--format", default="json", choices=get_command_limits("table")["formats"])
    table.add_argument("--out")

    ehrhart = sub.add_parser("ehrhart", help="Ehrhart polynomial or series of one slice")
    ehrhart.add_argument("--family", required=True, choices=get_command_limits("ehrhart")["families"])
    ehrhart.add_argument("--n", type=int, required=True)
    ehrhart.add_argument("--r", type=int, default=1)
    ehrhart.add_argument("--k", type=int, required=True)
    ehrhart.add_argument("--mode", default="interpolate", choices=get_command_limits("ehrhart")["modes"])
    ehrhart.add_argument("--format", default="json", choices=get_command_limits("ehrhart")["formats"])
    ehrhart.add_argument("--out")

    verify = sub.add_parser("verify", help="Run the identity checks")
    verify.add_argument("--suite", default="all", choices=["all"] + get_all_suites())
    verify.add_argument("--max-n", type=int)
    verify.add_argument("--max-r", type=int)
    verify.add_argument("--format", default="json", choices=get_command_limits("verify")["formats"])
    verify.add_argument("--fixtures", help="Alternate reference table file")
    verify.add_argument("--out")
    return parser


def check_limits(parser: argparse.ArgumentParser, command: str, n: Optional[int], r: Optional[int]) -> None:
    limits = get_command_limits(command)
    if n is not None and not 0 <= n <= limits["max_n"]:
        parser.error(f"n={n} outside 0..{limits['max_n']}")
    if r is not None and not 1 <= r <= limits["max_r"]:
        parser.error(f"r={r} outside 1..{limits['max_r']}")


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _to_csv(df: pd.DataFrame) -> str:
    return df.to_csv(index=False, lineterminator="\n")


def _to_json(payload: Dict) -> str:
    return json.dumps(to_json_value(payload), indent=2) + "\n"


def cmd_table(args: argparse.Namespace) -> int:
    n, r = args.n, args.r
    levels: List[int] = [0] if n == 0 else list(range(1, r * n + 1))
    logger.info(f"Building {args.family} table n={n} r={r}")

    if args.family == "flag-eulerian":
        counts = flag_eulerian_row(n, r)
        if args.format == "csv":
            text = _to_csv(pd.DataFrame({"k": levels, "count": [str(c) for c in counts]}))
        else:
            text = _to_json({"family": args.family, "n": n, "r": r, "counts": counts})
    else:
        make = a_polynomial if args.family == "A" else b_polynomial
        rows = [(k, make(n, r, k)) for k in levels]
        if args.format == "csv":
            text = _to_csv(pd.DataFrame({"k": [k for k, _ in rows],
                                         "coeffs": [";".join(p.to_strings()) for _, p in rows]}))
        else:
            text = _to_json({"family": args.family, "n": n, "r": r,
                             "rows": [{"k": k, "coeffs": p.to_strings()} for k, p in rows]})
    _write(text, args.out)
    return EXIT_OK


def cmd_ehrhart(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    n, r, k = args.n, args.r, args.k
    if n < 1 or not 1 <= k <= r * n:
        parser.error(f"level k={k} outside 1..{r * n}")

    if args.mode == "series":
        poly: IntPolynomial = (a_polynomial if args.family == "A" else b_polynomial)(n, r, k)
        if args.format == "csv":
            text = _to_csv(pd.DataFrame({"degree": list(range(len(poly.coeffs))),
                                         "coeff": poly.to_strings()}))
        else:
            text = _to_json({"family": args.family, "n": n, "r": r, "k": k, "mode": args.mode,
                             "variable": "z", "coeffs": poly.to_strings()})
    else:
        if args.mode == "closed-form":
            rational: RatPolynomial = (ehrhart_a_closed if args.family == "A" else ehrhart_b_closed)(n, r, k)
        else:
            make = SliceRegion.a_slice if args.family == "A" else SliceRegion.b_slice
            rational = ehrhart_polynomial(make(n, r, k))
        pairs = rational.to_pairs()
        if args.format == "csv":
            text = _to_csv(pd.DataFrame({"degree": list(range(len(pairs))),
                                         "num": [p["num"] for p in pairs],
                                         "den": [p["den"] for p in pairs]}))
        else:
            text = _to_json({"family": args.family, "n": n, "r": r, "k": k, "mode": args.mode,
                             "variable": "t", "coeffs": pairs})
    _write(text, args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    service = get_verification_service(args.max_n, args.max_r, args.fixtures)
    reports = service.run(args.suite)
    passed = all(report.passed for report in reports)
    payload = {
        "suite": args.suite,
        "passed": passed,
        "count": len(reports),
        "reports": [report.to_dict() for report in reports],
    }
    _write(json.dumps(payload, indent=2) + "\n", args.out)
    failed = [report.identity for report in reports if not report.passed]
    if failed:
        logger.error(f"{len(failed)} identities failed: {', '.join(failed)}")
        return EXIT_IDENTITY_FAILED
    logger.info(f"All {len(reports)} identities passed")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=get_log_level(), stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "table":
        check_limits(parser, "table", args.n, args.r)
        return cmd_table(args)
    if args.command == "ehrhart":
        check_limits(parser, "ehrhart", args.n, args.r)
        return cmd_ehrhart(args, parser)
    check_limits(parser, "verify", args.max_n, args.max_r)
    return cmd_verify(args)


if __name__ == "__main__":
    sys.exit(main())
