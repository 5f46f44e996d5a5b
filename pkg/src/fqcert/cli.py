"""Command-line entry point.

Exit codes: 0 success, 1 rejected certificate or non-conjugate oracle
answer, 2 words are conjugate, 3 search exhausted, 4 elements not
independent, 64 usage or word syntax error, 65 malformed certificate file.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from pathlib import Path

from .certificate import OmnipotenceCertificate, dumps, loads
from .certify import certify_nonconjugate, certify_omnipotence
from .errors import (
    ElementsConjugate,
    FqcertError,
    MalformedCertificate,
    NotIndependent,
    SearchExhausted,
)
from .search import SearchConfig
from .verify import verify
from .words import oracle_conjugate, parse

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_CONJUGATE = 2
EXIT_EXHAUSTED = 3
EXIT_DEPENDENT = 4
EXIT_USAGE = 64
EXIT_DATA = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _word(text: str, rank: int):
    try:
        return parse(text.strip(), rank)
    except ValueError as e:
        raise UsageError(f"bad word {text!r}: {e}") from e


def _config(args) -> SearchConfig:
    return SearchConfig(
        max_index=args.max_index, max_prime=args.max_prime, max_rounds=args.max_rounds, jobs=args.jobs
    )


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_certify_nonconjugacy(args) -> int:
    a, b = _word(args.a, args.rank), _word(args.b, args.rank)
    try:
        cert = certify_nonconjugate(a, b, _config(args), args.mode)
    except ElementsConjugate as e:
        print(f"conjugator: {e.conjugator}")
        return EXIT_CONJUGATE
    except SearchExhausted as e:
        print(f"search exhausted: {e}", file=sys.stderr)
        if e.obstruction is not None:
            print(f"last obstruction: {e.obstruction}", file=sys.stderr)
        return EXIT_EXHAUSTED
    _write(dumps(cert), args.out)
    print(f"index={cert.cover.degree} m={cert.m} n={cert.n} N={cert.modulus} mode={cert.mode}", file=sys.stderr)
    return EXIT_OK


def cmd_certify_omnipotence(args) -> int:
    elements = [_word(t, args.rank) for t in args.elements.split(",")]
    try:
        orders = [int(t) for t in args.orders.split(",")]
    except ValueError as e:
        raise UsageError(f"bad --orders: {e}") from e
    if len(orders) != len(elements) or any(p < 1 for p in orders):
        raise UsageError("--orders needs one positive integer per element")
    try:
        cert = certify_omnipotence(elements, orders, _config(args))
    except NotIndependent as e:
        print(f"not independent: elements {e.pair[0]} and {e.pair[1]}")
        return EXIT_DEPENDENT
    except SearchExhausted as e:
        print(f"search exhausted: {e}", file=sys.stderr)
        if e.obstruction is not None:
            print(f"last obstruction: {e.obstruction}", file=sys.stderr)
        return EXIT_EXHAUSTED
    _write(dumps(cert), args.out)
    orders = ",".join(str(o) for o in cert.orders)
    print(f"K={cert.k_const} orders=[{orders}]")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        text = sys.stdin.read() if args.path == "-" else Path(args.path).read_text()
        cert = loads(text)
    except (OSError, UnicodeDecodeError) as e:
        print(f"cannot read {args.path}: {e}", file=sys.stderr)
        return EXIT_DATA
    except MalformedCertificate as e:
        print(f"malformed certificate: {e}", file=sys.stderr)
        return EXIT_DATA
    report = verify(cert)
    print("\n".join(report.lines()))
    if isinstance(cert, OmnipotenceCertificate) and report.accepted:
        print(f"K={cert.k_const} orders=[{','.join(str(o) for o in cert.orders)}]")
    return EXIT_OK if report.accepted else EXIT_REJECT


def cmd_oracle(args) -> int:
    a, b = _word(args.a, args.rank), _word(args.b, args.rank)
    if oracle_conjugate(a, b):
        print("conjugate")
        return EXIT_OK
    print("non-conjugate")
    return EXIT_REJECT


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    seed = args.seed if args.seed is not None else random.randrange(2**32)
    ok = run_selftest(seed, args.trials)
    return EXIT_OK if ok else EXIT_REJECT


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fqcert", description="Finite-quotient certificates for free groups.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def search_flags(q):
        q.add_argument("--max-index", type=_positive, default=10_000)
        q.add_argument("--max-prime", type=_positive, default=13)
        q.add_argument("--max-rounds", type=_positive, default=50)
        q.add_argument("--jobs", type=_positive, default=1)
        q.add_argument("-o", "--out", default=None, help="output file (default stdout)")

    cert = sub.add_parser("certify", help="build a certificate")
    csub = cert.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    nc = csub.add_parser("nonconjugacy")
    nc.add_argument("--rank", type=_positive, required=True)
    nc.add_argument("--a", required=True)
    nc.add_argument("--b", required=True)
    nc.add_argument("--mode", choices=["strong", "weak"], default=None)
    search_flags(nc)
    nc.set_defaults(func=cmd_certify_nonconjugacy)

    om = csub.add_parser("omnipotence")
    om.add_argument("--rank", type=_positive, required=True)
    om.add_argument("--elements", required=True, help="comma-separated words")
    om.add_argument("--orders", required=True, help="comma-separated positive integers")
    search_flags(om)
    om.set_defaults(func=cmd_certify_omnipotence)

    ver = sub.add_parser("verify", help="check a certificate file")
    ver.add_argument("path")
    ver.set_defaults(func=cmd_verify)

    orc = sub.add_parser("oracle", help="decide conjugacy by cyclic words")
    orc.add_argument("--rank", type=_positive, required=True)
    orc.add_argument("--a", required=True)
    orc.add_argument("--b", required=True)
    orc.set_defaults(func=cmd_oracle)

    st = sub.add_parser("selftest", help="randomised property checks")
    st.add_argument("--seed", type=int, default=None)
    st.add_argument("--trials", type=_positive, default=200)
    st.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except UsageError as e:
        print(f"fqcert: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FqcertError as e:
        # trivial words, rank mismatches and similar input problems
        print(f"fqcert: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
