"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 bad flags or input,
3 a resource cap was exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import cayley as cy
from .errors import PCentralError, ResourceLimitError
from .formats import dump_scheme, dump_table, read_group_file
from .freepcentral import DEFAULT_ENUMERATION_CAP, FpcScheme, construct_free_pcentral, fpc_enumerate
from .homology import DEFAULT_HOMOLOGY_CAP, h2_integral, multiplier_free_pcentral
from .semigroup import exponent_semigroup
from .verify import (
    CHECKS,
    DEFAULT_HOMOLOGY_LIMIT,
    corpus_from_dir,
    default_corpus,
    run_suite,
    summarize,
)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_BAD_INPUT, EXIT_CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_INPUT)


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path, cap=DEFAULT_ENUMERATION_CAP) -> cy.CayleyGroup:
    obj = read_group_file(path)
    if isinstance(obj, FpcScheme):
        return fpc_enumerate(obj, cap)
    return obj


def _prime(G: cy.CayleyGroup, p) -> int:
    if p is None:
        p = cy.p_of_group(G)
        if p is None:
            return 2
    cy.require_p_group(G, p)
    return p


def cmd_construct(args) -> int:
    s = construct_free_pcentral(args.p, args.r, args.n)
    if args.emit == "scheme":
        _emit(dump_scheme(s), args.out)
    else:
        _emit(dump_table(fpc_enumerate(s, args.cap)), args.out)
    return EXIT_OK


def cmd_info(args) -> int:
    G = _load(args.path, args.cap)
    p = _prime(G, args.p)
    lcs = cy.lower_central(G)
    print(f"name: {G.name or '-'}")
    print(f"order: {G.order}")
    print(f"exponent: {cy.exponent(G)}")
    print(f"abelian: {'yes' if G.is_abelian else 'no'}")
    print(f"center order: {cy.center(G).order}")
    print(f"nilpotency class: {len(lcs) - 1 if lcs[-1].is_trivial() else 'not nilpotent'}")
    print(f"abelianization: {' '.join(map(str, cy.abelian_invariants(G))) or '1'}")
    print(f"p: {p}")
    print(f"p-central: {'yes' if cy.is_p_central(G, p) else 'no'}")
    return EXIT_OK


def cmd_series(args) -> int:
    G = _load(args.path, args.cap)
    p = _prime(G, args.p)
    if args.kind == "gamma":
        series = cy.lower_central(G)
        if len(series) > 1 and series[-1] == series[-2]:
            series = series[:-1]
        label = "gamma"
    elif args.kind == "lambda":
        series = cy.lambda_series(G, p)
        label = "lambda"
    else:
        series = []
        i = 0
        while not series or series[-1].order < G.order:
            series.append(cy.omega(G, p, i))
            i += 1
        label = "omega"
    start = 0 if args.kind == "omega" else 1
    for i, H in enumerate(series, start=start):
        print(f"{label}_{i}: {H.order}")
    return EXIT_OK


def cmd_multiplier(args) -> int:
    if args.path is not None:
        if any(v is not None for v in (args.r, args.n)):
            raise PCentralError("give either PATH or --p/--r/--n, not both")
        G = _load(args.path)
        m = h2_integral(G, args.cap)
        print(f"H2 invariants: {m}")
        return EXIT_OK
    if None in (args.p, args.r, args.n):
        raise PCentralError("multiplier needs PATH or all of --p, --r, --n")
    construct_free_pcentral(args.p, args.r, args.n)
    print(f"invariants: {multiplier_free_pcentral(args.p, args.r, args.n)}")
    return EXIT_OK


def cmd_exprank(args) -> int:
    G = _load(args.path, args.cap)
    p = _prime(G, args.p)
    E = exponent_semigroup(G, p)
    print(f"exp G/Z(G): {p ** E.e}")
    print(f"E(G): {E}")
    print(f"exprank: {E.exprank}")
    return EXIT_OK


def cmd_verify(args) -> int:
    corpus = default_corpus() if args.corpus == "builtin" else corpus_from_dir(args.corpus)
    checks = None
    if args.checks:
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    results = run_suite(
        corpus,
        checks,
        jobs=args.jobs,
        homology_limit=args.homology_limit,
        timings=args.timings,
    )
    text = "".join(r.to_json() + "\n" for r in results)
    if args.report:
        Path(args.report).write_text(text)
    for r in results:
        if r.status == "fail":
            print(f"FAIL {r.check} {r.group}: {r.detail}")
    s = summarize(results)
    print(f"{len(results)} results: {s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped")
    return EXIT_CHECK_FAILED if s["fail"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="pcentral", description="free p-central groups and their invariants")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build nG_r as a scheme or table file")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--emit", choices=["table", "scheme"], default="scheme")
    c.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    for name, func, helptext in [
        ("info", cmd_info, "order, exponent, centre, p-centrality"),
        ("exprank", cmd_exprank, "exponent semigroup and exponential rank"),
    ]:
        s = sub.add_parser(name, help=helptext)
        s.add_argument("path")
        s.add_argument("--p", type=int)
        s.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
        s.set_defaults(func=func)

    s = sub.add_parser("series", help="orders along a subgroup series")
    s.add_argument("path")
    s.add_argument("--kind", choices=["gamma", "lambda", "omega"], default="lambda")
    s.add_argument("--p", type=int)
    s.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    s.set_defaults(func=cmd_series)

    m = sub.add_parser("multiplier", help="Schur multiplier by formula or by H2")
    m.add_argument("path", nargs="?")
    m.add_argument("--p", type=int)
    m.add_argument("--r", type=int)
    m.add_argument("--n", type=int)
    m.add_argument("--cap", type=int, default=DEFAULT_HOMOLOGY_CAP, help="homology order cap")
    m.set_defaults(func=cmd_multiplier)

    v = sub.add_parser("verify", help="run the theorem checks over a corpus")
    v.add_argument("--corpus", default="builtin", help="'builtin' or a directory of .pgt/.fpc files")
    v.add_argument("--checks", help=f"comma-separated subset of {','.join(CHECKS)}")
    v.add_argument("--report", help="write the JSON-lines report here")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--homology-limit", type=int, default=DEFAULT_HOMOLOGY_LIMIT)
    v.add_argument("--timings", action="store_true", help="fill duration_ms (report no longer reproducible)")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (PCentralError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
