"""Command-line front end.

Exit status: 0 when every checked congruence holds, 1 when one fails,
2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import cache as cache_mod
from .congruences import (Cell, GridRanges, TermStore, max_required, scan_grid,
                          two_sum_decomposition, verify_cell)
from .errors import ForgeError
from .qseries import (DirichletCharacter, EigenformSpec, EtaQuotient, E_CONSTANT,
                      eisenstein_series, eta_quotient_expand, verify_gf_parametrization,
                      verify_remark_identity)
from .sequences import SequenceParams, ZagierTriple, apery_B, zagier_terms
from .witness import RECORD_FIELDS, Statement

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ForgeError):
    pass


def parse_int_list(text: str) -> list[int]:
    """Parse ``"1..3,7"`` into ``[1, 2, 3, 7]``."""
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                lo, hi = part.split("..", 1)
                values.extend(range(int(lo), int(hi) + 1))
            else:
                values.append(int(part))
        except ValueError:
            raise UsageError(f"cannot parse {part!r} as an integer or range lo..hi") from None
    return values


def _nonempty(name, values):
    if not values:
        raise UsageError(f"--{name} selects nothing")
    return values


def _eigenforms(args) -> list[EigenformSpec]:
    weights = _nonempty("k", parse_int_list(args.k))
    chis = [DirichletCharacter.from_name(c) for c in args.chi.split(",") if c.strip()]
    _nonempty("chi", chis)
    return [EigenformSpec(k, chi, level=chi.modulus) for k in weights for chi in chis]


def _open_store(args):
    cache = cache_mod.open_cache(getattr(args, "cache", None), getattr(args, "no_cache", False))
    records = cache.load() if cache else {}
    return cache, TermStore(cache_mod.store_values(records))


def _close_store(cache, store, args):
    if cache is not None and store.computed:
        cache.save(cache_mod.cache_records(store.values))
    if getattr(args, "stats", False):
        print(f"terms computed={store.computed} reused={store.hits}", file=sys.stderr)


def _rational(text) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed rational {text!r}") from None


def _jsonable(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    return v


# --- seq -----------------------------------------------------------------

def cmd_seq(args) -> int:
    ns = _nonempty("n", parse_int_list(args.n))
    if min(ns) < 0:
        raise UsageError("indices must be nonnegative")
    if args.family == "B":
        values = [apery_B(n) for n in ns]
    elif args.family == "C":
        if args.A is None or args.B is None:
            raise UsageError("family C needs --A and --B")
        params = SequenceParams(args.A, args.B)
        cache, store = _open_store(args)
        keys = [("C", params.A, params.B, n) for n in ns]
        store.ensure(keys)
        values = [store[k] for k in keys]
        _close_store(cache, store, args)
    else:
        if None in (args.a, args.b, args.lam):
            raise UsageError("family zagier needs --a, --b and --lam")
        triple = ZagierTriple(_rational(args.a), _rational(args.b), _rational(args.lam))
        terms = zagier_terms(triple, max(ns))
        values = [terms[n] for n in ns]
    if args.json:
        print(json.dumps([_jsonable(v) for v in values]))
    else:
        for v in values:
            print(v)
    return EXIT_OK


# --- verify --------------------------------------------------------------

def _witness_line(w) -> str:
    params = [f"p={w.p}", f"m={w.m}", f"r={w.r}"]
    if w.A is not None:
        params += [f"A={w.A}", f"B={w.B}"]
    if w.k is not None:
        params += [f"k={w.k}", f"chi={w.chi}"]
    attained = "inf" if w.attained == float("inf") else w.attained
    line = (f"{w.statement.value} {' '.join(params)}: attained {attained}, "
            f"required {w.required} -> {'PASS' if w.passed else 'FAIL'}")
    if w.boundary_convention_used:
        line += " (boundary zero convention used)"
    if w.mode == "modular":
        line += " [modular]"
    return line


def _cell_from_args(args) -> Cell:
    statement = Statement.parse(args.statement)
    A = B = eigen = None
    if statement in (Statement.THM_MAIN, Statement.COR_THREE):
        if args.A is None or args.B is None:
            raise UsageError(f"{statement.value} needs --A and --B")
        A, B = args.A, args.B
    if statement is Statement.COR_THREE:
        chi = DirichletCharacter.from_name(args.chi)
        eigen = EigenformSpec(args.k, chi, level=chi.modulus)
    return Cell(statement, args.p, args.m, args.r, A, B, eigen, args.allow_boundary)


def cmd_verify(args) -> int:
    cell = _cell_from_args(args)
    w = verify_cell(cell, args.mode, args.K)
    if args.format == "json":
        print(json.dumps(w.to_record(), indent=2))
    else:
        print(_witness_line(w))
        if cell.statement is Statement.THM_MAIN and args.decompose:
            split = two_sum_decomposition(cell.p, cell.m, cell.r, (cell.A, cell.B))
            print(f"  p-coprime part: valuation {split.coprime_valuation} "
                  f"(bound A*r = {split.bound}); p-divisible part: valuation "
                  f"{split.divisible_valuation}")
    return EXIT_OK if w.passed else EXIT_FAIL


# --- scan ----------------------------------------------------------------

def _ranges(args, statement) -> GridRanges:
    primes = _nonempty("p", parse_int_list(args.p))
    ms = _nonempty("m", parse_int_list(args.m))
    rs = _nonempty("r", parse_int_list(args.r))
    As = Bs = ()
    eigen = ()
    if statement in (Statement.THM_MAIN, Statement.COR_THREE):
        As = _nonempty("A", parse_int_list(args.A or ""))
        Bs = _nonempty("B", parse_int_list(args.B or ""))
    if statement is Statement.COR_THREE:
        eigen = _eigenforms(args)
    return GridRanges(primes, ms, rs, As, Bs, eigen, args.allow_boundary)


def render_report(result, K, fmt: str) -> str:
    records = [w.to_record() for w in result.witnesses]
    if fmt == "json":
        doc = {"statement": result.statement.value, "mode": result.mode, "K": K,
               "witnesses": records, "summary": result.summary}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(RECORD_FIELDS)
        for rec in records:
            writer.writerow(["" if rec[f] is None else rec[f] for f in RECORD_FIELDS])
        return buf.getvalue()
    lines = [_witness_line(w) for w in result.witnesses]
    s = result.summary
    lines.append(f"{s['passed']}/{s['count']} pass, minimal margin {s['min_margin']}, "
                 f"{len(s['sharp_cells'])} sharp cells, "
                 f"{s['boundary_convention_cells']} boundary-convention cells")
    return "\n".join(lines) + "\n"


def cmd_scan(args) -> int:
    statement = Statement.parse(args.statement)
    ranges = _ranges(args, statement)
    if args.mode == "modular":
        if args.K is None:
            raise UsageError("modular mode needs --K")
        need = max_required(statement, ranges)
        if args.K <= need:
            raise UsageError(f"--K {args.K} must exceed the largest required valuation {need}")
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    cache, store = _open_store(args)
    result = scan_grid(statement, ranges, args.mode, args.K, jobs=args.jobs, store=store)
    _close_store(cache, store, args)
    text = render_report(result, args.K, args.format)
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc}") from None
    else:
        sys.stdout.write(text)
    return EXIT_OK if result.summary["failed"] == 0 else EXIT_FAIL


# --- qseries -------------------------------------------------------------

def _format_series(coeffs, start=0) -> str:
    terms = [f"{c}*q^{n}" for n, c in enumerate(coeffs) if c and n >= start]
    return " + ".join(terms) if terms else "0"


def cmd_qseries(args) -> int:
    N = args.N
    if N < 1:
        raise UsageError("--N must be positive")
    if args.check == "gf":
        report = verify_gf_parametrization(N)
        if args.json:
            print(json.dumps({"N": N, "matched": report.matched,
                              "first_mismatch": report.first_mismatch}))
        else:
            print(report.describe())
        return EXIT_OK if report.matched else EXIT_FAIL
    if args.check == "remark":
        report = verify_remark_identity(N)
        if args.json:
            print(json.dumps({
                "N": N,
                "lhs": [str(c) for c in report.lhs],
                "rhs": [str(c) for c in report.rhs],
                "printed_identity_holds": report.printed.matched,
                "printed_first_discrepancy": report.printed.first_mismatch,
                "relation": report.relation,
                "scalar": None if report.scalar is None else str(report.scalar),
            }, indent=2))
        else:
            print(report.describe())
        return EXIT_OK
    if args.check == "eta":
        quot = EtaQuotient.parse(args.quotient)
        coeffs = eta_quotient_expand(quot, N).coefficients(N)
    else:
        chi = DirichletCharacter.from_name(args.chi)
        const = _rational(args.constant) if args.constant is not None else E_CONSTANT
        coeffs = eisenstein_series(chi, args.weight, const, N).coefficients(N)
    if args.json:
        print(json.dumps([str(c) for c in coeffs]))
    else:
        for n, c in enumerate(coeffs):
            if c:
                print(f"q^{n}: {c}")
    return EXIT_OK


# --- parser --------------------------------------------------------------

def _add_cache_flags(p):
    p.add_argument("--cache", help=f"cache file (default: ${cache_mod.ENV_VAR} or "
                                   "~/.cache/congruence-forge/sequences.txt)")
    p.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    p.add_argument("--stats", action="store_true", help="print term counters to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="congruence-forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", help="print sequence values")
    p.add_argument("family", choices=["B", "C", "zagier"])
    p.add_argument("--n", required=True, help="index list, e.g. 0..7 or 1,5,9")
    p.add_argument("--A", type=int)
    p.add_argument("--B", type=int)
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--lam")
    p.add_argument("--json", action="store_true")
    _add_cache_flags(p)
    p.set_defaults(func=cmd_seq)

    statements = ["thm", "cor", "eq1", "eq2", "lemma"] + [s.value for s in Statement]

    p = sub.add_parser("verify", help="check one congruence cell")
    p.add_argument("statement", choices=statements)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--A", type=int)
    p.add_argument("--B", type=int)
    p.add_argument("--k", type=int, default=3, help="eigenform weight (corollary)")
    p.add_argument("--chi", default="trivial", help="trivial, principal-3 or chi-3")
    p.add_argument("--mode", choices=["exact", "modular"], default="exact")
    p.add_argument("--K", type=int, help="residue width for modular mode")
    p.add_argument("--allow-boundary", action="store_true",
                   help="permit corollary r = 1 under the zero convention")
    p.add_argument("--decompose", action="store_true",
                   help="also print the p-coprime / p-divisible split (thm)")
    p.add_argument("--format", choices=["human", "json"], default="human")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="check a grid of cells and emit a report")
    p.add_argument("statement", choices=statements)
    p.add_argument("--p", required=True, help="prime list, e.g. 5,7,11")
    p.add_argument("--m", default="1")
    p.add_argument("--r", default="1")
    p.add_argument("--A")
    p.add_argument("--B")
    p.add_argument("--k", default="3")
    p.add_argument("--chi", default="trivial")
    p.add_argument("--mode", choices=["exact", "modular"], default="exact")
    p.add_argument("--K", type=int)
    p.add_argument("--allow-boundary", action="store_true")
    p.add_argument("--format", choices=["json", "csv", "human"], default="json")
    p.add_argument("--output", "-o")
    p.add_argument("--jobs", "-j", type=int, default=os.cpu_count() or 1)
    _add_cache_flags(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("qseries", help="q-series expansions and identity checks")
    p.add_argument("check", choices=["gf", "remark", "eta", "eisenstein"])
    p.add_argument("--N", type=int, default=40, help="work through q^(N-1)")
    p.add_argument("--quotient", default="4:6", help="eta quotient as d:e,d:e")
    p.add_argument("--chi", default="chi-3")
    p.add_argument("--weight", type=int, default=3)
    p.add_argument("--constant")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_qseries)
    return parser


def main(argv=None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        # sequence values and cache records routinely exceed the default digit limit
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
