"""Command line entry point: ``onan-moonshine {classnum,trace,scan,ec}``.

Exit codes: 0 success, 1 usage error, 2 computation error, 3 a congruence
check failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .arith import is_discriminant, is_fundamental, primes_up_to
from .cache import CacheError, TraceCache
from .lfun import FAMILY_COEFFICIENTS, curve, local_data, selmer_indicator
from .qforms import class_representatives
from .report import build_report, dumps, scan_record, to_csv
from .traces import TraceError, TraceResult, discriminants_in_range, trace, trace_tagged

log = logging.getLogger("onan_moonshine")

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_VIOLATION = 0, 1, 2, 3
CHECKPOINT_EVERY = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _discriminant(text: str) -> int:
    try:
        D = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if D >= 0 or not is_discriminant(D):
        raise argparse.ArgumentTypeError(f"{D} is not a negative discriminant (0 or 1 mod 4)")
    return D


def trace_record(result: TraceResult) -> dict:
    ctx = result.raw.ctx
    return {
        "D": result.D.value,
        "fundamental": result.D.fundamental,
        "a": result.a,
        "class_count": result.class_count,
        "precision": result.precision,
        "attempts": result.attempts,
        "imprimitive_classes": result.imprimitive_count,
        "residual": result.residual,
        "raw": ctx.nstr(ctx.re(result.raw.mid), 30),
        "error_bound": ctx.nstr(result.raw.rad, 5),
    }


def _emit(obj, as_json: bool, text: str):
    if as_json:
        print(json.dumps(obj, indent=2))
    else:
        print(text)


# ---------------------------------------------------------------------------


def cmd_classnum(args) -> int:
    D = args.D
    forms = class_representatives(D)
    fundamental = is_fundamental(D)
    if not fundamental:
        print(f"warning: {D} is not fundamental; h(D) is undefined, listing all reduced forms", file=sys.stderr)
    record = {"D": D, "fundamental": fundamental, "h": len(forms) if fundamental else None,
              "forms": [list(Q) for Q in forms]}
    lines = [f"D = {D} ({'fundamental' if fundamental else 'not fundamental'})"]
    lines.append(f"h = {len(forms)}" if fundamental else f"reduced forms: {len(forms)}")
    lines += [str(Q) for Q in forms]
    _emit(record, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_trace(args) -> int:
    result = trace(args.D, args.precision)
    _emit(trace_record(result), args.json, f"a({args.D}) = {result.a}")
    return EXIT_OK


def _compute(Ds: list[int], cache: TraceCache | None, jobs: int) -> dict[int, int]:
    values = {}
    todo = []
    for D in Ds:
        if cache is not None and D in cache:
            values[D] = cache.get(D)
        else:
            todo.append(D)
    log.info("%d discriminants cached, %d to compute", len(values), len(todo))

    def consume(results):
        for n, result in enumerate(results, 1):
            values[result.D.value] = result.a
            if cache is not None:
                cache.add(result)
                if n % CHECKPOINT_EVERY == 0:
                    cache.save()

    if jobs <= 1:
        consume(trace_tagged(D) for D in todo)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            consume(pool.map(trace_tagged, todo, chunksize=4))
    if cache is not None and todo:
        cache.save()
    return values


def cmd_scan(args) -> int:
    if args.dmin > args.dmax or args.dmax >= 0:
        raise UsageError(f"need dmin <= dmax < 0, got [{args.dmin}, {args.dmax}]")
    if args.resume and args.no_cache:
        raise UsageError("--resume needs the cache; drop --no-cache")
    Ds = discriminants_in_range(args.dmin, args.dmax)
    if not args.all_discriminants:
        Ds = [D for D in Ds if is_fundamental(D)]
    cache = None if args.no_cache else TraceCache(args.cache_dir).load()
    values = _compute(Ds, cache, args.jobs)
    records = [scan_record(D, values[D]) for D in Ds]
    report = build_report(args.dmin, args.dmax, records, args.all_discriminants)
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.csv:
        Path(args.csv).write_text(to_csv(records))
    summary = report["summary"]
    print(
        f"scanned {summary['records']} discriminants, {summary['failures']} congruence failures",
        file=sys.stderr,
    )
    return EXIT_VIOLATION if summary["failures"] else EXIT_OK


def _ap_table(E, bound: int) -> dict[int, int]:
    return {p: local_data(E, p)[0] for p in primes_up_to(bound).tolist()}


def cmd_ec(args) -> int:
    D = args.D
    if not is_fundamental(D):
        raise UsageError(f"{D} is not a fundamental discriminant")
    E = curve(args.family, D)
    header = f"E_{args.family}({D}): y^2 = x^3 + ({E.a})x + ({E.b})"
    conductor = f"conductor {E.conductor}" + (" (heuristic)" if E.conductor_heuristic else "")
    if not args.indicator:
        table = _ap_table(E, args.primes)
        record = {"family": args.family, "D": D, "a": E.a, "b": E.b, "conductor": E.conductor,
                  "conductor_heuristic": E.conductor_heuristic, "ap": {str(p): v for p, v in table.items()},
                  "twined_congruence": "unavailable: a_g(D) for elements of order 2 and 3 is not computed"}
        lines = [header, conductor, "a_p: " + ", ".join(f"{p}:{v}" for p, v in table.items()),
                 "twined congruence: " + record["twined_congruence"]]
        _emit(record, args.json, "\n".join(lines))
        return EXIT_OK
    if args.family not in (11, 19):
        raise UsageError("--indicator is defined for --family 11 and 19 only")
    ind = selmer_indicator(args.family, D)
    p = args.family
    record = {"p": p, "D": D, "applicable": ind.applicable, "summary": ind.summary}
    if not ind.applicable:
        _emit(record, args.json, ind.summary)
        return EXIT_OK
    record.update({
        "a": ind.a, "a_mod_p": ind.a_mod_p,
        "weighted_term": ind.weighted_term, "term_mod_p": ind.term_mod_p,
        "congruent": ind.congruent, "label": ind.label,
        "conductor": E.conductor, "conductor_heuristic": E.conductor_heuristic,
    })
    lines = [
        header,
        f"a({D}) = {ind.a} = {ind.a_mod_p} mod {p}",
        f"weighted class term -24h = {ind.weighted_term} = {ind.term_mod_p} mod {p}",
        ind.summary,
    ]
    if ind.l_value is not None:
        L = ind.l_value
        record["L1"] = float(L.L1)
        record["L1_error"] = float(L.L1.rad)
        record["root_number_estimate"] = L.root_number_estimate
        record["L1_note"] = ind.l_value_note
        lines.append(f"L(E,1) = {float(L.L1):.10f} +- {float(L.L1.rad):.1e}, w ~ {L.root_number_estimate:.4f}")
        lines.append(f"  ({ind.l_value_note})")
    _emit(record, args.json, "\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="onan-moonshine", description="O'Nan moonshine dimensions, class numbers and congruences.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classnum", help="class number and reduced forms")
    p.add_argument("D", type=_discriminant)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classnum)

    p = sub.add_parser("trace", help="certified a(D) = dim W_D")
    p.add_argument("D", type=_discriminant)
    p.add_argument("--precision", type=int, default=None, help="working digits (default: from |D|)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("scan", help="check the class number congruences over a range of D")
    p.add_argument("--dmin", type=int, required=True)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--check", choices=["thm2"], default="thm2")
    p.add_argument("--out", help="JSON report path (default: stdout)")
    p.add_argument("--csv", help="also write a CSV summary here")
    p.add_argument("--resume", action="store_true", help="continue from the cache of an interrupted scan")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--cache-dir", default=None, help="overrides $ONAN_MOONSHINE_CACHE")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--all-discriminants", action="store_true", help="include non-fundamental D")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("ec", help="elliptic curves E_11, E_14, E_15, E_19 twisted by D")
    p.add_argument("--family", type=int, choices=sorted(FAMILY_COEFFICIENTS), required=True)
    p.add_argument("--D", type=_discriminant, required=True)
    p.add_argument("--indicator", action="store_true", help="Selmer congruence indicator (p = 11, 19)")
    p.add_argument("--primes", type=int, default=50, help="show a_p for p below this bound")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ec)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"onan-moonshine: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TraceError, CacheError, ArithmeticError, OSError) as exc:
        print(f"onan-moonshine: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except Exception as exc:  # noqa: BLE001 - worker failures surface here
        log.debug("unexpected failure", exc_info=True)
        print(f"onan-moonshine: computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def run():
    sys.exit(main())
