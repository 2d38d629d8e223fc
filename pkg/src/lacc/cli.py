"""``lacc`` command line: generate, verify-appendix, check, bench-orders, mini.

Exit codes: 0 expected verdict, 1 conformance mismatch, 2 usage error,
3 budget exceeded.  ``--report PATH`` writes a JSON run report that follows
``data/run_report.schema.json``.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from pathlib import Path

from . import __version__
from .coeff import QQ, FieldError, FieldSpec, parse_field
from .cpoly import PARAMS, LEX, ParamPoly, parse_order
from .groebner import (Budget, BudgetExceeded, Ideal, buchberger, contains_one, verify_certificate,
                       verify_derivation)
from .identity import (SYSTEM_SIZE, MINI_VARS, MissingData, generate_full, load_appendix,
                       mini_system, read_appendix_lines, verify_appendix)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

BUDGET_ENV = "LACC_BUDGET_SECONDS"
DEFAULT_BUDGET = 1800.0
SCHEMA_VERSION = "1.0"
PRIME_SWEEP = (2, 3, 5, 7, 11, 13, 1049)
# f1..f32 on their own have common roots, so any subsystem inside this range
# is expected to be consistent
CONSISTENT_RANGE = (1, 32)


class UsageError(Exception):
    pass


def default_budget() -> float:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"{BUDGET_ENV}={raw!r} is not a number") from None


def field_label(f: FieldSpec) -> str:
    return "q" if f.modulus is None else f"gf:{f.modulus}"


def parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.|-|:)\s*(\d+)\s*", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
    elif text.strip().isdigit():
        lo = hi = int(text)
    else:
        raise UsageError(f"bad range {text!r}, expected LO..HI")
    if not 1 <= lo <= hi <= SYSTEM_SIZE:
        raise UsageError(f"range {lo}..{hi} must lie within 1..{SYSTEM_SIZE}")
    return lo, hi


# ---------------------------------------------------------------------------
# script export


_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def printed_terms(text: str) -> list[list[str]]:
    """Factor lists of ``m5*m5 + m6*m1 - 1`` in printed order, signs dropped."""
    return [[f.strip() for f in body.split("*")] for _, body in _TERM.findall(text)]


def _script_factor(name: str) -> str:
    m = re.fullmatch(r"([lm])(\d+)", name)
    if not m:
        return name
    return f"{'x' if m.group(1) == 'l' else 'y'}({m.group(2)})"


def script_poly(p: ParamPoly, layout: list[list[str]] | None) -> str:
    """Render ``p`` following ``layout`` (printed factor order), leftovers in dp order."""
    coeffs = dict(p.items())
    pieces: list[tuple[list[str], object]] = []
    if layout:
        for factors in layout:
            e = [0] * len(PARAMS)
            for f in factors:
                if f != "1":
                    e[PARAMS.index(f)] += 1
            c = coeffs.pop(tuple(e), None)
            if c:
                pieces.append(([_script_factor(f) for f in factors if f != "1"], c))
    for e, c in p.sorted_terms():
        if tuple(e) in coeffs:
            fs = []
            for i, k in enumerate(e):
                fs += [_script_factor(PARAMS[i])] * k
            pieces.append((fs, c))
    out = []
    for fs, c in pieces:
        neg = c < 0
        mag = -c if neg else c
        mag_s = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        body = "*".join(fs)
        if not body:
            body = mag_s
        elif mag != 1:
            body = f"{mag_s}*{body}"
        if out:
            out.append(f" - {body}" if neg else f" + {body}")
        else:
            out.append(f"- {body}" if neg else body)
    return "".join(out) or "0"


def script_text(polys: list[ParamPoly], characteristic: int = 0, order: str = "dp",
                layouts: dict[int, str] | None = None) -> str:
    n = len(polys)
    lines = [f"ring r={characteristic},(x(1..8),y(1..8)),{order};"]
    for i, p in enumerate(polys, 1):
        layout = printed_terms(layouts[i]) if layouts and i in layouts else None
        lines.append(f"poly f({i}) = {script_poly(p, layout)};")
    lines += [f"ideal i=f(1..{n});", "ideal si=std(i);", "si;"]
    return "\n".join(lines) + "\n"


def normalize_ws(text: str) -> str:
    """Collapse runs of whitespace and trim, for golden comparisons."""
    return re.sub(r"\s+", " ", text).strip()


# ---------------------------------------------------------------------------
# reports


def make_report(command: str, parameters: dict, verdict, exit_code: int, results: dict,
                elapsed: float, artifacts=(), expected=None, error: str | None = None) -> dict:
    rep = {
        "schema_version": SCHEMA_VERSION,
        "tool": "lacc",
        "tool_version": __version__,
        "command": command,
        "parameters": parameters,
        "verdict": verdict,
        "expected_verdict": expected,
        "exit_code": exit_code,
        "results": results,
        "timings": {"elapsed_seconds": round(elapsed, 3)},
        "artifacts": list(artifacts),
    }
    if error:
        rep["error"] = error
    return rep


def emit(report: dict, path: str | None):
    if path:
        Path(path).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# commands


def cmd_generate(args) -> int:
    t0 = time.monotonic()
    field = parse_field(args.field)
    system = generate_full()
    if args.format == "script":
        try:
            layouts = read_appendix_lines(args.data)
        except MissingData:
            layouts = None
        text = script_text(system.polys, field.characteristic, args.order, layouts)
    else:
        order = parse_order(args.order)
        polys = [p if field is QQ else p.change_field(field) for p in system.polys]
        text = "".join(f"f{i} = {p.render(order)}\n" for i, p in enumerate(polys, 1))
    artifacts = []
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        artifacts.append(str(args.out))
    else:
        sys.stdout.write(text)
    rep = make_report("generate", {"format": args.format, "field": field_label(field), "order": args.order},
                      None, EXIT_OK, {"count": len(system)}, time.monotonic() - t0, artifacts)
    emit(rep, args.report)
    return EXIT_OK


def cmd_verify_appendix(args) -> int:
    t0 = time.monotonic()
    params = {"data": str(args.data) if args.data else None}
    try:
        reference = load_appendix(args.data)
    except MissingData as exc:
        print(f"error: {exc}", file=sys.stderr)
        rep = make_report("verify-appendix", params, None, EXIT_USAGE, {}, time.monotonic() - t0,
                          error=str(exc))
        emit(rep, args.report)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"mismatch: reference data unreadable: {exc}")
        rep = make_report("verify-appendix", params, "mismatch", EXIT_MISMATCH, {}, time.monotonic() - t0,
                          error=str(exc))
        emit(rep, args.report)
        return EXIT_MISMATCH
    system = generate_full()
    if len(reference) != len(system):
        res = {"total": len(system), "matched": 0, "mismatches": [],
               "note": f"reference holds {len(reference)} polynomials"}
        print(f"0/{len(system)} (reference holds {len(reference)} polynomials)")
        rep = make_report("verify-appendix", params, "mismatch", EXIT_MISMATCH, res, time.monotonic() - t0)
        emit(rep, args.report)
        return EXIT_MISMATCH
    report = verify_appendix(system, reference)
    print(report.summary())
    for m in report.mismatches:
        print(f"f{m['index']}:\n  - generated: {m['generated']}\n  + reference: {m['reference']}")
    code = EXIT_OK if report.ok else EXIT_MISMATCH
    res = {"total": report.total, "matched": report.matched, "mismatches": report.mismatches}
    rep = make_report("verify-appendix", params, "match" if report.ok else "mismatch", code, res,
                      time.monotonic() - t0, expected="match")
    emit(rep, args.report)
    return code


def expected_verdict(lo: int, hi: int) -> str | None:
    if (lo, hi) == (1, SYSTEM_SIZE):
        return "UnitIdeal"
    if CONSISTENT_RANGE[0] <= lo and hi <= CONSISTENT_RANGE[1]:
        return "ProperIdeal"
    return None


def cmd_check(args) -> int:
    t0 = time.monotonic()
    field = parse_field(args.field)
    order = parse_order(args.order)
    lo, hi = parse_range(args.subsystem)
    budget = args.budget if args.budget is not None else default_budget()
    expect = {"auto": expected_verdict(lo, hi), "unit": "UnitIdeal", "proper": "ProperIdeal",
              "none": None}[args.expect]
    system = generate_full()
    gens = [p if field is QQ else p.change_field(field) for p in system.subsystem(lo, hi)]
    params = {"field": field_label(field), "order": args.order, "subsystem": f"{lo}..{hi}",
              "cofactors": args.cofactors, "budget_seconds": budget, "strategy": args.strategy}
    results = {"field": field_label(field), "order": args.order, "subsystem": [lo, hi]}
    try:
        verdict, gb = contains_one(Ideal(gens, field, order), strategy=args.strategy,
                                   cofactors=args.cofactors, budget=Budget(seconds=budget))
    except BudgetExceeded as exc:
        results.update(_stat_fields(exc.stats), basis_size=None)
        print(f"BudgetExceeded: {exc}")
        rep = make_report("check", params, "BudgetExceeded", EXIT_BUDGET, results, time.monotonic() - t0,
                          expected=expect, error=str(exc))
        emit(rep, args.report)
        return EXIT_BUDGET
    results.update(_stat_fields(gb.stats), basis_size=len(gb))
    if args.cofactors:
        results["cofactors"] = gb.stats.get("cofactors")
        if gb.certificate is not None:
            ok = verify_certificate(gb.certificate, gens)
            results["certificate_verified"] = ok
            if gb.certificate.cleared_integer is not None:
                results["cleared_integer"] = str(gb.certificate.cleared_integer)
            print(f"certificate: {'verified' if ok else 'FAILED'}")
        if gb.derivation is not None:
            ok = verify_derivation(gb.derivation, gens)
            results["derivation_verified"] = ok
            results["derivation_steps"] = len(gb.derivation.steps)
            print(f"derivation: {len(gb.derivation.steps)} steps, {'verified' if ok else 'FAILED'}")
    code = EXIT_OK if expect is None or verdict == expect else EXIT_MISMATCH
    if results.get("certificate_verified") is False or results.get("derivation_verified") is False:
        code = EXIT_MISMATCH
    print(f"{verdict}  field={field_label(field)} order={args.order} f{lo}..f{hi} "
          f"basis={len(gb)} pairs={gb.stats['pairs_processed']} "
          f"time={gb.stats['elapsed_seconds']}s")
    if args.show_basis:
        for p in gb:
            print("  " + p.render(order))
    rep = make_report("check", params, verdict, code, results, time.monotonic() - t0, expected=expect)
    emit(rep, args.report)
    return code


def _stat_fields(stats: dict) -> dict:
    keys = ("pairs_created", "pairs_processed", "skipped_coprime", "skipped_chain",
            "skipped_duplicate_lcm", "reductions_to_zero", "basis_max", "elapsed_seconds")
    return {k: stats.get(k, 0) for k in keys}


def cmd_bench_orders(args) -> int:
    t0 = time.monotonic()
    field = parse_field(args.field)
    budget = args.budget_per_order if args.budget_per_order is not None else default_budget()
    system = generate_full()
    gens = [p if field is QQ else p.change_field(field) for p in system.polys]
    rows = []
    for name in ("dp", "Dp", "lp"):
        try:
            verdict, gb = contains_one(Ideal(gens, field, parse_order(name)),
                                       budget=Budget(seconds=budget))
            rows.append({"order": name, "completed": True, "verdict": verdict,
                         "elapsed_seconds": gb.stats["elapsed_seconds"],
                         "pairs_processed": gb.stats["pairs_processed"]})
        except BudgetExceeded as exc:
            rows.append({"order": name, "completed": False, "verdict": None,
                         "elapsed_seconds": exc.stats["elapsed_seconds"],
                         "pairs_processed": exc.stats["pairs_processed"]})
    print(f"{'order':<6} {'completed':<10} {'verdict':<12} {'pairs':>7} {'seconds':>9}")
    for r in rows:
        print(f"{r['order']:<6} {str(r['completed']):<10} {str(r['verdict']):<12} "
              f"{r['pairs_processed']:>7} {r['elapsed_seconds']:>9.3f}")
    done = [r for r in rows if r["completed"]]
    fastest = min(done, key=lambda r: r["elapsed_seconds"])["order"] if done else None
    rep = make_report("bench-orders", {"field": field_label(field), "budget_per_order": budget}, None,
                      EXIT_OK, {"rows": rows, "fastest": fastest}, time.monotonic() - t0)
    emit(rep, args.report)
    return EXIT_OK


def linear_root(basis: list[ParamPoly]) -> dict[str, str] | None:
    """Read off the point when every element is ``v - a`` for a distinct variable ``v``."""
    if not basis:
        return None
    root = {}
    for p in basis:
        vs = p.variables()
        if len(vs) != 1 or p.total_degree() != 1:
            return None
        v = vs[0]
        e = tuple(1 if n == v else 0 for n in p.varnames)
        a = p.field.neg(p.field.div(p.constant_term(), p.coefficient(e)))
        root[v] = p.field.render(a)
    if len(root) != len(basis[0].varnames):
        return None
    return root


def cmd_mini(args) -> int:
    t0 = time.monotonic()
    constraints = mini_system(args.case)
    gb = buchberger(Ideal(constraints, QQ, LEX))
    verdict = "UnitIdeal" if gb.is_unit else "ProperIdeal"
    root = linear_root(gb.elements)
    expected = {ParamPoly.parse("l + 1", QQ, MINI_VARS), ParamPoly.parse("lp + 1", QQ, MINI_VARS)}
    code = EXIT_OK if set(gb.elements) == expected and verdict == "ProperIdeal" else EXIT_MISMATCH
    print("constraints:")
    for c in constraints:
        print(f"  {c.render(LEX)}")
    print("lex basis:")
    for p in gb:
        print(f"  {p.render(LEX)}")
    print(f"verdict: {verdict}")
    if root:
        print("root: " + ", ".join(f"{k} = {v}" for k, v in root.items()))
    res = {"constraints": [c.render(LEX) for c in constraints], "basis": [p.render(LEX) for p in gb],
           "root": root}
    rep = make_report("mini", {"case": args.case}, verdict, code, res, time.monotonic() - t0,
                      expected="ProperIdeal")
    emit(rep, args.report)
    return code


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lacc", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=f"lacc {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def report_opt(p):
        p.add_argument("--report", metavar="PATH", help="write a JSON run report")

    g = sub.add_parser("generate", help="write the 128 polynomials")
    g.add_argument("--format", choices=("internal", "script"), default="internal")
    g.add_argument("--field", default="q", help="q or gf:P (script header characteristic)")
    g.add_argument("--order", choices=("dp", "Dp", "lp"), default="dp")
    g.add_argument("--data", type=Path, help="reference listing used for script term order")
    g.add_argument("--out", metavar="PATH")
    report_opt(g)
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify-appendix", help="compare generated polynomials with the reference listing")
    v.add_argument("--data", type=Path, help="reference listing (default: bundled)")
    report_opt(v)
    v.set_defaults(func=cmd_verify_appendix)

    c = sub.add_parser("check", help="decide whether 1 lies in the ideal")
    c.add_argument("--field", default="gf:2")
    c.add_argument("--order", choices=("dp", "Dp", "lp"), default="dp")
    c.add_argument("--subsystem", default=f"1..{SYSTEM_SIZE}", metavar="LO..HI")
    c.add_argument("--cofactors", action="store_true")
    c.add_argument("--budget", type=float, metavar="SECS",
                   help=f"wall-clock cap (default ${BUDGET_ENV} or {DEFAULT_BUDGET:g})")
    c.add_argument("--strategy", choices=("normal", "fifo", "sugar"), default="normal")
    c.add_argument("--expect", choices=("auto", "unit", "proper", "none"), default="auto")
    c.add_argument("--show-basis", action="store_true")
    report_opt(c)
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("bench-orders", help="time the full system under dp, Dp and lp")
    b.add_argument("--field", default="gf:2")
    b.add_argument("--budget-per-order", type=float, metavar="SECS")
    report_opt(b)
    b.set_defaults(func=cmd_bench_orders)

    m = sub.add_parser("mini", help="solve the small commutative constraint system")
    m.add_argument("--case", choices=("commutative",), default="commutative")
    report_opt(m)
    m.set_defaults(func=cmd_mini)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
