"""Command-line front end.

Exit codes: 0 success or maximal, 1 parse/precondition error or a code that
is not maximal, 2 inconclusive (sampled verification), 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

from . import codefile, construct, genericity
from .code import BudgetExceeded, lift_pivots, lift_to_rref, verify_maximal
from .ferrers import (
    FerrersDiagram,
    delta_n_classification,
    enumerate_diagrams,
    mds_constructible,
    mds_diagonal,
    not_subfield_realizable,
    nu_min,
    nu_profile,
    pending_dots,
    reachable,
    staircase_check,
)

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_BUDGET = 0, 1, 2, 3
SURVEY_LIMIT = 10**6


def _diagram(text: str) -> FerrersDiagram:
    try:
        return FerrersDiagram.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _mode(text: str):
    if text == "exact":
        return "exact"
    parts = text.split(":")
    if len(parts) != 3 or parts[0] != "sampled":
        raise argparse.ArgumentTypeError("mode is 'exact' or 'sampled:<trials>:<seed>'")
    try:
        return "sampled", int(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad sampled mode {text!r}") from None


def _fmt_dots(dots) -> str:
    return " ".join(f"({i},{j})" for i, j in sorted(dots)) or "none"


def cmd_bound(args) -> int:
    prof = nu_profile(args.diagram, args.delta)
    print(f"diagram: {args.diagram}")
    print(f"delta: {args.delta}")
    print("nu: " + " ".join(f"nu_{j}={v}" for j, v in enumerate(prof.nu)))
    print(f"nu_min={prof.nu_min}")
    print("argmin: " + ",".join(map(str, prof.argmin)))
    return EXIT_OK


def cmd_analyze(args) -> int:
    F, delta = args.diagram, args.delta
    prof = nu_profile(F, delta)
    print(f"diagram: {F}")
    print(f"nu_min = {prof.nu_min}")
    if prof.nu_min == 0:
        print("nu_min = 0: the zero code is maximal, all predicates are vacuous")
        return EXIT_OK
    print(f"pending dots: {_fmt_dots(pending_dots(F, delta))}")
    ok, s = mds_constructible(F, delta)
    print(f"diagonal sum: {s}")
    print(f"MDS-constructible: {'yes' if ok else 'no'}")
    hit = mds_diagonal(F, delta)
    print("MDS diagonal: " + ("none" if hit is None else f"D_{hit[1]} (alpha={hit[0]})"))
    if 2 <= delta:
        print(f"staircase condition: {'yes' if staircase_check(F, delta) else 'no'}")
        print(f"not subfield-realizable: {'yes' if not_subfield_realizable(F, delta) else 'no'}")
    if delta == F.n and F.n <= F.m:
        rep = delta_n_classification(F)
        conds = " ".join(f"{k}={'yes' if v else 'no'}" for k, v in rep.conditions.items())
        print(f"delta = n case {rep.case}: c={rep.c} {conds} consistent={'yes' if rep.consistent else 'no'}")
    return EXIT_OK


def _build(args):
    name = args.method
    need = {
        "gabidulin": ("q", "m", "n", "delta"),
        "fn1": ("diagram", "delta", "q"),
        "staircase": ("diagram", "delta", "q"),
        "ctn": ("diagram", "delta", "q"),
        "mds-diagonal": ("diagram", "delta", "q"),
        "invariance": ("q", "m", "n", "delta", "b"),
        "companion": ("q", "m", "i"),
        "ut-explicit": ("n", "q"),
        "ut-recursive": ("n", "q"),
        "f1334": ("q",),
    }[name]
    missing = [k for k in need if getattr(args, k) is None]
    if missing:
        raise ValueError(f"{name} needs --{' --'.join(missing)}")
    fn = construct.METHODS[name]
    if name == "gabidulin":
        return fn(args.q, args.m, args.n, args.delta).code
    if name in ("fn1", "staircase", "ctn", "mds-diagonal"):
        return fn(args.diagram, args.delta, args.q)
    if name == "invariance":
        return fn(args.q, args.m, args.n, args.delta, args.b)
    if name == "companion":
        return fn(args.q, args.m, args.i, args.t or 0)
    if name == "ut-explicit":
        return fn(args.n, args.q, args.c, args.d)
    if name == "ut-recursive":
        return fn(args.n, args.q)
    return fn(args.q)


def _report_exit(rep) -> int:
    if rep.is_maximal is None:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if rep.is_maximal else EXIT_FAIL


def cmd_construct(args) -> int:
    C = _build(args)
    if args.out:
        codefile.write(C, args.out)
    else:
        sys.stdout.write(codefile.dumps(C))
    if args.no_verify:
        return EXIT_OK
    rep = verify_maximal(C, threads=args.threads)
    print(rep.summary(), file=sys.stderr if not args.out else sys.stdout)
    return _report_exit(rep)


def cmd_verify(args) -> int:
    C = codefile.read(args.file)
    F = args.shape or C.shape
    delta = args.delta or C.delta
    if F is None:
        F = FerrersDiagram([C.m] * C.n, C.m)
    rep = verify_maximal(C, F, delta, mode=args.mode, threads=args.threads)
    print(rep.summary())
    return _report_exit(rep)


def cmd_lift(args) -> int:
    C = codefile.read(args.file)
    F = args.shape or C.shape
    if F is None:
        raise ValueError("lifting needs a shape in the file or --shape")
    print("pivots: " + ",".join(map(str, lift_pivots(F))))
    for t, L in enumerate(lift_to_rref(C, F), start=1):
        print(f"\nlift {t}")
        for row in L.data:
            print(" ".join(str(int(v)) for v in row))
    return EXIT_OK


SURVEY_COLUMNS = ["diagram", "normalized", "nu_min", "diagonal_sum", "mds_constructible",
                  "mds_diagonal", "staircase", "not_subfield_realizable", "pending", "chart",
                  "constructors"]


def survey_rows(m: int, n: int, delta: int, q: int) -> list[dict]:
    """One row per ``m x n`` diagram.

    ``chart`` names the reduction chart reaching the diagram: ``full`` from the
    all-``m`` diagram, ``triangle`` from ``[m-n+1, ..., m]``; positive
    ``nu_min`` diagrams in neither chart are ``ad-hoc only`` when normalized
    (first column nonempty, last column full) and ``outside`` otherwise.
    """
    if math.comb(m + n, n) > SURVEY_LIMIT:
        raise BudgetExceeded(f"C({m + n},{n}) diagrams exceed the survey limit {SURVEY_LIMIT}")
    full = reachable(FerrersDiagram([m] * n, m), delta)
    tri = reachable(FerrersDiagram([max(0, m - n + j) for j in range(1, n + 1)], m), delta)
    rows = []
    for F in enumerate_diagrams(m, n):
        nm = nu_min(F, delta)
        normalized = F.cols[0] > 0 and F.cols[-1] == m
        if nm == 0:
            chart = ""
        elif F in full and F in tri:
            chart = "both"
        elif F in full:
            chart = "full"
        elif F in tri:
            chart = "triangle"
        else:
            chart = "ad-hoc only" if normalized else "outside"
        ok, s = mds_constructible(F, delta)
        hit = mds_diagonal(F, delta) if nm > 0 else None
        methods = construct.applicable_methods(F, delta, q) if nm > 0 else []
        if chart in ("full", "triangle", "both"):
            methods.append("reduction")
        rows.append({
            "diagram": ",".join(map(str, F.cols)),
            "normalized": int(normalized),
            "nu_min": nm,
            "diagonal_sum": s,
            "mds_constructible": int(ok),
            "mds_diagonal": "" if hit is None else f"D{hit[1]}",
            "staircase": int(staircase_check(F, delta)) if delta >= 2 else "",
            "not_subfield_realizable": int(not_subfield_realizable(F, delta)) if delta >= 2 else "",
            "pending": len(pending_dots(F, delta)),
            "chart": chart,
            "constructors": ";".join(methods),
        })
    return rows


def cmd_survey(args) -> int:
    if not 1 <= args.delta <= args.n:
        raise ValueError(f"delta must lie in [1, {args.n}]")
    rows = survey_rows(args.m, args.n, args.delta, args.q)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.DictWriter(out, SURVEY_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def _proportion_mode(args):
    if args.exhaustive:
        return "exact"
    return "sampled", args.trials, args.seed


def _emit(header: list[str], params: list, rep) -> None:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(header + genericity.CSV_TAIL + ["proportion"])
    w.writerow([str(p) for p in params] + rep.csv_fields() + [f"{rep.proportion:.8g}"])


def cmd_proportion(args) -> int:
    kind = args.kind
    if kind == "m2":
        if args.m is None or args.q is None:
            raise ValueError("m2 needs --m and --q")
        val = genericity.proportion_m2_mrd(args.m, args.q)
        print("m,q,proportion,value")
        print(f"{args.m},{args.q},{val},{float(val):.8g}")
        return EXIT_OK
    mode = _proportion_mode(args)
    if kind == "mrd":
        if None in (args.m, args.n, args.q):
            raise ValueError("mrd needs --m --n --q")
        delta = args.delta if args.delta is not None else args.n
        if args.exhaustive and not (args.q == 2 and args.m <= 4):
            print(f"warning: exhaustive run over {args.q}^{args.m * args.m * (args.n - 1)} tuples",
                  file=sys.stderr)
        rep = genericity.mrd_proportion_normalized(args.m, args.n, delta, args.q, mode,
                                                   threads=args.threads)
        _emit(["m", "n", "delta", "q"], [args.m, args.n, delta, args.q], rep)
        return EXIT_OK
    if args.diagram is None or args.delta is None or args.q is None:
        raise ValueError("generic needs --diagram --delta --q")
    rep = genericity.proportion_generic(args.diagram, args.delta, args.q, mode,
                                        normalized=args.normalized, threads=args.threads)
    _emit(["diagram", "delta", "q", "normalized"],
          [args.diagram, args.delta, args.q, int(args.normalized)], rep)
    return EXIT_OK


def cmd_count(args) -> int:
    exact = genericity.s_n_exact(args.n, args.q)
    print(exact)
    if args.exhaustive:
        brute = genericity.count_spectrum_free(args.n, args.q)
        print(f"exhaustive: {brute}")
        if brute != exact:
            print("mismatch between formula and enumeration", file=sys.stderr)
            return EXIT_FAIL
    return EXIT_OK


def cmd_limits(args) -> int:
    print(f"pi({args.q}) ~ {genericity.pi_q(args.q, args.terms):.7f} ({args.terms} factors)")
    for n in range(1, 6):
        sf, indep = genericity.independence_comparison(n, args.q)
        partial = sum((-1) ** j / math.factorial(j) for j in range(n + 1))
        print(f"n={n}: s_n/q^(n^2)={float(sf):.7f} (gamma_n/q^(n^2))^q={float(indep):.7f} "
              f"sum_(j<=n) (-1)^j/j!={partial:.7f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ferro", description="Maximal Ferrers diagram rank-metric codes.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="nu profile and nu_min")
    p.add_argument("diagram", type=_diagram)
    p.add_argument("--delta", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("analyze", help="predicates for a diagram")
    p.add_argument("diagram", type=_diagram)
    p.add_argument("--delta", type=int, required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="build a code and write it as a code file")
    p.add_argument("method", choices=sorted(construct.METHODS))
    p.add_argument("--diagram", type=_diagram)
    for name in ("q", "m", "n", "delta", "b", "i", "t", "c", "d"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("-o", "--out")
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a code file for maximality")
    p.add_argument("file")
    p.add_argument("--shape", type=_diagram)
    p.add_argument("--delta", type=int)
    p.add_argument("--mode", type=_mode, default="exact")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lift", help="RREF lifts of a code file's basis")
    p.add_argument("file")
    p.add_argument("--shape", type=_diagram)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("survey", help="CSV over all m x n diagrams")
    for name in ("m", "n", "delta", "q"):
        p.add_argument(name, type=int)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("proportion", help="proportion of maximal codes (CSV)")
    p.add_argument("kind", choices=["generic", "mrd", "m2"])
    p.add_argument("--diagram", type=_diagram)
    for name in ("m", "n", "delta", "q"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--normalized", action="store_true")
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_proportion)

    p = sub.add_parser("count", help="number of spectrum-free matrices")
    p.add_argument("what", choices=["spectrum-free"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("limits", help="infinite product pi(q) and small-n comparison")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--terms", type=int, default=100)
    p.set_defaults(func=cmd_limits)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_FAIL if exc.code else EXIT_OK
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
