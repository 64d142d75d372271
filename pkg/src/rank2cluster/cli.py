"""Command line interface: expansions, characteristic tables, verification.

Machine-readable output goes to stdout and is byte-stable for a fixed
invocation and seed; timings and diagnostics go to stderr.  Exit codes:
0 success or all checks passed, 1 a cross-check or verification failed,
2 usage error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .closedform import (
    chi_formula,
    chi_formula_summands,
    cluster_var_formula,
    cluster_var_formula_v2,
)
from .combinat import ClusterContext
from .identities import RationalPoly, staged_chi_sum, vandermonde_sides, vanishing_check
from .laurent import LaurentPoly2
from .recurrence import chi_from_expansion, cluster_var_recurrence, scalar_cluster_value

# default verification grid: parameter -> largest index
GRID = {2: 12, 3: 8, 4: 7}
VANISHING_CS = (1, 2, 3)
VANISHING_NS = (4, 5, 6, 7)
INVARIANCE_CS = (2, 3)
INVARIANCE_NS = (5, 6, 7)
SUITES = ("all", "grid", "vanishing", "vandermonde", "invariance")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# rendering


def render_poly(poly: LaurentPoly2, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(poly.to_json_terms())
    if fmt == "tsv":
        return "\n".join(f"{d1}\t{d2}\t{v}" for (d1, d2), v in poly.items())
    return str(poly)


def render_chi_table(table, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(table.to_json_obj())
    rows = "\n".join(f"{e1}\t{e2}\t{v}" for (e1, e2), v in table.items())
    if fmt == "tsv":
        return rows
    head = (
        f"# c={table.c} n={table.n} "
        f"dim=({table.dim_vector[0]},{table.dim_vector[1]})"
    )
    return head + "\n" + rows


def render_chi_value(c: int, n: int, e1: int, e2: int, value: int, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"c": c, "n": n, "e1": e1, "e2": e2, "chi": str(value)})
    if fmt == "tsv":
        return f"{e1}\t{e2}\t{value}"
    return str(value)


# ---------------------------------------------------------------------------
# expand / chi commands


def cmd_expand(args) -> int:
    if args.c < 2:
        raise UsageError("expand requires --c >= 2")
    lo = 1 if args.method == "recurrence" else 3
    if args.n < lo:
        raise UsageError(f"expand --method {args.method} requires --n >= {lo}")
    ctx = ClusterContext(args.c)
    if args.method == "formula":
        poly = cluster_var_formula(ctx, args.n)
    elif args.method == "v2":
        poly = cluster_var_formula_v2(ctx, args.n)
    elif args.method == "recurrence":
        poly = cluster_var_recurrence(ctx, args.n)
    else:  # both
        poly = cluster_var_recurrence(ctx, args.n)
        other = cluster_var_formula(ctx, args.n)
        print(render_poly(poly, args.format))
        if poly == other:
            print("MATCH")
            return 0
        print("MISMATCH")
        return 1
    print(render_poly(poly, args.format))
    return 0


def _table_via_formula(ctx: ClusterContext, n: int):
    from .recurrence import ChiTable

    an1, an2 = ctx.a(n - 1), ctx.a(n - 2)
    entries = {}
    for e1 in range(an1 + 1):
        for e2 in range(an2 + 1):
            v = chi_formula(ctx, n, e1, e2)
            if v:
                entries[(e1, e2)] = v
    return ChiTable(ctx.c, n, (an1, an2), entries)


def cmd_chi(args) -> int:
    if args.c < 2:
        raise UsageError("chi requires --c >= 2")
    if args.n < 3:
        raise UsageError("chi requires --n >= 3")
    if (args.e1 is None) != (args.e2 is None):
        raise UsageError("--e1 and --e2 must be given together")
    ctx = ClusterContext(args.c)
    single = args.e1 is not None

    if args.method in ("recurrence", "both"):
        table = chi_from_expansion(ctx, args.n)
    if single:
        if args.method == "formula":
            value = chi_formula(ctx, args.n, args.e1, args.e2)
        elif args.method == "recurrence":
            value = table.chi(args.e1, args.e2)
        else:  # both
            value = table.chi(args.e1, args.e2)
            formula_value = chi_formula(ctx, args.n, args.e1, args.e2)
        print(render_chi_value(args.c, args.n, args.e1, args.e2, value, args.format))
        if args.method == "both":
            if value == formula_value:
                print("MATCH")
                return 0
            print("MISMATCH")
            return 1
        return 0

    if args.method == "formula":
        out = _table_via_formula(ctx, args.n)
    elif args.method == "recurrence":
        out = table
    else:  # both
        out = table
        other = _table_via_formula(ctx, args.n)
        print(render_chi_table(out, args.format))
        if out.entries == other.entries:
            print("MATCH")
            return 0
        print("MISMATCH")
        return 1
    print(render_chi_table(out, args.format))
    return 0


# ---------------------------------------------------------------------------
# verify command: named checks over the acceptance grid


def _check_expand(c: int, n: int, seed: int):
    ctx = ClusterContext(c)
    ok = cluster_var_formula(ctx, n) == cluster_var_recurrence(ctx, n)
    return ok, "closed form == recurrence" if ok else "expansion mismatch"


def _check_v2(c: int, n: int, seed: int):
    ctx = ClusterContext(c)
    ok = cluster_var_formula_v2(ctx, n) == cluster_var_formula(ctx, n)
    return ok, "substituted form == closed form" if ok else "expansion mismatch"


def _check_chi(c: int, n: int, seed: int):
    ctx = ClusterContext(c)
    table = chi_from_expansion(ctx, n)
    an1, an2 = table.dim_vector
    for e1 in range(an1 + 1):
        for e2 in range(an2 + 1):
            if chi_formula(ctx, n, e1, e2) != table.chi(e1, e2):
                return False, f"cell ({e1},{e2}) disagrees"
    rng = random.Random(f"{seed}:chi:{c}:{n}")
    done = 0
    while done < 50:
        e1 = rng.randint(-an1 - 3, 2 * an1 + 3)
        e2 = rng.randint(-an2 - 3, 2 * an2 + 3)
        if 0 <= e1 <= an1 and 0 <= e2 <= an2:
            continue
        if chi_formula(ctx, n, e1, e2) != 0:
            return False, f"out-of-box cell ({e1},{e2}) is nonzero"
        done += 1
    return True, "box + 50 out-of-box cells agree"


def _check_coeffsum(c: int, n: int, seed: int):
    ctx = ClusterContext(c)
    got = cluster_var_formula(ctx, n).eval_exact(1, 1)
    want = scalar_cluster_value(c, n)
    ok = got == want
    return ok, f"x_{n}(1,1) = {want}" if ok else f"got {got}, want {want}"


def _check_denominator(c: int, n: int, seed: int):
    ctx = ClusterContext(c)
    poly = cluster_var_recurrence(ctx, n)
    want = (-ctx.a(n - 1), -ctx.a(n - 2))
    if poly.min_exponents() != want:
        return False, f"minimal exponents {poly.min_exponents()}, want {want}"
    if poly.coeff(*want) != 1:
        return False, f"coefficient at {want} is {poly.coeff(*want)}, want 1"
    return True, f"denominator exponents {want}, unit coefficient"


def _check_positivity(c: int, n: int, seed: int):
    ctx = ClusterContext(c)
    poly = cluster_var_recurrence(ctx, n)
    bad = [k for k, v in poly.items() if v < 0]
    ok = not bad
    return ok, "all coefficients nonnegative" if ok else f"negative at {bad[:3]}"


def _check_nonneg_region(c: int, n: int, seed: int):
    ctx = ClusterContext(c)
    an1, an2, an3 = ctx.a(n - 1), ctx.a(n - 2), ctx.a(n - 3)
    for e2 in range(an2 + 1):
        if c * e2 < an3:
            continue
        for e1 in range(an1 + 1):
            for term in chi_formula_summands(ctx, n, e1, e2):
                if term < 0:
                    return False, f"negative summand at ({e1},{e2})"
            if chi_formula(ctx, n, e1, e2) < 0:
                return False, f"negative value at ({e1},{e2})"
    return True, "values and summands nonnegative for c*e2 >= a_{n-3}"


def _check_vanishing(c: int, n: int, seed: int):
    ctx = ClusterContext(c)
    an1, an2 = ctx.a(n - 1), ctx.a(n - 2)
    span = max(abs(an1), abs(an2), 4)
    rng = random.Random(f"{seed}:vanishing:{c}:{n}")
    done = 0
    while done < 100:
        e1 = rng.randint(-2 * span, 2 * span)
        e2 = rng.randint(-2 * span, 2 * span)
        if e2 * an1 - e1 * an2 >= 0:
            continue
        if not vanishing_check(ctx, n, e1, e2):
            return False, f"nonzero sum at ({e1},{e2})"
        done += 1
    return True, "100 negative-pairing cells vanish"


def _check_invariance(c: int, n: int, seed: int):
    ctx = ClusterContext(c)
    an1, an2 = ctx.a(n - 1), ctx.a(n - 2)
    for e1 in range(an1 + 1):
        for e2 in range(an2 + 1):
            want = chi_formula(ctx, n, e1, e2)
            for stage in range(-1, n - 3):
                if staged_chi_sum(ctx, n, e1, e2, stage) != want:
                    return False, f"stage {stage} differs at ({e1},{e2})"
    return True, "all stages equal the cell value on the full box"


def _check_vandermonde(trials: int, seed: int):
    rng = random.Random(f"{seed}:vandermonde")
    done = 0
    while done < trials:
        a = rng.randint(-12, 12)
        b = rng.randint(-12, 12)
        if a + b < 0:
            continue
        m = rng.randint(-15, 15)
        q = rng.randint(0, min(4, a + b))
        coeffs = [
            Fraction(rng.choice((-1, 1)) * rng.randint(1, 9), rng.randint(1, 9))
            for _ in range(q + 1)
        ]
        poly = RationalPoly.from_coeffs(coeffs)
        lhs, rhs = vandermonde_sides(a, b, m, poly)
        if lhs != rhs:
            return False, f"sides differ at (a={a}, b={b}, m={m})"
        done += 1
    return True, f"{trials} weighted convolution instances agree"


_CHECK_KINDS = {
    "expand": _check_expand,
    "v2": _check_v2,
    "chi": _check_chi,
    "coeffsum": _check_coeffsum,
    "denominator": _check_denominator,
    "positivity": _check_positivity,
    "nonneg-region": _check_nonneg_region,
    "vanishing": _check_vanishing,
    "invariance": _check_invariance,
}


def run_check(desc: dict) -> tuple[str, bool, str, float]:
    t0 = time.perf_counter()
    if desc["kind"] == "vandermonde":
        ok, detail = _check_vandermonde(desc["trials"], desc["seed"])
    else:
        fn = _CHECK_KINDS[desc["kind"]]
        ok, detail = fn(desc["c"], desc["n"], desc["seed"])
    return desc["name"], ok, detail, time.perf_counter() - t0


def build_checks(args) -> list[dict]:
    suite = args.suite
    checks: list[dict] = []

    def cluster_grid():
        for c, top in sorted(GRID.items()):
            if args.c is not None and c != args.c:
                continue
            for n in range(3, min(top, args.n_max) + 1):
                yield c, n

    if suite in ("all", "grid"):
        for c, n in cluster_grid():
            for kind in ("expand", "v2", "chi", "coeffsum", "denominator", "positivity"):
                checks.append(
                    {"kind": kind, "name": f"{kind}/c{c}/n{n:02d}", "c": c, "n": n}
                )
            if c >= 3:
                checks.append(
                    {
                        "kind": "nonneg-region",
                        "name": f"nonneg-region/c{c}/n{n:02d}",
                        "c": c,
                        "n": n,
                    }
                )
    if suite in ("all", "vanishing"):
        for c in VANISHING_CS:
            if args.c is not None and c != args.c:
                continue
            for n in VANISHING_NS:
                if n > args.n_max:
                    continue
                checks.append(
                    {"kind": "vanishing", "name": f"vanishing/c{c}/n{n}", "c": c, "n": n}
                )
    if suite in ("all", "invariance"):
        for c in INVARIANCE_CS:
            if args.c is not None and c != args.c:
                continue
            for n in INVARIANCE_NS:
                if n > args.n_max:
                    continue
                checks.append(
                    {
                        "kind": "invariance",
                        "name": f"invariance/c{c}/n{n}",
                        "c": c,
                        "n": n,
                    }
                )
    if suite in ("all", "vandermonde"):
        checks.append(
            {"kind": "vandermonde", "name": "vandermonde", "trials": args.trials}
        )
    for chk in checks:
        chk["seed"] = args.seed
    return checks


def cmd_verify(args) -> int:
    if args.n_max < 3:
        raise UsageError("verify requires --n-max >= 3")
    if args.c is not None and args.c < 1:
        raise UsageError("verify requires --c >= 1")
    if args.trials < 1:
        raise UsageError("verify requires --trials >= 1")
    if args.jobs < 1:
        raise UsageError("verify requires --jobs >= 1")
    checks = build_checks(args)
    if not checks:
        raise UsageError("no checks selected for this configuration")

    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(run_check, checks))
    else:
        results = [run_check(desc) for desc in checks]
    results.sort(key=lambda r: r[0])

    for name, _ok, _detail, dt in results:
        print(f"# {name}: {dt:.3f}s", file=sys.stderr)

    all_passed = all(ok for _, ok, _, _ in results)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "checks": [
                        {"name": name, "passed": ok, "detail": detail}
                        for name, ok, detail, _ in results
                    ],
                    "all_passed": all_passed,
                }
            )
        )
    elif args.format == "tsv":
        for name, ok, detail, _ in results:
            print(f"{name}\t{'PASS' if ok else 'FAIL'}\t{detail}")
    else:
        for name, ok, detail, _ in results:
            print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        npass = sum(1 for _, ok, _, _ in results if ok)
        print(f"{npass}/{len(results)} checks passed")
    return 0 if all_passed else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rank2cluster",
        description=(
            "Exact rank-two cluster variable expansions and quiver "
            "Grassmannian Euler characteristics, cross-verified."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_expand = sub.add_parser("expand", help="print the expansion of x_n")
    p_expand.add_argument("--c", type=int, required=True)
    p_expand.add_argument("--n", type=int, required=True)
    p_expand.add_argument(
        "--method",
        choices=("formula", "recurrence", "both", "v2"),
        default="both",
    )
    p_expand.add_argument("--format", choices=("json", "tsv", "pretty"), default="pretty")
    p_expand.set_defaults(func=cmd_expand)

    p_chi = sub.add_parser("chi", help="print characteristic values or the full table")
    p_chi.add_argument("--c", type=int, required=True)
    p_chi.add_argument("--n", type=int, required=True)
    p_chi.add_argument("--e1", type=int, default=None)
    p_chi.add_argument("--e2", type=int, default=None)
    p_chi.add_argument(
        "--method", choices=("formula", "recurrence", "both"), default="both"
    )
    p_chi.add_argument("--format", choices=("json", "tsv", "pretty"), default="pretty")
    p_chi.set_defaults(func=cmd_chi)

    p_verify = sub.add_parser("verify", help="run cross-verification checks")
    p_verify.add_argument("--c", type=int, default=None, help="restrict to one parameter")
    p_verify.add_argument("--n-max", type=int, default=max(GRID.values()))
    p_verify.add_argument("--suite", choices=SUITES, default="all")
    p_verify.add_argument("--trials", type=int, default=500)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--format", choices=("json", "tsv", "pretty"), default="pretty")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # exit codes are limited to 0, 1, 2
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
