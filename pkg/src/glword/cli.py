"""Command-line interface: ``glword <command> ...``.

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import secrets
import sys
import time

from . import __version__
from .empirics import distribution_compare, exact_expectation, galois_number, limit_measure, mc_expectation
from .enumeration import default_budget
from .errors import BudgetExceeded, GlwordError
from .gf import field_make, monic_divisors
from .moments import (StatSpec, beta_w_direct, expected_fix, expected_stat, limit_value,
                      principal_summand)
from .primitivity import crit_rank1, pi_q_upto2, rank2_classification
from .ratfunc import frac_str, rf_eval
from .report import Report, emit_report
from .table1 import TABLE1
from .words import Word, parse_word, power_decompose

__all__ = ["main", "build_parser", "run", "parse_stat", "read_matrix_file"]


class UsageError(GlwordError):
    pass


# -- argument helpers ------------------------------------------------------------

def parse_stat(text: str) -> StatSpec:
    name, _, arg = text.partition(":")
    try:
        if name == "fix" and not arg:
            return StatSpec.fix()
        if name == "eigen":
            return StatSpec.eigen(int(arg))
        if name == "moment":
            return StatSpec.moment(int(arg))
        if name == "fixpow":
            return StatSpec.fix_of_power(int(arg))
    except ValueError as e:
        raise UsageError(f"bad statistic {text!r}: {e}") from e
    raise UsageError(f"unknown statistic {text!r} (use fix, eigen:L, moment:K or fixpow:K)")


def read_matrix_file(path: str) -> tuple[int, StatSpec]:
    """First line ``m q``, then m rows of m field codes."""
    with open(path) as fh:
        lines = [ln.split() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    try:
        m, q = int(lines[0][0]), int(lines[0][1])
        rows = [[int(x) for x in ln] for ln in lines[1:1 + m]]
    except (IndexError, ValueError) as e:
        raise UsageError(f"malformed matrix file {path}: {e}") from e
    if len(rows) != m or any(len(r) != m for r in rows):
        raise UsageError(f"matrix file {path} must contain {m} rows of {m} entries")
    return q, StatSpec.custom(rows)


def _word(args) -> Word:
    return parse_word(args.word, args.rank)


def _stat(args) -> StatSpec:
    if getattr(args, "matrix", None):
        q, s = read_matrix_file(args.matrix)
        if q != args.q:
            raise UsageError(f"matrix file is over GF({q}) but -q is {args.q}")
        return s
    return parse_stat(getattr(args, "stat", "fix"))


def _seed(args) -> int:
    return args.seed if args.seed is not None else secrets.randbits(32)


def _field_meta(q: int) -> dict:
    return field_make(q).describe()


# -- commands --------------------------------------------------------------------

def _expectation_report(args, s: StatSpec) -> Report:
    w = _word(args)
    res = expected_stat(w, s, args.q, explain=args.explain, budget=args.budget, K=args.K)
    f = res.ratfunc
    payload = {
        **f.to_json(args.q),
        "word": str(w),
        "rank": w.rank,
        "stat": s.tag,
        "matrix": [list(r) for r in s.matrix],
        "field": _field_meta(args.q),
        "n_min": res.n_min,
        "laurent": res.laurent.to_json(),
        "limit": res.limit,
        "rank_counts": {str(k): v for k, v in res.rank_counts.items()},
        "search_nodes": res.nodes,
    }
    if res.summands is not None:
        payload["summands"] = res.summands
    rows = None
    if res.summands is not None:
        rows = [{"rank": r["rank"], "d": r["d"], "d_b": " ".join(map(str, r["d_b"])),
                 "generators": "; ".join(r["generators"]), "summand": r["summand"]} for r in res.summands]
    else:
        rows = [{"word": str(w), "q": args.q, "stat": s.tag, "n_min": res.n_min,
                 "num": " ".join(payload["num"]), "den": " ".join(payload["den"]),
                 "limit": "" if res.limit is None else frac_str(res.limit),
                 **{f"c{j}": frac_str(c) for j, c in enumerate(res.laurent.coeffs)}}]
    lines = [
        f"E[{s.tag}] for w = {w} over GF({args.q}), valid for N >= {res.n_min}, with Q = q^N:",
        f"  = {f}",
        f"  = {res.laurent.pretty()}",
        f"  limit as N -> inf: {'inf' if res.limit is None else frac_str(res.limit)}",
    ]
    if res.summands is not None:
        lines.append("  per-ideal summands:")
        lines += [f"    rank {r['rank']} d={r['d']} d_b={r['d_b']} [{'; '.join(r['generators'])}]: {r['summand']}"
                  for r in res.summands]
    return Report(payload, rows, lines)


def cmd_fix(args) -> Report:
    return _expectation_report(args, StatSpec.fix())


def cmd_stat(args) -> Report:
    return _expectation_report(args, _stat(args))


def cmd_limit(args) -> Report:
    w = _word(args)
    s = _stat(args)
    val = limit_value(w, s, args.q, budget=args.budget)
    payload = {"word": str(w), "q": args.q, "stat": s.tag, "limit": val, "field": _field_meta(args.q)}
    ok = True
    if s.m == 1:
        rd = power_decompose(w)
        lam = s.matrix[0][0]
        predicted = len(monic_divisors(rd.exponent, lam, field_make(args.q)))
        payload.update(root=str(rd.root), exponent=rd.exponent, monic_divisor_count=predicted,
                       consistent=predicted == val)
        ok = predicted == val
    lines = [f"lim E[{s.tag}] for w = {w} over GF({args.q}): {val}"]
    if "monic_divisor_count" in payload:
        lines.append(f"  monic divisors of x^{payload['exponent']} - {lam}: {payload['monic_divisor_count']}"
                     f" ({'consistent' if ok else 'MISMATCH'})")
    return Report(payload, None, lines, ok)


def _pi_row(w: Word, q: int, budget) -> dict:
    r = pi_q_upto2(w, q, budget)
    row = {"word": str(w), "q": q, "pi_q": r.value, "crit_count": r.crit_count, "note": r.note}
    res = expected_fix(w, q, budget=budget)
    c = res.laurent.coeffs
    row["c0"], row["c1"] = c[0], c[1]
    if r.value == 1:
        row["consistent"] = c[0] == 2 + r.crit_count
    elif r.value == 2:
        row["consistent"] = c[0] == 2 and c[1] == r.crit_count
    else:
        row["consistent"] = c[0] == 2 and c[1] == 0
    return row


def cmd_pi_q(args) -> Report:
    if args.conjecture_scan:
        with open(args.conjecture_scan) as fh:
            words = [ln.split("#")[0].strip() for ln in fh]
        rows = [_pi_row(parse_word(t, args.rank), args.q, args.budget) for t in words if t]
        agree = sum(bool(r["consistent"]) for r in rows)
        payload = {"q": args.q, "scan": rows, "agree": agree, "total": len(rows),
                   "note": "agreement of Laurent coefficients with critical-ideal counts; not a proof"}
        lines = [f"{r['word']}: pi_q={r['pi_q']} crit={r['crit_count']} c0={r['c0']} c1={r['c1']}"
                 f" {'agree' if r['consistent'] else 'DISAGREE'}" for r in rows]
        lines.append(f"{agree}/{len(rows)} agree")
        return Report(payload, rows, lines)
    w = _word(args)
    r = pi_q_upto2(w, args.q, args.budget)
    payload = {"word": str(w), "q": args.q, **r.to_json()}
    lines = [f"pi_q({w}) over GF({args.q}) = {r.value}" + (f"  [{r.note}]" if r.note else "")]
    lines += [f"  critical ideal: ({', '.join(g)})" for g in payload["critical_ideals"]]
    return Report(payload, [{"word": str(w), "q": args.q, "pi_q": r.value, "crit_count": r.crit_count}], lines)


def cmd_crit(args) -> Report:
    w = _word(args)
    if w.is_trivial():
        raise UsageError("the trivial word has no critical ideals")
    q = args.q
    rd = power_decompose(w)
    if rd.exponent > 1:
        crit = crit_rank1(w, q)
        ideals = [{"divisor": p, "generators": I.generator_strings(), "rank": I.rank, "proper": True}
                  for p, I in crit]
        payload = {"word": str(w), "q": q, "root": str(rd.root), "exponent": rd.exponent,
                   "crit1": ideals, "crit1_count": len(ideals)}
        lines = [f"w = {w} = conjugate of ({rd.root})^{rd.exponent}: {len(ideals)} critical ideals of rank 1"]
        lines += [f"  ({i['divisor'].replace('x', 'u')}) -> ({', '.join(i['generators'])})" for i in ideals]
        rows = [{"generators": "; ".join(i["generators"]), "rank": 1, "proper": True, "primitive": False}
                for i in ideals]
        return Report(payload, rows, lines)
    cls = rank2_classification(w, q, args.budget)
    crit = [(I, p) for I, p, prim in cls if p and not prim]
    prim2 = sum(prim for _, _, prim in cls)
    beta = beta_w_direct(w, q)
    res = expected_fix(w, q, budget=args.budget)
    c1 = res.laurent.coeffs[1]
    checks = {
        "c1_equals_crit2": c1 == len(crit),
        "beta_plus_prim2_is_zero": beta + prim2 == 0,
        "principal_summand_c1_equals_beta": principal_summand(w, q).laurent(1).coeffs[1] == beta,
    }
    payload = {"word": str(w), "q": q, "crit2": [I.generator_strings() for I, _ in crit],
               "crit2_count": len(crit), "prim2_count": prim2, "beta": beta, "c1": c1, "checks": checks}
    rows = [{"generators": "; ".join(I.generator_strings()), "rank": 2, "proper": p, "primitive": prim}
            for I, p, prim in cls]
    lines = [f"w = {w} over GF({q}): |Crit2| = {len(crit)}, |Prim2| = {prim2}, beta = {frac_str(beta)},"
             f" c1 = {frac_str(c1)}"]
    lines += [f"  critical: ({', '.join(I.generator_strings())})" for I, _ in crit]
    lines += [f"  check {k}: {'PASS' if v else 'FAIL'}" for k, v in checks.items()]
    return Report(payload, rows, lines, all(checks.values()))


def cmd_oracle(args) -> Report:
    w = _word(args)
    s = _stat(args)
    res = expected_stat(w, s, args.q, budget=args.budget)
    if args.N < res.n_min and not args.force:
        raise UsageError(f"N={args.N} is below n_min={res.n_min}; the formula is not claimed there (use --force)")
    formula = rf_eval(res.ratfunc, args.q, args.N)
    payload = {"word": str(w), "q": args.q, "N": args.N, "stat": s.tag, "n_min": res.n_min, "formula": formula}
    if args.mc:
        seed = _seed(args)
        mc = mc_expectation(w, s, args.N, args.q, args.samples, seed, threads=args.threads)
        ok = abs(mc["estimate"] - float(formula)) <= 4 * mc["stderr"]
        payload.update(method="monte-carlo", oracle=mc["estimate"], stderr=mc["stderr"], samples=args.samples,
                       seed=seed, prng=mc["prng"], tolerance="4 standard errors")
    else:
        oracle = exact_expectation(w, s, args.N, args.q, budget=args.budget or 10 ** 8)
        ok = oracle == formula
        payload.update(method="exact", oracle=oracle)
    payload["pass"] = ok
    lines = [f"w = {w}, {s.tag}, q = {args.q}, N = {args.N}: formula {frac_str(formula)},"
             f" oracle {payload['oracle'] if args.mc else frac_str(payload['oracle'])}: {'PASS' if ok else 'FAIL'}"]
    return Report(payload, [{k: payload[k] for k in ("word", "q", "N", "stat", "formula", "oracle", "pass")}],
                  lines, ok)


def cmd_limitdist(args) -> Report:
    w = _word(args)
    seed = _seed(args)
    rep = distribution_compare(w, args.N, args.q, args.samples, seed, allow_powers=args.allow_powers,
                               threads=args.threads)
    nu = limit_measure(args.q, T=args.atoms, terms=args.terms)
    moments = {str(n): {"limit": float(nu.moment(n)), "galois": galois_number(n, args.q)} for n in range(1, 5)}
    ok = args.max_tv is None or rep["tv"] <= args.max_tv
    payload = {**rep, "normalisation": float(sum(nu.masses)), "truncation_error": nu.truncation_error,
               "limit_moments": moments, "pass": ok}
    if args.allow_powers and power_decompose(w).exponent > 1:
        payload["note"] = "exploratory: the limit law is only established for non-powers"
    rows = [{"atom": r["atom"], "empirical": r["empirical"], "limit": r["limit"], "abs_diff": r["abs_diff"]}
            for r in rep["rows"]]
    lines = [f"fix(w(g)) for w = {w}, q = {args.q}, N = {args.N}, {args.samples} samples, seed {seed}:"]
    lines += [f"  q^{r['k']:<3} empirical {r['empirical']:.5f}  limit {r['limit']:.5f}" for r in rep["rows"]]
    lines.append(f"  total variation {rep['tv']:.5f}")
    return Report(payload, rows, lines, ok)


def cmd_verify_table1(args) -> Report:
    results = []
    for row in TABLE1:
        if args.only and row.word not in args.only:
            continue
        w = parse_word(row.word)
        checks = []
        t0 = time.perf_counter()
        nodes = 0
        for q in row.qs:
            if args.skip_heavy and q in row.heavy:
                continue
            res = expected_fix(w, q, budget=args.budget)
            nodes += res.nodes
            ref = row.formula(q)
            good = res.ratfunc == ref and res.n_min == row.n_min
            if ref.is_constant():
                good = good and limit_value(w, StatSpec.fix(), q, budget=args.budget) == ref.num[0]
            checks.append({"q": q, "pass": good, "got": str(res.ratfunc), "expected": str(ref)})
        ok = all(c["pass"] for c in checks)
        results.append({"word": row.word, "qs": [c["q"] for c in checks], "n_min": row.n_min, "pass": ok,
                        "checks": checks, "seconds": round(time.perf_counter() - t0, 3), "search_nodes": nodes,
                        "heavy": list(row.heavy)})
    passed = sum(r["pass"] for r in results)
    payload = {"rows": results, "passed": passed, "total": len(results)}
    lines = [f"{r['word']:<10} q={','.join(map(str, r['qs'])):<10} N>={r['n_min']}  "
             f"{'PASS' if r['pass'] else 'FAIL'}  ({r['search_nodes']} nodes)" for r in results]
    lines.append(f"{passed}/{len(results)} PASS")
    rows = [{"word": r["word"], "qs": " ".join(map(str, r["qs"])), "n_min": r["n_min"], "pass": r["pass"],
             "search_nodes": r["search_nodes"]} for r in results]
    return Report(payload, rows, lines, passed == len(results))


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "pretty"], default="json")
    common.add_argument("--output", "-o", help="write the report to this file instead of stdout")
    common.add_argument("--budget", type=int, default=None,
                        help=f"search node budget (default {default_budget()}, env GLWORD_BUDGET)")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)

    word = argparse.ArgumentParser(add_help=False)
    word.add_argument("-w", "--word", required=True, help="word, e.g. '[a,b]' or 'a^2b^3'")
    word.add_argument("--rank", type=int, default=None, help="free rank (default: largest generator used)")
    word.add_argument("-q", type=int, required=True, help="field size (prime power <= 64)")

    stat = argparse.ArgumentParser(add_help=False)
    stat.add_argument("--stat", default="fix", help="fix | eigen:L | moment:K | fixpow:K")
    stat.add_argument("--matrix", help="file with 'm q' then m rows of field codes")

    ap = argparse.ArgumentParser(prog="glword", description="Exact word-measure expectations on GL_N(F_q).")
    ap.add_argument("--version", action="version", version=f"glword {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fix", parents=[common, word], help="E_w[fix] as a rational function of q^N")
    p.add_argument("-K", type=int, default=3, help="Laurent expansion order")
    p.add_argument("--explain", action="store_true", help="include the per-ideal summand table")
    p.set_defaults(func=cmd_fix)

    p = sub.add_parser("stat", parents=[common, word, stat], help="expectation of a general B-statistic")
    p.add_argument("-K", type=int, default=3)
    p.add_argument("--explain", action="store_true")
    p.set_defaults(func=cmd_stat)

    p = sub.add_parser("limit", parents=[common, word, stat], help="N -> infinity limit of an expectation")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("pi-q", parents=[common], help="q-primitivity rank up to 2")
    p.add_argument("-w", "--word")
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--conjecture-scan", metavar="FILE",
                   help="scan words (one per line) and report agreement of c0/c1 with critical-ideal counts")
    p.set_defaults(func=cmd_pi_q)

    p = sub.add_parser("crit", parents=[common, word], help="critical ideals, Prim2 count and beta check")
    p.set_defaults(func=cmd_crit)

    p = sub.add_parser("oracle", parents=[common, word, stat], help="compare the formula with matrix-group oracles")
    p.add_argument("-N", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", help="exhaustive enumeration (default)")
    g.add_argument("--mc", action="store_true", help="Monte Carlo estimate")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--force", action="store_true", help="allow N below n_min")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("limitdist", parents=[common, word], help="empirical law of fix against the limit law")
    p.add_argument("-N", type=int, required=True)
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--allow-powers", action="store_true")
    p.add_argument("--max-tv", type=float, default=None, help="fail (exit 1) above this total variation")
    p.add_argument("--atoms", type=int, default=40, help="atoms of the limit law used for moments")
    p.add_argument("--terms", type=int, default=200, help="factors kept in the infinite product")
    p.set_defaults(func=cmd_limitdist)

    p = sub.add_parser("verify-table1", parents=[common], help="check the reference closed forms")
    p.add_argument("--only", nargs="*", help="restrict to these words")
    p.add_argument("--skip-heavy", action="store_true")
    p.set_defaults(func=cmd_verify_table1)
    return ap


def run(argv: list[str] | None = None) -> tuple[int, Report | None]:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "command", None) == "pi-q" and not args.word and not args.conjecture_scan:
        ap.error("pi-q needs -w/--word or --conjecture-scan")
    if args.budget is not None and args.budget < 1:
        ap.error("--budget must be positive")
    report = args.func(args)
    data = emit_report(report, args.format)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return (0 if report.ok else 1), report


def main(argv: list[str] | None = None) -> int:
    try:
        code, _ = run(argv)
        return code
    except BudgetExceeded as e:
        print(f"glword: {e}", file=sys.stderr)
        return 3
    except (GlwordError, ValueError, OSError) as e:
        print(f"glword: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
