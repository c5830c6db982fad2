"""Command-line front end.

Exit codes:
    0 - every check holds / command succeeded
    1 - an identity mismatch or a statistical rejection
    2 - usage error
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Sequence

from . import exact_oracle, identities
from .montecarlo import McConfig, estimate_event, exact_value
from .pattern_events import Pattern, all_patterns, event_probability
from .qseries import eval_euler_function, format_series
from .shuffle_core import format_shuffle

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _time_set(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_pattern_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--I", dest="I", type=_time_set, default=[], help="leftmost times, e.g. 2,5")
    p.add_argument("--J", dest="J", type=_time_set, default=[], help="anti-leftmost times, e.g. 1,3")
    p.add_argument("--J-inf", dest="J_inf", action="store_true",
                   help="extend J past its largest time up to the horizon")


def _pattern(args) -> Pattern:
    return Pattern.of(args.I, args.J, args.J_inf)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pentashuffle", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help, formats=("json", "text", "csv"), default="json"):
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=formats, default=default)
        return p

    p = add("check-pnt", "pentagonal number theorem modulo q^T")
    p.add_argument("--T", type=_positive_int, default=500)

    for name, help in (("check-induction", "probabilistic recursion for N = 0..N_max"),
                       ("check-euler", "Euler's recursion, and its agreement with the probabilistic one")):
        p = add(name, help)
        p.add_argument("--N-max", dest="N_max", type=_natural, default=10)
        p.add_argument("--T", type=_positive_int, default=200)

    p = add("enumerate", "exact distribution table at horizon K", default="csv")
    p.add_argument("--K", type=_natural, required=True)
    p.add_argument("--max-horizon", type=_positive_int, default=exact_oracle.DEFAULT_MAX_HORIZON)
    _add_pattern_args(p)

    p = add("oracle-sweep", "enumeration vs product formula for every pattern, horizons 1..K")
    p.add_argument("--K", type=_positive_int, default=5)

    p = add("simulate", "Monte Carlo estimate of an event probability")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--K", type=_positive_int, required=True)
    p.add_argument("--trials", type=_positive_int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--z-max", dest="z_max", type=float, default=4.0,
                   help="reject when |z| exceeds this")
    _add_pattern_args(p)

    p = add("easter-egg", "floor of 1/(tanh 1; tanh 1)_inf", formats=("json", "text"))
    p.add_argument("--eps", type=float, default=1e-12)
    return parser


def _emit_reports(reports: list[identities.IdentityReport], fmt: str, out) -> int:
    rows = [r.to_json() for r in reports]
    if fmt == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["name", "N", "T", "holds", "runtime_ms", "first_mismatch_exponent"])
        for r in reports:
            w.writerow([r.name, "" if r.N is None else r.N, r.order, str(r.holds).lower(),
                        f"{r.runtime * 1000:.3f}", "" if r.first_mismatch is None else r.first_mismatch[0]])
    else:
        for r in reports:
            tag = r.name if r.N is None else f"{r.name} N={r.N}"
            line = f"{tag} T={r.order}: {'holds' if r.holds else 'FAILS'}"
            if r.first_mismatch:
                e, a, b = r.first_mismatch
                line += f" (first mismatch at q^{e}: {a} vs {b})"
            out.write(line + "\n")
    return EXIT_OK if all(r.holds for r in reports) else EXIT_FAIL


def _cmd_enumerate(args, out) -> int:
    table = exact_oracle.enumerate_distribution(args.K, max_horizon=args.max_horizon)
    pattern = _pattern(args)
    members = exact_oracle.oracle_event_set(table, pattern)
    rows = [(s, table.rows[s]) for s in sorted(members)]
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["shuffle", "probability"])
        for s, v in rows:
            w.writerow([format_shuffle(s), format_series(v)])
    elif args.format == "json":
        total = exact_oracle.oracle_event_probability(table, pattern)
        json.dump({"K": table.horizon, "T": table.order, "pattern": pattern.to_json(),
                   "rows": [{"shuffle": format_shuffle(s), "probability": v.to_json()} for s, v in rows],
                   "total": total.to_json()}, out, indent=2)
        out.write("\n")
    else:
        for s, v in rows:
            out.write(f"{format_shuffle(s)}  {format_series(v)}\n")
    return EXIT_OK


def _cmd_oracle_sweep(args, out) -> int:
    results = []
    for K in range(1, args.K + 1):
        table = exact_oracle.enumerate_distribution(K)
        mismatches = [p for p in all_patterns(K)
                      if exact_oracle.oracle_event_probability(table, p) != event_probability(p, table.order)]
        results.append({"K": K, "patterns": 3**K, "mismatches": len(mismatches),
                        "holds": not mismatches,
                        "first_mismatch": mismatches[0].to_json() if mismatches else None})
    if args.format == "json":
        json.dump(results, out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["K", "patterns", "mismatches", "holds"])
        for r in results:
            w.writerow([r["K"], r["patterns"], r["mismatches"], str(r["holds"]).lower()])
    else:
        for r in results:
            out.write(f"K={r['K']}: {r['patterns']} patterns, {r['mismatches']} mismatches\n")
    return EXIT_OK if all(r["holds"] for r in results) else EXIT_FAIL


def _cmd_simulate(args, out) -> int:
    cfg = McConfig(args.q, args.K, args.trials, args.seed)
    pattern = _pattern(args)
    est = estimate_event(cfg, pattern, workers=args.workers)
    exact = exact_value(pattern, cfg.q, cfg.horizon)
    z = est.z_score(exact)
    result = {"q": cfg.q, "K": cfg.horizon, "trials": cfg.trials, "seed": cfg.seed,
              "pattern": pattern.to_json(), "p_hat": est.p_hat, "stderr": est.stderr,
              "exact": exact, "z_score": z if math.isfinite(z) else str(z)}
    if args.format == "json":
        json.dump(result, out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["p_hat", "stderr", "exact", "z_score"])
        w.writerow([est.p_hat, est.stderr, exact, z])
    else:
        out.write(f"p_hat={est.p_hat:.6f} stderr={est.stderr:.2e} exact={exact:.10f} z={z:.3f}\n")
    return EXIT_OK if abs(z) <= args.z_max else EXIT_FAIL


def _cmd_easter_egg(args, out) -> int:
    q = math.tanh(1.0)
    ev = eval_euler_function(q, args.eps)
    inverse = 1.0 / ev.value
    # a value within the tail bound of an integer would make the floor unreliable
    slack = inverse * math.expm1(ev.tail_bound)
    if math.floor(inverse - slack) != math.floor(inverse + slack):
        print(f"floor not determined: 1/(q;q)_inf = {inverse} +- {slack}", file=sys.stderr)
        return EXIT_FAIL
    answer = math.floor(inverse)
    if args.format == "json":
        json.dump({"floor": answer, "inverse": inverse, "product": ev.value, "q": q,
                   "tail_bound": ev.tail_bound, "factors": ev.factors}, out, indent=2)
        out.write("\n")
    else:
        out.write(f"{answer}  (1/(tanh 1; tanh 1)_inf = {inverse:.12f})\n")
    return EXIT_OK


def run(args: argparse.Namespace, out=None) -> int:
    out = out or sys.stdout
    try:
        if args.command == "check-pnt":
            return _emit_reports([identities.check_pnt(args.T)], args.format, out)
        if args.command == "check-induction":
            return _emit_reports(identities.check_prob_induction(args.N_max, args.T), args.format, out)
        if args.command == "check-euler":
            return _emit_reports(identities.check_euler_induction(args.N_max, args.T), args.format, out)
        if args.command == "enumerate":
            return _cmd_enumerate(args, out)
        if args.command == "oracle-sweep":
            return _cmd_oracle_sweep(args, out)
        if args.command == "simulate":
            return _cmd_simulate(args, out)
        if args.command == "easter-egg":
            return _cmd_easter_egg(args, out)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    raise AssertionError(f"unhandled command {args.command}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(args)


def run_captured(argv: Sequence[str]) -> tuple[int, str]:
    """Run a command and return ``(exit code, stdout text)``."""
    buf = io.StringIO()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), ""
    return run(args, buf), buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
