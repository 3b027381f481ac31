"""Command-line driver.

Exit status: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import counting, meanfield, oracle
from .core import TruthTable, from_wolfram, mask_subset, to_set_family, weight, wolfram_index
from .irreducibility import is_canalizing, lambda_degree
from .kauffman import divergence_experiment
from .ring import IndexSet, embed, is_reducible_on, project

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _default_workers() -> int:
    raw = os.environ.get("BOOLFN_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _k_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            return [int(text)]
        a, b = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(a, b + 1))


def _write(out: str | None, text: str) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _fmt_subset(A) -> str:
    return "{" + ",".join(map(str, sorted(A))) + "}"


def cmd_classify(args) -> int:
    if args.bits is not None:
        try:
            T = TruthTable.from_string(args.bits)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if args.k is not None and T.k != args.k:
            raise UsageError(f"bit string of length {len(args.bits)} does not match k={args.k}")
    else:
        if args.k is None:
            raise UsageError("--mu requires --k")
        T = from_wolfram(args.k, args.mu)

    rep = lambda_degree(T)
    can = is_canalizing(T)
    family = to_set_family(T)
    result = {
        "k": T.k,
        "mu": str(wolfram_index(T)),
        "bits": T.to_string(),
        "omega": weight(T),
        "lambda": rep.lam,
        "irreducible_indices": list(rep.irreducible_indices),
        "reducible_indices": list(rep.reducible_indices),
        "f_counts": list(rep.f_counts),
        "canalizing": can.is_canalizing,
        "witnesses": [list(w) for w in can.witnesses],
        "set_family": [_fmt_subset(mask_subset(m)) for m in sorted(family.masks)],
    }
    status = EXIT_OK
    if args.ring_check:
        I = IndexSet(T.k, rep.reducible_indices)
        ok = is_reducible_on(family, I) and embed(project(family, I), I) == family
        result["ring_check"] = "ok" if ok else "failed"
        status = EXIT_OK if ok else EXIT_VERIFY

    if args.format == "json":
        sys.stdout.write(json.dumps(result, indent=1) + "\n")
    else:
        for key, val in result.items():
            if isinstance(val, bool):
                val = "yes" if val else "no"
            elif isinstance(val, list):
                val = " ".join(",".join(map(str, v)) if isinstance(v, list) else str(v) for v in val)
            sys.stdout.write(f"{key}: {val}\n")
    return status


def cmd_enumerate(args) -> int:
    progress = None
    if args.progress:
        def progress(done, total):
            print(f"progress {done}/{total}", file=sys.stderr)

    res = oracle.enumerate_census(args.k, workers=args.workers, progress=progress)
    _write(args.out, res.to_csv())
    print(
        f"k={res.k} scanned={res.functions_scanned} canalizing={res.canalizing_count} "
        f"elapsed={res.elapsed:.3f}s workers={args.workers}",
        file=sys.stderr,
    )
    if args.verify:
        diffs = oracle.compare_census(res, counting.rho_table(args.k))
        for d in diffs:
            print(f"MISMATCH {d}", file=sys.stderr)
        if diffs:
            return EXIT_VERIFY
        print("verify: census equals analytic table", file=sys.stderr)
    return EXIT_OK


def cmd_count(args) -> int:
    table = counting.rho_table(args.k)
    _write(args.out, table.to_csv() if args.format == "csv" else table.to_json() + "\n")
    return EXIT_OK


def cmd_phase(args) -> int:
    points = meanfield.phase_grid(args.k_range, args.p_steps)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "p", "delta", "delta_ds", "regime"])
    for pt in points:
        w.writerow([pt.k, repr(pt.p), repr(pt.delta), repr(meanfield.delta_ds(pt.k, pt.p)), pt.regime])
    _write(args.out, buf.getvalue())
    return EXIT_OK


def _json_number(x: float):
    return x if math.isfinite(x) else str(x)


def cmd_netstats(args) -> int:
    st = meanfield.network_stats(args.n, args.k, args.p)
    out = {
        "n": st.n,
        "k": st.k,
        "p": args.p,
        "theta": _json_number(st.theta),
        "log_theta": meanfield.log_theta_nk(args.n, args.k),
        "phi": st.phi,
        "p_invariant": st.p_invariant,
    }
    sys.stdout.write(json.dumps(out, indent=1) + "\n")
    return EXIT_OK


def cmd_simulate(args) -> int:
    series = divergence_experiment(
        args.n, args.k, args.p, d0=args.d0, horizon=args.horizon,
        runs=args.runs, seed=args.seed, workers=args.workers,
    )
    summary = series.summary()
    summary.update(k=args.k, p=args.p, d0=args.d0, seed=args.seed,
                   delta=meanfield.delta(args.k, args.p), delta_ds=meanfield.delta_ds(args.k, args.p))
    _write(args.out, series.to_csv())
    text = json.dumps(summary, indent=1) + "\n"
    if args.summary:
        _write(args.summary, text)
    else:
        (sys.stderr if args.out in (None, "-") else sys.stdout).write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="boolfn", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="degree, weight, canalization of one function")
    p.add_argument("--k", type=int)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--mu", type=int, help="Wolfram rule number (1-based)")
    g.add_argument("--bits", help="truth table, leftmost character is sigma_1")
    p.add_argument("--ring-check", action="store_true")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("enumerate", help="exhaustive census of all k-argument functions")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument("--out")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--progress", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", help="analytic degree/weight count table")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("phase", help="mean-field phase diagram on a (k, p) grid")
    p.add_argument("--k-range", type=_k_range, default=_k_range("1..8"))
    p.add_argument("--p-steps", type=int, default=200)
    p.add_argument("--out")
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("netstats", help="network multiplicity and invariance statistics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=float, default=0.5)
    p.set_defaults(func=cmd_netstats)

    p = sub.add_parser("simulate", help="Hamming damage spreading in random NK networks")
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--d0", type=int, default=16)
    p.add_argument("--horizon", type=int, default=30)
    p.add_argument("--runs", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument("--out")
    p.add_argument("--summary", help="write the JSON summary here instead of stdout")
    p.set_defaults(func=cmd_simulate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"boolfn {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
