"""Command-line interface: ``aginorm verify|sweep|search|compound|list``.

Exit codes: 0 success, 1 unexpected violations (or an invalid campaign),
2 bad flags, 3 I/O failure.  ``AGINORM_THREADS`` caps the worker threads
used by campaigns.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys

import numpy as np

from .catalog import parse_id, registry_list
from .compound import compound, lemma_residuals
from .errors import AginormError, IoFailure
from .linalg import make_rng, sample_ginibre
from .search import CampaignConfig, Mode, emit_report, run_campaign, search_gap

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
GRID_TOL = 1e-12


class UsageError(Exception):
    pass


def parse_dims(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise UsageError(f"bad dimension range {text!r}, expected a..b") from None


def parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"bad range {text!r}, expected lo:hi") from None
    return lo, hi


def parse_grid(text: str) -> list[float]:
    """``lo:hi:step``; ``hi`` is included when it lies on the step lattice within 1e-12."""
    try:
        lo, hi, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"bad grid {text!r}, expected lo:hi:step") from None
    if not (step > 0 and hi >= lo and math.isfinite(hi - lo)):
        raise UsageError(f"grid {text!r} needs step > 0 and hi >= lo")
    k = (hi - lo) / step
    whole = round(k)
    if abs((hi - lo) - whole * step) <= GRID_TOL:
        return [lo + i * step for i in range(whole)] + [hi]
    return [lo + i * step for i in range(math.floor(k) + 1)]


def thread_count() -> int:
    raw = os.environ.get("AGINORM_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"AGINORM_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"AGINORM_THREADS must be a positive integer, got {raw!r}")
    return value


def _format(args) -> str:
    if args.format:
        return args.format
    return "csv" if args.out and args.out.lower().endswith(".csv") else "json"


def _config(args, **extra) -> CampaignConfig:
    return CampaignConfig(
        ineq=args.ineq,
        dims=parse_dims(args.dims),
        trials=extra.pop("trials", getattr(args, "trials", 1)),
        seed=args.seed,
        p_range=extra.pop("p_range", parse_range(args.p_range) if getattr(args, "p_range", None) else None),
        min_eig=args.min_eig,
        norm=args.norm,
        workers=thread_count(),
        **extra,
    )


def _expected(args, violations: int) -> int:
    if args.expect_violations:
        return EXIT_OK if violations > 0 else EXIT_VIOLATION
    return EXIT_OK if violations == 0 else EXIT_VIOLATION


def cmd_verify(args) -> int:
    config = _config(args)
    report = run_campaign(config)
    s = report.summary
    if args.out:
        emit_report(report, _format(args), args.out)
    gap = "n/a" if s["min_relative_gap"] is None else f"{s['min_relative_gap']:.3e}"
    print(f"{config.ineq}: trials={s['trials']} violations={s['violations']} skips={s['skips']} "
          f"min_relative_gap={gap} valid={'yes' if s['valid'] else 'no'}")
    if not s["valid"]:
        print(f"campaign invalid: {s['skips']} of {s['trials']} trials skipped", file=sys.stderr)
        return EXIT_VIOLATION
    return _expected(args, s["violations"])


def cmd_sweep(args) -> int:
    grid = parse_grid(args.grid)
    rows, total = [], 0
    for value in grid:
        extra = {"p_range": (value, value)} if args.param == "p" else {f"fixed_{args.param}": value}
        s = run_campaign(_config(args, **extra)).summary
        total += s["violations"]
        rows.append([args.param, value, s["trials"], s["violations"], s["skips"],
                     s["min_relative_gap"], s["median_relative_gap"]])
    header = ["param", "value", "trials", "violations", "skips", "min_relative_gap",
              "median_relative_gap"]
    try:
        out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    except OSError as exc:
        raise IoFailure(f"cannot write {args.out}: {exc}") from exc
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([["" if v is None else v for v in row] for row in rows])
    finally:
        if args.out:
            out.close()
    return _expected(args, total)


def cmd_search(args) -> int:
    config = _config(args, restart_every=args.restart_every)
    result = search_gap(config, Mode(args.mode), args.budget)
    if args.out:
        emit_report(result, _format(args), args.out)
    if result.evaluation is None:
        print(f"{config.ineq}: no admissible instance in {result.iterations} iterations")
        return EXIT_VIOLATION
    ev = result.evaluation
    print(f"{config.ineq}: mode={result.mode.value} objective={result.objective:.6e} dim={result.dim} "
          f"lhs={ev.lhs:.6e} rhs={ev.rhs:.6e} satisfied={ev.satisfied} "
          f"iterations={result.iterations} skips={result.skips}")
    if result.mode is Mode.VIOLATE:
        return _expected(args, int(not ev.satisfied))
    return EXIT_OK


def cmd_compound(args) -> int:
    rng = make_rng(args.seed)
    a, b = sample_ginibre(rng, args.n), sample_ginibre(rng, args.n)
    ca = compound(a, args.k)
    with np.printoptions(precision=6, suppress=True, linewidth=120):
        print(f"compound of order {args.k} of a {args.n}x{args.n} Ginibre matrix (seed {args.seed}):")
        print(ca)
    for name, value in lemma_residuals(a, b, args.k).items():
        print(f"residual {name:16s} {value:.3e}")
    return EXIT_OK


def cmd_list(args) -> int:
    for case in registry_list():
        variants = ",".join(v.value for v in case.variants)
        print(f"{case.id:18s} {variants:34s} norms={case.norms:4s} {case.summary}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aginorm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def campaign_flags(p, trials=True):
        p.add_argument("--ineq", required=True, help="inequality id, optionally id:as-printed")
        p.add_argument("--dims", default="2..4", help="dimension range a..b (default 2..4)")
        if trials:
            p.add_argument("--trials", type=int, default=100, help="trials per dimension (default 100)")
        p.add_argument("--seed", type=int, default=0, help="campaign seed (default 0)")
        p.add_argument("--norm", default=None,
                       help="op, hs, kyfan:k, schatten:p or all (default: hs for HS checkers, else op)")
        p.add_argument("--min-eig", type=float, default=0.1,
                       help="eigenvalue floor of sampled PSD inputs (default 0.1)")
        p.add_argument("--expect-violations", action="store_true",
                       help="succeed only if violations are found (for as-printed variants)")

    def out_flags(p):
        p.add_argument("--out", default=None, help="report path (default: none)")
        p.add_argument("--format", choices=("json", "csv"), default=None,
                       help="report format (default: from the --out suffix, else json)")

    verify = sub.add_parser("verify", help="run a seeded verification campaign")
    campaign_flags(verify)
    verify.add_argument("--p-range", default=None, help="restrict p to lo:hi (default: checker domain)")
    out_flags(verify)
    verify.set_defaults(func=cmd_verify)

    sweep = sub.add_parser("sweep", help="one campaign per grid value of p, m or s")
    campaign_flags(sweep)
    sweep.add_argument("--param", choices=("p", "m", "s"), default="p", help="swept parameter (default p)")
    sweep.add_argument("--grid", required=True, help="lo:hi:step")
    sweep.add_argument("--out", default=None, help="CSV path (default: standard output)")
    sweep.set_defaults(func=cmd_sweep)

    search = sub.add_parser("search", help="hill-climb toward equality or a violation")
    campaign_flags(search, trials=False)
    search.add_argument("--mode", choices=[m.value for m in Mode], default="tighten",
                        help="tighten or violate (default tighten)")
    search.add_argument("--budget", type=int, default=2000, help="evaluations (default 2000)")
    search.add_argument("--restart-every", type=int, default=200,
                        help="iterations between restarts (default 200)")
    out_flags(search)
    search.set_defaults(func=cmd_search)

    comp = sub.add_parser("compound", help="print a compound matrix and its identity residuals")
    comp.add_argument("--n", type=int, default=4, help="matrix dimension (default 4)")
    comp.add_argument("--k", type=int, default=2, help="compound order (default 2)")
    comp.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    comp.set_defaults(func=cmd_compound)

    lst = sub.add_parser("list", help="print the inequality registry")
    lst.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        if getattr(args, "budget", 1) < 1:
            raise UsageError("--budget must be >= 1")
        if hasattr(args, "ineq"):
            parse_id(args.ineq)
        return args.func(args)
    except IoFailure as exc:
        print(f"aginorm: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, AginormError) as exc:
        print(f"aginorm: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
