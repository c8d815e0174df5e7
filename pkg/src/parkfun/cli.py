"""Command-line front end.

Subcommands::

    count fixed|cycles|sorted-prefix|total   closed-form counts
    expect                                   exact expected m-cycle count
    enumerate                                every parking function of length n
    sample                                   seeded uniform draws
    stats                                    predicates and cycle census of given sequences
    estimate                                 Monte Carlo estimate of an expectation
    verify                                   formulas against brute force

Exit codes: 0 success, 1 verification mismatch, 2 usage or domain error,
3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Iterable, List, Optional, Sequence

import numpy as np

from parkfun import counting, montecarlo, oracle, pollak
from parkfun.cycles import cycle_census, fixed_points
from parkfun.errors import BudgetExceeded, DomainError
from parkfun.prefseq import (
    RKParams,
    as_prefseq,
    is_parking_function,
    is_prime_parking_function,
    is_rk_parking_function,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


class Writer:
    """Emits records (dicts) or sequences in the chosen output format."""

    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout
        self._csv = csv.writer(self.out, lineterminator="\n")
        self._header_done = False

    def record(self, rec: dict) -> None:
        if self.fmt == "jsonl":
            self.out.write(_dumps(rec) + "\n")
        elif self.fmt == "csv":
            if not self._header_done:
                self._csv.writerow(rec.keys())
                self._header_done = True
            self._csv.writerow(_dumps(v) if isinstance(v, (dict, list)) else v for v in rec.values())
        else:
            self.out.write(" ".join(f"{k}={_dumps(v) if isinstance(v, (dict, list)) else v}"
                                    for k, v in rec.items()) + "\n")

    def seq(self, s: Sequence[int]) -> None:
        if self.fmt == "jsonl":
            self.out.write(_dumps(list(s)) + "\n")
        elif self.fmt == "csv":
            if not self._header_done:
                self._csv.writerow(f"p{i}" for i in range(1, len(s) + 1))
                self._header_done = True
            self._csv.writerow(s)
        else:
            self.out.write(" ".join(map(str, s)) + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["jsonl", "csv", "plain"], default="jsonl")
    common.add_argument("--budget", type=int, default=None, help="candidate limit for enumeration/oracle work")
    common.add_argument("--threads", type=int, default=1, help="worker cap; never changes output")

    variant = argparse.ArgumentParser(add_help=False)
    variant.add_argument("--variant", choices=oracle.VARIANTS, default="classical")
    variant.add_argument("--r", type=int, help="(r,k) step; required iff --variant rk")
    variant.add_argument("--rk-k", type=int, help="(r,k) offset; required iff --variant rk")

    parser = argparse.ArgumentParser(prog="parkfun", description="Exact parking-function combinatorics.")
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", parents=[common, variant], help="closed-form counts")
    count.add_argument("what", choices=["fixed", "cycles", "sorted-prefix", "total"])
    count.add_argument("--n", type=int, required=True)
    count.add_argument("--k", type=int, help="number of fixed points / m-cycles")
    count.add_argument("--m", type=int, help="cycle length")
    count.add_argument("--s", type=int, help="strictly increasing prefix length")

    expect = sub.add_parser("expect", parents=[common, variant], help="exact expected m-cycles")
    expect.add_argument("--n", type=int, required=True)
    expect.add_argument("--m", type=int, required=True)

    enum = sub.add_parser("enumerate", parents=[common, variant], help="list every parking function")
    enum.add_argument("--n", type=int, required=True)

    sample = sub.add_parser("sample", parents=[common, variant], help="uniform random parking functions")
    sample.add_argument("--n", type=int, required=True)
    sample.add_argument("--samples", type=int, default=1)
    sample.add_argument("--seed", type=int, default=None)

    stats = sub.add_parser("stats", parents=[common, variant],
                           help="predicates and cycle census of sequences (args or stdin)")
    stats.add_argument("seqs", nargs="*", metavar="SEQ",
                       help="comma-separated or JSON array; read from stdin when omitted")

    est = sub.add_parser("estimate", parents=[common, variant], help="Monte Carlo expected m-cycles")
    est.add_argument("--n", type=int, required=True)
    est.add_argument("--m", type=int, required=True)
    est.add_argument("--samples", type=int, default=100_000)
    est.add_argument("--seed", type=int, default=None)

    ver = sub.add_parser("verify", parents=[common], help="check formulas against brute force")
    ver.add_argument("--max-n", type=int, default=6)
    ver.add_argument("--theorem", action="append", choices=oracle.THEOREMS,
                     help="restrict to this theorem id (repeatable)")
    return parser


def _rk_params(args) -> Optional[RKParams]:
    given = args.r is not None or args.rk_k is not None
    if args.variant == "rk":
        if args.r is None or args.rk_k is None:
            raise UsageError("--variant rk requires --r and --rk-k")
        return RKParams(args.r, args.rk_k)
    if given:
        raise UsageError("--r/--rk-k only apply to --variant rk")
    return None


def _need(args, *names: str) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required here")


def _seed(args) -> int:
    if args.seed is not None:
        if not 0 <= args.seed < 2**64:
            raise UsageError("--seed must be a 64-bit unsigned integer")
        return args.seed
    seed = int(np.random.SeedSequence().entropy) % 2**64
    print(f"seed: {seed}", file=sys.stderr)
    return seed


def cmd_count(args, w: Writer) -> int:
    p = _rk_params(args)
    n, v = args.n, args.variant
    rk_fields = {"r": p.r, "rk_k": p.k} if p else {}
    if args.what == "fixed":
        _need(args, "k")
        if v == "rk":
            raise UsageError("no fixed-point formula for (r,k)-parking functions")
        theorem, fn = ("T2.1", counting.count_fixed_classical) if v == "classical" else ("T3.1", counting.count_fixed_prime)
        w.record({"theorem": theorem, "n": n, "k": args.k, "count": str(fn(n, args.k))})
    elif args.what == "cycles":
        _need(args, "m", "k")
        if v == "rk":
            raise UsageError("no cycle formula for (r,k)-parking functions")
        theorem, fn = ("T2.2", counting.count_cycles_classical) if v == "classical" else ("T3.2", counting.count_cycles_prime)
        w.record({"theorem": theorem, "n": n, "m": args.m, "k": args.k, "count": str(fn(n, args.m, args.k))})
    elif args.what == "sorted-prefix":
        _need(args, "s")
        if v == "classical":
            theorem, value = "T2.3-prefix", counting.count_sorted_prefix_classical(n, args.s)
        elif v == "prime":
            theorem, value = "T3.3-prefix", counting.count_sorted_prefix_prime(n, args.s)
        else:
            theorem, value = "P4.1", counting.count_sorted_prefix_rk(n, p, args.s)
        w.record({"theorem": theorem, "n": n, **rk_fields, "s": args.s, "count": str(value)})
    else:
        if v == "classical":
            value = counting.count_parking_functions(n)
        elif v == "prime":
            value = counting.count_prime_parking_functions(n)
        else:
            value = counting.count_rk_parking_functions(n, p)
        w.record({"theorem": f"coset-{v}", "n": n, **rk_fields, "count": str(value)})
    return EXIT_OK


def cmd_expect(args, w: Writer) -> int:
    if args.variant == "rk":
        raise UsageError("expect supports classical and prime only")
    _rk_params(args)
    fn = counting.expected_cycles_classical if args.variant == "classical" else counting.expected_cycles_prime
    value = fn(args.n, args.m)
    w.record({"exact": counting.format_rational(value), "decimal": counting.decimal_approx(value)})
    return EXIT_OK


def cmd_enumerate(args, w: Writer) -> int:
    p = _rk_params(args)
    kw = {"budget": args.budget, "workers": args.threads}
    if args.variant == "classical":
        stream = pollak.enumerate_classical(args.n, **kw)
    elif args.variant == "prime":
        stream = pollak.enumerate_prime(args.n, **kw)
    else:
        stream = pollak.enumerate_rk(args.n, p, **kw)
    for s in stream:
        w.seq(s)
    return EXIT_OK


def cmd_sample(args, w: Writer) -> int:
    p = _rk_params(args)
    if args.samples < 0:
        raise UsageError("--samples must be >= 0")
    rng = montecarlo.stream_rng(_seed(args), 0)
    for _ in range(args.samples):
        if args.variant == "classical":
            s = pollak.sample_classical(args.n, rng)
        elif args.variant == "prime":
            s = pollak.sample_prime(args.n, rng)
        else:
            s = pollak.sample_rk(args.n, p, rng)
        w.seq(s)
    return EXIT_OK


def _parse_seq(text: str):
    text = text.strip()
    if text.startswith("["):
        return as_prefseq(json.loads(text))
    return as_prefseq(x for x in text.replace(",", " ").split())


def cmd_stats(args, w: Writer) -> int:
    p = _rk_params(args)
    lines: Iterable[str] = args.seqs or (line for line in sys.stdin if line.strip())
    for text in lines:
        try:
            pi = _parse_seq(text)
        except ValueError as exc:
            raise UsageError(f"cannot parse sequence {text.strip()!r}: {exc}") from None
        n = len(pi)
        rec = {
            "seq": list(pi),
            "parking": is_parking_function(pi),
            "prime": is_prime_parking_function(pi),
        }
        if p:
            rec["rk"] = is_rk_parking_function(pi, p)
        rec["fixed_points"] = sorted(fixed_points(pi))
        rec["census"] = cycle_census(pi).to_dict() if all(v <= n for v in pi) else None
        w.record(rec)
    return EXIT_OK


def cmd_estimate(args, w: Writer) -> int:
    if args.variant == "rk":
        raise UsageError("estimate supports classical and prime only")
    _rk_params(args)
    est = montecarlo.estimate_expected_cycles(
        args.n, args.m, args.variant, args.samples, _seed(args), workers=args.threads
    )
    w.record(est.to_dict())
    return EXIT_OK


def _verify_grids(max_n: int) -> List[tuple]:
    rk = {"r": range(1, 4), "k": range(1, 4)}
    return [
        ("T2.1", {"n": range(0, max_n + 1)}),
        ("T2.2", {"n": range(0, max_n + 1)}),
        ("T2.3", {"n": range(1, max_n + 1)}),
        ("T3.1", {"n": range(1, max_n + 1)}),
        ("T3.2", {"n": range(1, max_n + 1)}),
        ("T3.3", {"n": range(2, max_n + 1)}),
        ("P4.1", {"n": range(0, min(max_n, 4) + 1), **rk}),
        ("coset-classical", {"n": range(1, min(max_n, 5) + 1)}),
        ("coset-prime", {"n": range(2, min(max_n, 6) + 1)}),
        ("coset-rk", {"n": range(1, min(max_n, 4) + 1), **rk}),
    ]


def cmd_verify(args, w: Writer) -> int:
    budget = oracle.ORACLE_BUDGET if args.budget is None else args.budget
    selected = set(args.theorem or oracle.THEOREMS)
    reports = []
    for tid, grid in _verify_grids(args.max_n):
        if tid not in selected:
            continue
        for rep in oracle.verify(tid, grid, budget):
            reports.append(rep)
            w.record(rep.to_dict())
    failed = [r for r in reports if not r.passed and r.known_issue is None]
    known = sum(1 for r in reports if r.known_issue is not None)
    print(f"{len(reports)} reports, {len(failed)} failed, {known} flagged as known issues",
          file=sys.stderr)
    return EXIT_MISMATCH if failed else EXIT_OK


COMMANDS = {
    "count": cmd_count,
    "expect": cmd_expect,
    "enumerate": cmd_enumerate,
    "sample": cmd_sample,
    "stats": cmd_stats,
    "estimate": cmd_estimate,
    "verify": cmd_verify,
}


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    w = Writer(args.format, out)
    try:
        return COMMANDS[args.command](args, w)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except BrokenPipeError:
        _silence_stdout()
        return EXIT_OK


def _silence_stdout() -> None:
    # downstream closed the pipe (e.g. `| head`); stop interpreter-exit flush errors
    devnull = os.open(os.devnull, os.O_WRONLY)
    os.dup2(devnull, sys.stdout.fileno())


def main() -> None:
    code = run()
    try:
        sys.stdout.flush()
    except BrokenPipeError:
        _silence_stdout()
    sys.exit(code)


if __name__ == "__main__":
    main()
