"""Command-line front end.

Exit status: 0 when every check passes, 1 when a suite fails, 2 on a
configuration error. Every subcommand is a pure function of its flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

import numpy as np

from . import suites
from .counting import gaussian_binomial
from .errors import GuardExceeded
from .experiment.moments import moment_report
from .experiment.rip import non_injectivity_pair, verify_kernel
from .experiment.sampling import MAX_SAMPLE_N, SamplingParams, sample_mask
from .experiment.search import MAX_COMPLEMENT_DIM, count_witnesses, find_kernel_witness
from .experiment.sweep import parse_grid, run_sweep, sweep_to_csv
from .gf2 import DEFAULT_ENUM_BUDGET
from .transform import fwht

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


def hex_row(word: int, n: int) -> str:
    return f"0x{word:0{(n + 3) // 4}x}"


def _require(cond: bool, flag: str, message: str) -> None:
    if not cond:
        raise ConfigError(flag, message)


def _check_sampling(args, n_limit: int = MAX_SAMPLE_N) -> None:
    _require(args.n is not None, "--n", "required")
    _require(args.k is not None, "--k", "required")
    _require(1 <= args.n <= n_limit, "--n", f"must lie in [1, {n_limit}]")
    _require(0 <= args.k <= args.n, "--k", "must lie in [0, n]")
    _require(0 <= args.seed < 2**64, "--seed", "must be a 64-bit unsigned integer")
    _require(args.c > 0, "--c", "must be positive")


def _check_p_hat(p_hat: float, flag: str = "--p-hat") -> None:
    _require(0.0 <= p_hat < 1.0, flag, f"{p_hat} not in [0, 1)")


def _check_search_guard(n: int, k: int) -> None:
    _require(n - k <= MAX_COMPLEMENT_DIM, "--k", f"n - k must be <= {MAX_COMPLEMENT_DIM}")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def cmd_verify(args) -> int:
    names = list(suites.SUITES) if args.suite == "all" else args.suite.split(",")
    for name in names:
        _require(name in suites.SUITES, "--suite", f"unknown suite {name!r}; choose from {sorted(suites.SUITES)}")
    if args.n_max is not None:
        _require(1 <= args.n_max <= 10, "--n-max", "must lie in [1, 10]")
    kwargs = {
        "lemma-ortho": {"n_max": args.n_max or 8, "seed": args.seed},
        "grassmannian": {"n_max": args.n_max or 6},
        "intersection-range": {"n_max": min(args.n_max or 6, 6)},
        "covariance": {"n_max": min(args.n_max or 5, 5)},
        "t-bound": {"n": args.n or 256, "k": args.k if args.k is not None else 128, "c": args.c},
        "moments": {"n": args.n or 6, "k": args.k if args.k is not None else 3, "c": args.c},
    }
    if "t-bound" in names:
        tn, tk = kwargs["t-bound"]["n"], kwargs["t-bound"]["k"]
        _require(2 <= tn <= 1024, "--n", "t-bound needs n in [2, 1024]")
        _require(0 < tk < tn, "--k", "t-bound needs 0 < k < n")
    if "moments" in names:
        mn, mk = kwargs["moments"]["n"], kwargs["moments"]["k"]
        _require(1 <= mn <= 1024, "--n", "moments needs n in [1, 1024]")
        _require(0 <= mk <= mn, "--k", "moments needs 0 <= k <= n")
    results = []
    for name in names:
        try:
            results.append(suites.SUITES[name](**kwargs[name]))
        except GuardExceeded as exc:
            results.append({"suite": name, "pass": False, "guard": str(exc), "instances": []})
    report = {"pass": all(r["pass"] for r in results), "suites": results}
    _emit(_dump(report), args.out)
    return EXIT_OK if report["pass"] else EXIT_FAIL


def cmd_sweep(args) -> int:
    _check_sampling(args)
    _check_search_guard(args.n, args.k)
    _require(args.p_hat_grid is not None or args.p_hat is not None, "--p-hat-grid", "a grid or --p-hat is required")
    try:
        grid = parse_grid(args.p_hat_grid) if args.p_hat_grid else [args.p_hat]
    except ValueError as exc:
        raise ConfigError("--p-hat-grid", str(exc)) from exc
    _require(len(grid) > 0, "--p-hat-grid", "empty grid")
    for v in grid:
        _check_p_hat(v, "--p-hat-grid")
    _require(args.trials >= 1, "--trials", "must be >= 1")
    _require(args.threads >= 1, "--threads", "must be >= 1")
    rows = run_sweep(args.n, args.k, grid, args.trials, seed=args.seed, c=args.c,
                     workers=args.threads, variance_mode=args.variance_mode)
    meta = {"n": args.n, "k": args.k, "trials": args.trials, "seed": args.seed, "c": args.c,
            "variance_mode": args.variance_mode}
    if args.format == "json":
        text = _dump({"meta": meta, "rows": [asdict(r) for r in rows]})
    else:
        text = sweep_to_csv(rows, meta)
    _emit(text, args.out)
    return EXIT_OK


def _witness_block(V, n: int) -> list[str] | None:
    return None if V is None else [hex_row(r, n) for r in V.basis]


def cmd_witness(args) -> int:
    _check_sampling(args)
    _require(args.p_hat is not None, "--p-hat", "required")
    _check_p_hat(args.p_hat)
    _check_search_guard(args.n, args.k)
    _require(args.trial >= 0, "--trial", "must be >= 0")
    if args.exact_count:
        size = gaussian_binomial(args.n, args.n - args.k)
        _require(size <= DEFAULT_ENUM_BUDGET, "--exact-count", f"|Gr(n, n-k)| = {size} exceeds the enumeration budget")
    if args.split:
        _require(args.k + 1 <= args.n, "--split", "needs k + 1 <= n")
        _check_search_guard(args.n, args.k + 1)
    params = SamplingParams(args.n, args.k, args.p_hat, c=args.c, seed=args.seed)
    Q = sample_mask(params, args.trial)
    rep = count_witnesses(Q, args.k) if args.exact_count else find_kernel_witness(Q, args.k)
    out = {
        "n": args.n, "k": args.k, "p_hat": args.p_hat, "seed": args.seed, "trial": args.trial,
        "q_cardinality": Q.cardinality,
        "witness": _witness_block(rep.witness, args.n),
        "reason": None,
        "exact_count": rep.exact_count,
        "residual": None,
        "nodes_explored": rep.nodes_explored,
    }
    if rep.witness is None:
        out["reason"] = "zero row sampled" if 0 in Q else "no subspace avoids Q"
    else:
        out["residual"] = verify_kernel(Q, rep.witness)
    if args.split:
        big = find_kernel_witness(Q, args.k + 1)
        split = {"k": args.k + 1, "witness": _witness_block(big.witness, args.n),
                 "y_support": None, "z_support": None, "residual": None}
        if big.witness is not None:
            y, z = non_injectivity_pair(big.witness)
            split["y_support"] = [int(i) for i in np.flatnonzero(y)]
            split["z_support"] = [int(i) for i in np.flatnonzero(z)]
            rows = Q.rows
            diff = fwht(y)[rows] - fwht(z)[rows]
            split["residual"] = float(np.max(np.abs(diff))) if rows.size else 0.0
        out["split"] = split
    _emit(_dump(out), args.out)
    return EXIT_OK


def cmd_moments(args) -> int:
    _check_sampling(args, n_limit=1024)
    _require(args.p_hat is not None, "--p-hat", "required")
    _check_p_hat(args.p_hat)
    params = SamplingParams(args.n, args.k, args.p_hat, c=args.c, seed=args.seed)
    rep = moment_report(params, args.variance_mode)
    _emit(_dump(rep.to_dict()), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subhadamard", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=("json",)):
        p.add_argument("--n", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--c", type=float, default=0.1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out")
        p.add_argument("--format", choices=fmt, default=fmt[0])

    p = sub.add_parser("verify", help="run lemma and claim suites")
    common(p)
    p.add_argument("--suite", default="all", help="comma-separated suite names or 'all'")
    p.add_argument("--n-max", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="witness probability over a p_hat grid")
    common(p, fmt=("csv", "json"))
    p.add_argument("--p-hat", type=float)
    p.add_argument("--p-hat-grid", help="lo:hi:points[,log|,lin] or comma-separated values")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--variance-mode", choices=("exact", "bound"), default="exact")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("witness", help="sample Q once and search for a kernel witness")
    common(p)
    p.add_argument("--p-hat", type=float)
    p.add_argument("--trial", type=int, default=0)
    p.add_argument("--split", action="store_true", help="also build the K-sparse y, z pair from a (k+1)-dim witness")
    p.add_argument("--exact-count", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("moments", help="closed-form moments and proof-bound terms")
    common(p)
    p.add_argument("--p-hat", type=float)
    p.add_argument("--variance-mode", choices=("exact", "bound"), default="exact")
    p.set_defaults(func=cmd_moments)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
