"""Sweeps of the witness-existence probability over a grid of p_hat values."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, fields

import numpy as np

from .moments import first_moment, variance_ratio_bound, variance_ratio_exact
from .sampling import SamplingParams
from .simulate import binomial_estimate, run_trials

COLUMNS = {
    "p_hat": "row inclusion probability",
    "p": "-ln(1 - p_hat)",
    "expected_rows": "N * p_hat",
    "mean_rows": "mean |Q| over trials",
    "witness_fraction": "fraction of trials with a kernel witness",
    "stderr": "binomial standard error of witness_fraction",
    "ln_EX": "natural log of the expected witness count",
    "variance_ratio": "Var X / (E X)^2",
    "variance_mode": "exact (pair-count table) or bound (pair-count upper bound)",
    "chebyshev_bound": "min(1, variance_ratio), an upper bound on P(X = 0)",
}


@dataclass
class SweepRow:
    p_hat: float
    p: float
    expected_rows: float
    mean_rows: float
    witness_fraction: float
    stderr: float
    ln_EX: float
    variance_ratio: float
    variance_mode: str
    chebyshev_bound: float


def parse_grid(text: str) -> list[float]:
    """``lo:hi:points[,log|,lin]`` or an explicit comma-separated list."""
    text = text.strip()
    if ":" not in text:
        return [float(x) for x in text.split(",") if x.strip()]
    scale = "lin"
    if "," in text:
        text, scale = text.split(",", 1)
    lo, hi, pts = text.split(":")
    lo, hi, pts = float(lo), float(hi), int(pts)
    if pts < 1:
        raise ValueError("grid needs at least one point")
    if scale == "log":
        if lo <= 0:
            raise ValueError("log grid needs lo > 0")
        return [float(x) for x in np.geomspace(lo, hi, pts)]
    if scale == "lin":
        return [float(x) for x in np.linspace(lo, hi, pts)]
    raise ValueError(f"unknown grid scale {scale!r}")


def run_sweep(n: int, k: int, grid, trials: int, seed: int = 0, c: float = 0.1,
              workers: int = 1, variance_mode: str = "exact") -> list[SweepRow]:
    """One row per grid point; point i draws from Philox stream i."""
    rows = []
    for i, p_hat in enumerate(grid):
        params = SamplingParams(n, k, p_hat, c=c, seed=seed, stream=i)
        found, card = run_trials(params, trials, True, workers)
        frac, se = binomial_estimate(int(found.sum()), trials)
        if variance_mode == "exact":
            vr = variance_ratio_exact(params)
        else:
            vr = variance_ratio_bound(params)
        rows.append(SweepRow(
            p_hat=p_hat,
            p=params.p,
            expected_rows=params.N * p_hat,
            mean_rows=float(card.mean()),
            witness_fraction=frac,
            stderr=se,
            ln_EX=first_moment(params),
            variance_ratio=vr,
            variance_mode=variance_mode,
            chebyshev_bound=min(1.0, vr),
        ))
    return rows


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def sweep_to_csv(rows: list[SweepRow], meta: dict) -> str:
    buf = io.StringIO()
    buf.write("# subhadamard sweep\n")
    buf.write("# " + " ".join(f"{key}={val}" for key, val in meta.items()) + "\n")
    for name, desc in COLUMNS.items():
        buf.write(f"# {name}: {desc}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([_fmt(v) for v in asdict(r).values()])
    return buf.getvalue()


def sweep_from_csv(text: str) -> tuple[dict, list[SweepRow]]:
    lines = text.splitlines()
    meta = {}
    if len(lines) > 1 and lines[1].startswith("# "):
        for tok in lines[1][2:].split():
            key, _, val = tok.partition("=")
            meta[key] = val
    body = [ln for ln in lines if not ln.startswith("#")]
    reader = csv.DictReader(body)
    types = {f.name: f.type for f in fields(SweepRow)}
    rows = []
    for rec in reader:
        rows.append(SweepRow(**{key: (val if types[key] == "str" else float(val)) for key, val in rec.items()}))
    return meta, rows


def pick_threshold_point(rows: list[SweepRow], max_ratio: float = 0.1) -> int | None:
    """Index of the largest p_hat whose variance ratio is at most ``max_ratio``."""
    ok = [i for i, r in enumerate(rows) if r.variance_ratio <= max_ratio]
    return max(ok, key=lambda i: rows[i].p_hat) if ok else None


def monotone_violations(rows: list[SweepRow], sigmas: float = 3.0) -> list[tuple[int, int]]:
    """Pairs (i, j), p_hat_i < p_hat_j, where the fraction rises by more than the noise allows."""
    order = sorted(range(len(rows)), key=lambda i: rows[i].p_hat)
    bad = []
    for a, i in enumerate(order):
        for j in order[a + 1:]:
            rise = rows[j].witness_fraction - rows[i].witness_fraction
            noise = sigmas * math.hypot(rows[i].stderr, rows[j].stderr)
            if rise > noise:
                bad.append((i, j))
    return bad
