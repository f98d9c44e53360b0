"""Verification suites: each returns a JSON-ready dict of instances and a verdict."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .counting import (
    gaussian_binomial,
    grassmannian_bounds,
    intersection_dim_range,
    pair_count_table,
    t_bound_claim_check,
)
from .errors import GuardExceeded
from .experiment.moments import (
    covariance_ratio,
    covariance_ratio_direct,
    first_moment,
    paper_bound_terms,
    variance_ratio_bound,
    variance_ratio_exact,
    variance_ratio_pairwise,
)
from .experiment.sampling import SamplingParams
from .gf2 import canonicalize, enumerate_grassmannian
from .transform import ortho_deviations

ORTHO_TOL = 1e-10
COV_RTOL = 1e-12
PAIRWISE_RTOL = 1e-9
COV_P_HATS = (0.01, 0.05, 0.1, 0.3, 0.5)


def _suite(name: str, instances: list[dict]) -> dict:
    return {"suite": name, "pass": all(i["pass"] for i in instances), "instances": instances}


def random_subspaces(n: int, count: int, seed: int = 0) -> list:
    """Reproducible random subspaces of Z_2^n with dimension uniform in [0, n]."""
    out = []
    for t in range(count):
        gen = np.random.Generator(np.random.Philox(key=seed, counter=[0, 1, n, t]))
        d = int(gen.integers(0, n + 1))
        V = canonicalize([], n=n)
        while V.dim < d:
            V = canonicalize(V.basis + (int(gen.integers(1, 1 << n)),), n=n)
        out.append(V)
    return out


def lemma_ortho(n_max: int = 8, random_n=(16,), random_count: int = 100, seed: int = 0) -> dict:
    instances = []
    for n in range(1, n_max + 1):
        worst, count = 0.0, 0
        for d in range(n + 1):
            batch = []
            for V in enumerate_grassmannian(n, d):
                batch.append(V)
                if len(batch) == 8192:
                    worst = max(worst, float(ortho_deviations(batch).max()))
                    count += len(batch)
                    batch = []
            if batch:
                worst = max(worst, float(ortho_deviations(batch).max()))
                count += len(batch)
        instances.append({"params": {"n": n, "subspaces": count, "mode": "exhaustive"},
                          "pass": worst < ORTHO_TOL, "max_deviation": worst, "margin": ORTHO_TOL - worst})
    for n in random_n:
        subs = random_subspaces(n, random_count, seed)
        worst = max(float(ortho_deviations([V]).max()) for V in subs)
        instances.append({"params": {"n": n, "subspaces": random_count, "mode": "random", "seed": seed},
                          "pass": worst < ORTHO_TOL, "max_deviation": worst, "margin": ORTHO_TOL - worst})
    return _suite("lemma-ortho", instances)


def grassmannian(n_max: int = 6, bounds_n_max: int = 64) -> dict:
    instances = []
    for n in range(1, n_max + 1):
        for d in range(n + 1):
            seen = {V.basis for V in enumerate_grassmannian(n, d)}
            expected = gaussian_binomial(n, d)
            listed = sum(1 for _ in enumerate_grassmannian(n, d))
            ok = listed == expected == len(seen)
            instances.append({"params": {"n": n, "d": d}, "pass": ok, "enumerated": listed,
                              "distinct": len(seen), "formula": expected})
    bad = []
    for n in range(2, bounds_n_max + 1):
        for d in range(1, n):
            lo, hi = grassmannian_bounds(n, d)
            if not lo < gaussian_binomial(n, d) < hi:
                bad.append([n, d])
    instances.append({"params": {"bounds_n_max": bounds_n_max}, "pass": not bad, "violations": bad})
    return _suite("grassmannian", instances)


def intersection_range(n_max: int = 6) -> dict:
    instances = []
    for n in range(1, n_max + 1):
        for k in range(n + 1):
            table = pair_count_table(n, k, method="exhaustive")
            lo, hi = intersection_dim_range(n, k)
            try:
                table.check()
                ok = True
            except AssertionError:
                ok = False
            instances.append({"params": {"n": n, "k": k}, "pass": ok, "range": [lo, hi],
                              "counts": {str(d): c for d, c in sorted(table.counts.items())}})
    return _suite("intersection-range", instances)


def covariance(n_max: int = 5, p_hats=COV_P_HATS) -> dict:
    instances = []
    for n in range(1, n_max + 1):
        for k in range(n + 1):
            subs = list(enumerate_grassmannian(n, k))
            worst = 0.0
            for p_hat in p_hats:
                params = SamplingParams(n, k, p_hat)
                for U in subs:
                    for V in subs:
                        a = covariance_ratio(U, V, params)
                        b = covariance_ratio_direct(U, V, params)
                        worst = max(worst, abs(a - b) / abs(a))
            instances.append({"params": {"n": n, "k": k, "p_hats": list(p_hats)},
                              "pass": worst <= COV_RTOL, "max_rel_diff": worst, "margin": COV_RTOL - worst})
    return _suite("covariance", instances)


def t_bound(n: int = 256, k: int = 128, c: float = 0.1) -> dict:
    rep = t_bound_claim_check(n, k)
    inst = {"params": {"n": n, "k": k}, "pass": rep.passes, "applicable": rep.applicable,
            "reason": rep.reason,
            "rows": [{"d": r.d, "log2_ratio": r.log2_ratio, "threshold": r.threshold,
                      "margin": r.margin, "pass": r.passes} for r in rep.rows]}
    instances = [inst]
    if rep.applicable:
        # largest p allowed by p 2^{n-k} <= 2c k(n-k)
        p = 2 * c * k * (n - k) / 2.0 ** (n - k)
        params = SamplingParams(n, k, -math.expm1(-p), c=c)
        bt = paper_bound_terms(params)
        instances.append({"params": {"n": n, "k": k, "c": c, "p_hat": params.p_hat},
                          "pass": bt.verdict, "term_I": bt.term_I, "term_II": bt.term_II,
                          "total": bt.total, "failed": bt.failed()})
    return _suite("t-bound", instances)


def moments(n: int = 6, k: int = 3, p_hats=(0.0, 0.05, 0.2, 0.4), c: float = 0.1) -> dict:
    instances = []
    for p_hat in p_hats:
        params = SamplingParams(n, k, p_hat, c=c)
        exact = variance_ratio_exact(params)
        bound = variance_ratio_bound(params)
        ln_ex = first_moment(params)
        inst = {"params": {"n": n, "k": k, "p_hat": p_hat}, "ln_EX": ln_ex,
                "variance_ratio_exact": exact, "variance_ratio_bound": bound,
                "exact_le_bound": exact <= bound * (1 + 1e-12)}
        ok = inst["exact_le_bound"]
        try:
            pw = variance_ratio_pairwise(params)
            rel = abs(pw - exact) / max(abs(exact), 1e-300)
            inst["variance_ratio_pairwise"] = pw
            inst["pairwise_match"] = rel <= PAIRWISE_RTOL
            ok = ok and inst["pairwise_match"]
        except GuardExceeded:
            inst["variance_ratio_pairwise"] = None
        inst["pass"] = ok
        instances.append(inst)
    return _suite("moments", instances)


SUITES: dict[str, Callable[..., dict]] = {
    "lemma-ortho": lemma_ortho,
    "grassmannian": grassmannian,
    "intersection-range": intersection_range,
    "covariance": covariance,
    "t-bound": t_bound,
    "moments": moments,
}

