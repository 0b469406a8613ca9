"""Monte Carlo checks of how Fourier data survives restriction to a random
subspace, and empirical power curves for the testers.

Random subspaces are spans of k uniform vectors (the testers' sampler), so
|H| varies from trial to trial; bounds are evaluated at the smallest |H| seen,
which is the conservative choice for bounds decreasing in |H|.

The coefficient bound tested is 14/(h eta^2), the looser of the two constants
in circulation (a Chebyshev argument alone gives 10/(h eta^2)).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import partial

import numpy as np

from . import core
from .core import BooleanFunction, DimensionError, generate, mix, parity, restrict, wht
from .harness import run_trials
from .ocf import exact_distance, fourth_moment, fourth_moment_spectral
from .testers import edge_sampling_test, edge_schedule, subspace_restriction_test, subspace_schedule

COEFF_MAX_DIM = 20
MOMENT_MAX_DIM = 16


def proof_parameters(eps: float) -> dict:
    """Analysis-only constants for a given eps; never used by the testers."""
    return {
        "gamma": eps ** 2 / 100,
        "eta1": (eps / 10) ** 8,
        "eta2": (eps / 10) ** 4,
        "h": (10 / eps) ** 20,
    }


def random_subspace(n: int, k: int, seed: int) -> core.Subspace:
    if not 1 <= k <= n + 8:
        raise ValueError(f"k must lie in 1..n+8 = {n + 8}, got {k}")
    return core.random_subspace(n, k, seed)


def statistical_slack(bound: float, trials: int) -> float:
    p = min(max(bound, 0.0), 1.0)
    return 3 * math.sqrt(p * (1 - p) / trials) + 1 / trials


@dataclass
class ConcentrationReport:
    description: str
    k: int
    h_mean: float
    h_min: int
    eta: float
    trials: int
    deviation_threshold: str
    exceedances: int
    empirical_frequency: float
    paper_bound: float
    slack: float
    satisfied: bool
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _exact(x: float) -> Fraction:
    # decimal literal of the float, so 0.1 means 1/10
    return Fraction(repr(x))


def _coeff_trial(f: BooleanFunction, alpha: int, k: int, w_alpha: int, eta: Fraction, seed: int):
    H = core.random_subspace(f.n, k, seed)
    elems = H.elements()
    chi = 1 - 2 * parity(elems & alpha).astype(np.int64)
    s_h = int(f.table[elems].astype(np.int64) @ chi)
    h = H.size
    dev = abs(Fraction(s_h, h) - Fraction(w_alpha, f.size))
    exceeded = dev >= Fraction(2, h) + eta
    return h, exceeded, H.coordinates(alpha) == 0


def coeff_deviation_experiment(f: BooleanFunction, alpha: int, k: int, eta: float, trials: int,
                               seed: int, jobs: int = 1, description: str = "") -> ConcentrationReport:
    """Frequency of |f_H(alpha) - f(alpha)| >= 2/|H| + eta against 14/(|H| eta^2)."""
    if f.n > COEFF_MAX_DIM:
        raise DimensionError(f"coefficient experiment limited to n <= {COEFF_MAX_DIM}")
    w_alpha = int(wht(f).w[alpha])
    fn = partial(_coeff_trial, f, alpha, k, w_alpha, _exact(eta))
    results = run_trials(fn, seed, trials, jobs)
    hs = np.array([r[0] for r in results])
    hits = sum(r[1] for r in results)
    in_dual = sum(r[2] for r in results)
    h_min = int(hs.min())
    bound = 14 / (h_min * eta ** 2)
    freq = hits / trials
    slack = statistical_slack(bound, trials)
    return ConcentrationReport(
        description or f"coeffdev alpha={alpha}", k, float(hs.mean()), h_min, eta, trials,
        "2/|H| + eta", hits, freq, bound, slack, freq <= bound + slack,
        {"alpha": alpha, "f_hat_alpha": w_alpha / f.size, "alpha_in_dual_trials": in_dual},
    )


def _moment_trial(f: BooleanFunction, k: int, A: Fraction, eta: Fraction, seed: int):
    H = core.random_subspace(f.n, k, seed)
    g = restrict(f, H)
    A_H = fourth_moment_spectral(wht(g))
    h = H.size
    return h, abs(A_H - A) >= Fraction(16, h) + eta


def moment_deviation_experiment(f: BooleanFunction, k: int, eta: float, trials: int, seed: int,
                                jobs: int = 1, A: Fraction | None = None,
                                description: str = "") -> ConcentrationReport:
    """Frequency of |A_H - A| >= 16/|H| + eta against 500/(|H| eta^2).

    A_H is the fourth moment of the restriction, from its own exact spectrum.
    """
    if f.n > MOMENT_MAX_DIM:
        raise DimensionError(f"moment experiment limited to n <= {MOMENT_MAX_DIM}")
    if A is None:
        A = fourth_moment(f)
    fn = partial(_moment_trial, f, k, A, _exact(eta))
    results = run_trials(fn, seed, trials, jobs)
    hs = np.array([r[0] for r in results])
    hits = sum(r[1] for r in results)
    h_min = int(hs.min())
    bound = 500 / (h_min * eta ** 2)
    freq = hits / trials
    slack = statistical_slack(bound, trials)
    return ConcentrationReport(
        description or "momentdev", k, float(hs.mean()), h_min, eta, trials,
        "16/|H| + eta", hits, freq, bound, slack, freq <= bound + slack,
        {"A": float(A)},
    )


# ---------------------------------------------------------------------------
# Power curves

POWER_FIELDS = ["eps", "k", "mean_dim", "exact_distance", "reject_rate", "mean_queries", "instance"]


def _tester_trial(f, eps, test_kind, k, seed):
    if test_kind == "edge":
        r = edge_sampling_test(f, eps, seed, k=k)
        dim = float("nan")
    else:
        r = subspace_restriction_test(f, eps, seed, k=k)
        dim = r.schedule["dim"]
        if r.rejected:
            assert r.witness is not None
    if r.rejected:
        r.witness.validate(f)
    return r.rejected, r.queries, dim


def power_curve(family: str, eps_list, trials: int, test_kind: str, seed: int,
                k: int | None = None, jobs: int = 1) -> list[dict]:
    """Reject rates of one tester over a list of eps values.

    ``family`` is a generator spec such as ``allOnes:n=8``; the instance for
    row i is generated with seed mix(seed, i) and its exact distance recorded.
    """
    if test_kind not in ("edge", "subspace"):
        raise ValueError(f"unknown test kind {test_kind!r}")
    kind, n, params = core.parse_gen_spec(family)
    rows = []
    for i, eps in enumerate(eps_list):
        f = generate(kind, n, mix(seed, i), **params)
        dist = exact_distance(f)
        if k is not None:
            kk = k
        elif test_kind == "edge":
            kk = edge_schedule(eps)
        else:
            kk = subspace_schedule(eps, "practical", n)
        fn = partial(_tester_trial, f, eps, test_kind, kk)
        results = run_trials(fn, mix(seed, 1_000_000 + i), trials, jobs)
        rej = [r[0] for r in results]
        rows.append({
            "eps": eps,
            "k": kk,
            "mean_dim": float(np.mean([r[2] for r in results])),
            "exact_distance": str(dist),
            "reject_rate": sum(rej) / trials,
            "mean_queries": float(np.mean([r[1] for r in results])),
            "instance": family,
        })
    return rows


def rows_to_csv(rows: list[dict], fields: list[str] | None = None) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields or list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
