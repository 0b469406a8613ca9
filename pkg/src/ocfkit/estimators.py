"""Sampling estimators for density, distance to OCF, the minimum Fourier
coefficient and distance to linearity.

Distance to OCF is twice the bipartiteness distance of the Cayley graph.
Two bipartiteness estimators are provided:

``induced``    best bipartition of a t-vertex induced sample, found
               exhaustively (t <= 24, i.e. 2^23 splits).  Simple, but the
               optimum is fitted to the sample and runs low by a few
               hundredths at t = 24.
``partition``  (default) every split of a small core sample U is extended
               greedily to a separate evaluation sample Z; the estimate is
               the best extended split's violation fraction on Z.  Fitting
               and scoring use different vertices, which removes most of
               the small-sample bias.

Both sample sizes are far below the asymptotic ones; accuracy is checked
against the exact oracles instead.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .cayley import sign_patterns, find_odd_cycle, min_same_side_weight, sample_induced_subgraph
from .core import BooleanFunction, CountingOracle, make_rng, mix

MAX_SAMPLE_VERTICES = 24
MAX_CORE_VERTICES = 12
MAX_EVAL_VERTICES = 400


@dataclass
class Estimate:
    value: float
    eps: float
    queries: int
    seed: int
    params: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"value": self.value, "eps": self.eps, "queries": self.queries,
                "seed": self.seed, "params": self.params, "notes": self.notes}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _check_eps(eps: float) -> None:
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")


def _oracle(f) -> CountingOracle:
    return f if isinstance(f, CountingOracle) else CountingOracle(f)


def _clamp(est: Estimate, lo: float, hi: float) -> Estimate:
    if est.value < lo or est.value > hi:
        est.notes.append(f"clamped {est.value:.6g} into [{lo}, {hi}]")
        est.value = min(max(est.value, lo), hi)
    return est


def density_sample_size(eps: float) -> int:
    return math.ceil(3 / eps ** 2)


def ocf_sample_size(eps: float) -> int:
    return min(MAX_SAMPLE_VERTICES, math.ceil(8 / eps))


def estimate_density(f, eps: float, seed: int, m: int | None = None) -> Estimate:
    """Mean of m uniform probes, m = ceil(3/eps^2) by default."""
    _check_eps(eps)
    oracle = _oracle(f)
    m = density_sample_size(eps) if m is None else m
    before = oracle.queries
    pts = make_rng(seed).integers(0, 1 << oracle.n, size=m, dtype=np.int64)
    value = float(oracle.query_many(pts).mean())
    return Estimate(value, eps, oracle.queries - before, seed, {"m": m})


def partition_sample_sizes(eps: float) -> tuple[int, int]:
    """(core, evaluation) vertex counts for the partition method."""
    return min(MAX_CORE_VERTICES, math.ceil(8 / eps)), min(MAX_EVAL_VERTICES, math.ceil(32 / eps))


def estimate_ocf_distance(f, eps: float, seed: int, t: int | None = None,
                          method: str = "partition") -> Estimate:
    """Distance to OCF as twice an estimated bipartiteness distance.

    Violations follow the Cayley-graph convention: e(A) + e(B) with self
    loops counted one half, normalized by (sample size)^2.
    """
    _check_eps(eps)
    if method == "partition":
        return _estimate_partition(_oracle(f), eps, seed)
    if method != "induced":
        raise ValueError(f"unknown method {method!r}")
    oracle = _oracle(f)
    notes = []
    if t is None:
        t = ocf_sample_size(eps)
        if math.ceil(8 / eps) > MAX_SAMPLE_VERTICES:
            notes.append(f"sample size capped at {MAX_SAMPLE_VERTICES} vertices")
    if t > 30:
        raise ValueError(f"exhaustive bipartition search needs t <= 30, got {t}")
    before = oracle.queries
    pts = make_rng(seed).integers(0, 1 << oracle.n, size=t, dtype=np.int64)
    g = sample_induced_subgraph(oracle, pts, with_loops=True)
    adj = g.adj.astype(np.uint8)
    np.fill_diagonal(adj, 1 if g.loop else 0)
    same, _ = min_same_side_weight(adj)
    # same = 2 (e(A) + e(B)); distance to OCF = 2 (e(A) + e(B)) / t^2
    value = same / (t * t)
    est = Estimate(value, eps, oracle.queries - before, seed, {"method": "induced", "t": t}, notes)
    return _clamp(est, 0.0, 0.5)


def _estimate_partition(oracle: CountingOracle, eps: float, seed: int) -> Estimate:
    u, s = partition_sample_sizes(eps)
    before = oracle.queries
    rng = make_rng(seed)
    core = rng.integers(0, 1 << oracle.n, size=u, dtype=np.int64)
    ev = rng.integers(0, 1 << oracle.n, size=s, dtype=np.int64)
    tie = np.where(rng.random(s) < 0.5, -1.0, 1.0)
    g = sample_induced_subgraph(oracle, ev, with_loops=True)
    params = {"method": "partition", "core": u, "eval": s}
    if find_odd_cycle(g) is None:
        # evaluation sample is bipartite: zero violations are attainable
        return Estimate(0.0, eps, oracle.queries - before, seed, params)
    A_uz = oracle.query_many(core[:, None] ^ ev[None, :]).astype(np.float64)
    A_zz = g.adj.astype(np.float64)
    np.fill_diagonal(A_zz, 1.0 if g.loop else 0.0)
    Y = sign_patterns(u, fix_first=True)       # splits of the core, +-1
    pull = Y @ A_uz                              # same-side weight minus other-side weight at +1
    Z = np.where(pull > 0, -1.0, np.where(pull < 0, 1.0, tie[None, :]))
    quad = np.einsum("ij,ij->i", Z @ A_zz, Z)
    same = (A_zz.sum() + quad.min()) / 2          # = 2 (e(A) + e(B)) on Z
    est = Estimate(float(same / (s * s)), eps, oracle.queries - before, seed, params)
    return _clamp(est, 0.0, 0.5)


def estimate_min_fourier(f, eps: float, seed: int) -> Estimate:
    """2 * distance(eps/3) - density(eps/3)."""
    _check_eps(eps)
    oracle = _oracle(f)
    before = oracle.queries
    dist = estimate_ocf_distance(oracle, eps / 3, mix(seed, 0))
    dens = estimate_density(oracle, eps / 3, mix(seed, 1))
    est = Estimate(2 * dist.value - dens.value, eps, oracle.queries - before, seed,
                   {**dist.params, "m": dens.params["m"],
                    "distance": dist.value, "density": dens.value, "split": "eps/3 each"},
                   dist.notes + dens.notes)
    return _clamp(est, -0.5, 1.0)


def estimate_linearity_distance(f, eps: float, seed: int) -> Estimate:
    """min(density, 1/2 + min Fourier coefficient), each at error eps/2."""
    _check_eps(eps)
    oracle = _oracle(f)
    before = oracle.queries
    dens = estimate_density(oracle, eps / 2, mix(seed, 0))
    mf = estimate_min_fourier(oracle, eps / 2, mix(seed, 1))
    est = Estimate(min(dens.value, 0.5 + mf.value), eps, oracle.queries - before, seed,
                   {"density": dens.value, "min_fourier": mf.value, "split": "eps/2 each"},
                   dens.notes + mf.notes)
    return _clamp(est, 0.0, 0.5)
