"""One-sided testers for odd-cycle-freeness.

Both testers only ever reject with a validated witness, so an OCF input is
accepted with probability 1.  Query counts are distinct points probed.

Schedules (sample counts) are calibration choices, not constants from the
analysis; both are overridable and always recorded in the report.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .cayley import find_odd_cycle, sample_induced_subgraph
from .core import BooleanFunction, CountingOracle, make_rng, random_subspace, to_binary
from .ocf import OcfWitness, is_ocf_spectral, shortest_odd_witness

DEFAULT_QUERY_BUDGET = 1 << 24


class ScheduleError(ValueError):
    """The requested schedule cannot be run within the query budget."""


def _check_eps(eps: float) -> None:
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")


def edge_schedule(eps: float) -> int:
    """k = ceil((8/eps) log2(8/eps)) sampled points."""
    _check_eps(eps)
    return math.ceil((8 / eps) * math.log2(8 / eps))


def subspace_schedule(eps: float, mode: str = "practical", n: int | None = None) -> int:
    """Number of vectors spanning the random subspace.

    paper:     ceil(20 log2(10/eps)), so 2^k is about (10/eps)^20
    practical: ceil(3 log2(1/eps)) + 5, capped at n when n is given
    """
    _check_eps(eps)
    if mode == "paper":
        return math.ceil(20 * math.log2(10 / eps))
    if mode == "practical":
        k = math.ceil(3 * math.log2(1 / eps)) + 5
        return k if n is None else min(n, k)
    raise ValueError(f"unknown schedule mode {mode!r}")


@dataclass
class TestReport:
    verdict: str
    queries: int
    seed: int
    schedule: dict
    witness: OcfWitness | None = None
    details: dict = field(default_factory=dict)

    __test__ = False  # not a pytest class

    @property
    def rejected(self) -> bool:
        return self.verdict == "reject"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "queries": self.queries,
            "seed": self.seed,
            "schedule": self.schedule,
            **self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def cycle_to_witness(n: int, cycle: list[int]) -> OcfWitness:
    """Closed walk [a_1, ..., a_m, a_1] -> steps (a_2 ^ a_1, ..., a_1 ^ a_m)."""
    return OcfWitness(n, tuple(cycle[i + 1] ^ cycle[i] for i in range(len(cycle) - 1)))


def edge_sampling_test(f: BooleanFunction, eps: float, seed: int, k: int | None = None,
                       oracle: CountingOracle | None = None) -> TestReport:
    """Sample k points, probe f on all pairwise XORs, reject on an odd cycle."""
    _check_eps(eps)
    if k is None:
        k = edge_schedule(eps)
    if k < 1:
        raise ValueError("k must be positive")
    oracle = CountingOracle(f) if oracle is None else oracle
    rng = make_rng(seed)
    points = rng.integers(0, f.size, size=k, dtype=np.int64)
    graph = sample_induced_subgraph(oracle, points)
    cycle = find_odd_cycle(graph)
    schedule = {"test": "edge", "eps": eps, "k": k}
    if cycle is None:
        return TestReport("accept", oracle.queries, seed, schedule)
    witness = cycle_to_witness(f.n, cycle)
    witness.validate(f)
    return TestReport("reject", oracle.queries, seed, schedule, witness,
                      {"cycle": [to_binary(v, f.n) for v in cycle]})


def subspace_restriction_test(f: BooleanFunction, eps: float, seed: int, schedule: str = "practical",
                              k: int | None = None, budget: int = DEFAULT_QUERY_BUDGET,
                              oracle: CountingOracle | None = None) -> TestReport:
    """Span k random vectors, read f on the whole span, reject unless the
    restriction is OCF."""
    _check_eps(eps)
    if schedule == "paper":
        h = (10 / eps) ** 20
        if h > f.size or h > budget:
            raise ScheduleError(
                f"paper schedule needs |H| = (10/eps)^20 = {h:.3g} queries, "
                f"exceeding 2^n = {f.size} or budget {budget}")
    if k is None:
        k = subspace_schedule(eps, schedule, f.n)
    if k < 0:
        raise ValueError("k must be non-negative")
    oracle = CountingOracle(f) if oracle is None else oracle
    H = random_subspace(f.n, k, seed)
    elems = H.elements()
    if H.size > budget:
        raise ScheduleError(f"|H| = {H.size} exceeds query budget {budget}")
    g = BooleanFunction(H.dim, oracle.query_many(elems))
    sched = {"test": "subspace", "eps": eps, "k": k, "mode": schedule, "dim": H.dim, "h": H.size}
    ok, _ = is_ocf_spectral(g)
    if ok:
        return TestReport("accept", oracle.queries, seed, sched)
    local = shortest_odd_witness(g)
    witness = OcfWitness(f.n, tuple(int(elems[y]) for y in local.points))
    witness.validate(f)
    return TestReport("reject", oracle.queries, seed, sched, witness)
