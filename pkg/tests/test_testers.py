import json

import numpy as np
import pytest

from ocfkit.core import CountingOracle, generate, mix
from ocfkit.ocf import exact_distance
from ocfkit.testers import (
    ScheduleError,
    TestReport,
    cycle_to_witness,
    edge_sampling_test,
    edge_schedule,
    subspace_restriction_test,
    subspace_schedule,
)

OCF_FAMILIES = [
    ("zero", {}),
    ("hyperplaneSide", {"alpha": 0b1011, "side": 1}),
    ("hyperplaneSubset", {"alpha": 0b110, "p": 0.7}),
    ("hyperplaneSubset", {"alpha": 1, "p": 0.1}),
]


class TestSchedules:
    def test_edge(self):
        assert edge_schedule(0.25) == 160
        assert edge_schedule(0.125) == 384

    def test_subspace_paper(self):
        assert subspace_schedule(0.25, "paper") == 107
        assert subspace_schedule(0.125, "paper") == 127

    def test_subspace_practical(self):
        assert subspace_schedule(0.25, "practical") == 11
        assert subspace_schedule(0.125, "practical") == 14
        assert subspace_schedule(0.125, "practical", n=8) == 8
        assert subspace_schedule(0.01, "practical", n=30) == 25

    def test_invalid(self):
        for eps in (0, 1, -0.5, 2):
            with pytest.raises(ValueError):
                edge_schedule(eps)
        with pytest.raises(ValueError):
            subspace_schedule(0.1, "fast")


class TestOneSided:
    @pytest.mark.parametrize("kind,params", OCF_FAMILIES)
    def test_never_rejects(self, kind, params):
        for i in range(40):
            f = generate(kind, 9, seed=i, **params)
            assert edge_sampling_test(f, 0.125, mix(1, i)).verdict == "accept"
            assert subspace_restriction_test(f, 0.125, mix(2, i)).verdict == "accept"


class TestRejection:
    def test_edge_rejects_all_ones(self):
        f = generate("allOnes", 8)
        reports = [edge_sampling_test(f, 0.125, s) for s in range(30)]
        assert all(r.rejected for r in reports)
        for r in reports:
            r.witness.validate(f)
            assert len(r.details["cycle"]) == r.witness.k + 1

    def test_subspace_rejects_all_nonzero(self):
        f = generate("allNonzero", 10)
        for s in range(30):
            r = subspace_restriction_test(f, 0.125, s)
            assert r.rejected
            r.witness.validate(f)
            assert r.witness.k == 3

    def test_far_random_function(self):
        f = generate("randomDensity", 10, seed=3)
        assert exact_distance(f) > 0.2
        assert edge_sampling_test(f, 0.25, 0).rejected
        assert subspace_restriction_test(f, 0.25, 0).rejected

    def test_cycle_to_witness(self):
        w = cycle_to_witness(3, [1, 2, 4, 1])
        assert w.points == (3, 6, 5)


class TestQueries:
    def test_edge_counts_distinct(self):
        f = generate("randomDensity", 8, seed=1, p=0.02)
        o = CountingOracle(f)
        r = edge_sampling_test(f, 0.25, 5, oracle=o)
        assert r.queries == o.queries <= 160 * 159 // 2 + 1
        assert o.probes >= o.queries

    def test_subspace_queries_equal_h(self):
        f = generate("hyperplaneSubset", 12, seed=1, alpha=5)
        o = CountingOracle(f)
        r = subspace_restriction_test(f, 0.25, 9, oracle=o)
        assert r.queries == r.schedule["h"] == 1 << r.schedule["dim"]
        pts = o.queried_points()
        # queried set is closed under XOR
        assert set((pts[:, None] ^ pts[None, :]).ravel().tolist()) == set(pts.tolist())

    def test_k_one(self):
        f = generate("allOnes", 6)
        r = edge_sampling_test(f, 0.5, 0, k=1)
        assert r.verdict == "accept" and r.queries == 0
        r = subspace_restriction_test(f, 0.5, 0, k=1)
        # a single vector spans {0, v}; f(0) = 1 is already a witness
        assert r.rejected and r.witness.points == (0,)

    def test_k_zero_subspace(self):
        r = subspace_restriction_test(generate("allNonzero", 5), 0.5, 0, k=0)
        assert r.verdict == "accept" and r.queries == 1


class TestPaperSchedule:
    def test_refused(self):
        with pytest.raises(ScheduleError):
            subspace_restriction_test(generate("allOnes", 24), 0.5, 0, schedule="paper")
        with pytest.raises(ScheduleError):
            subspace_restriction_test(generate("allOnes", 8), 0.125, 0, schedule="paper")

    def test_budget(self):
        with pytest.raises(ScheduleError):
            subspace_restriction_test(generate("allOnes", 12), 0.25, 0, k=12, budget=100)


class TestReportFormat:
    def test_json(self):
        r = edge_sampling_test(generate("allOnes", 6), 0.25, 11)
        d = json.loads(r.to_json())
        assert d["verdict"] == "reject" and d["seed"] == 11
        assert d["schedule"] == {"test": "edge", "eps": 0.25, "k": 160}
        assert d["witness"]["k"] == len(d["witness"]["points"])

    def test_accept_report(self):
        r = subspace_restriction_test(generate("zero", 6), 0.25, 1)
        d = r.to_dict()
        assert d["witness"] is None and set(d["schedule"]) == {"test", "eps", "k", "mode", "dim", "h"}
        assert isinstance(r, TestReport)

    def test_deterministic(self):
        f = generate("randomDensity", 10, seed=4, p=0.01)
        a = [edge_sampling_test(f, 0.25, s).to_json() for s in range(5)]
        b = [edge_sampling_test(f, 0.25, s).to_json() for s in range(5)]
        assert a == b
