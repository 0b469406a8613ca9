import json

import numpy as np
import pytest

from ocfkit.core import CountingOracle, generate, mix, wht
from ocfkit.core import BooleanFunction
from ocfkit.estimators import (
    Estimate,
    estimate_density,
    estimate_linearity_distance,
    estimate_min_fourier,
    estimate_ocf_distance,
    partition_sample_sizes,
)
from ocfkit.ocf import exact_distance, linearity_distance


class TestDensity:
    def test_constants(self):
        assert estimate_density(generate("allOnes", 6), 0.1, 0).value == 1
        assert estimate_density(generate("zero", 6), 0.1, 0).value == 0

    def test_sample_size(self):
        est = estimate_density(generate("zero", 10), 0.1, 0)
        assert est.params["m"] == 300
        assert est.queries <= 300

    def test_accuracy(self):
        f = generate("randomDensity", 16, seed=1)
        rho = float(f.density)
        hits = sum(abs(estimate_density(f, 0.05, s).value - rho) <= 0.05 for s in range(100))
        assert hits >= 90


class TestOcfDistance:
    def test_ocf_exact_zero(self):
        f = generate("hyperplaneSubset", 10, seed=2, alpha=77)
        for method in ("partition", "induced"):
            assert estimate_ocf_distance(f, 0.1, 3, method=method).value == 0

    def test_all_ones(self):
        f = generate("allOnes", 12)
        for method in ("partition", "induced"):
            vals = [estimate_ocf_distance(f, 0.1, s, method=method).value for s in range(20)]
            assert all(abs(v - 0.5) <= 0.1 for v in vals)

    def test_induced_cap_note(self):
        est = estimate_ocf_distance(generate("allOnes", 8), 0.1, 0, method="induced")
        assert est.params["t"] == 24 and est.notes
        est = estimate_ocf_distance(generate("allOnes", 8), 0.5, 0, method="induced")
        assert est.params["t"] == 16 and not est.notes

    def test_induced_improves_with_t(self):
        f = generate("randomDensity", 10, seed=5)
        exact = float(exact_distance(f))
        errs = []
        for t in (8, 12, 16, 20):
            vals = [estimate_ocf_distance(f, 0.1, s, t=t, method="induced").value for s in range(15)]
            errs.append(abs(np.mean(vals) - exact))
        assert errs[-1] < errs[0]

    def test_partition_sizes(self):
        assert partition_sample_sizes(0.1) == (12, 320)
        assert partition_sample_sizes(0.5) == (12, 64)
        assert partition_sample_sizes(0.01) == (12, 400)

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            estimate_ocf_distance(generate("zero", 4), 0.1, 0, method="magic")

    def test_invalid_eps(self):
        with pytest.raises(ValueError):
            estimate_ocf_distance(generate("zero", 4), 0, 0)

    def test_accuracy_random(self):
        hits = 0
        for i in range(20):
            f = generate("randomDensity", 12, seed=i, p=0.05 + 0.9 * (i / 19))
            est = estimate_ocf_distance(f, 0.1, mix(7, i))
            hits += abs(est.value - float(exact_distance(f))) <= 0.1
        assert hits >= 18


class TestMinFourier:
    def test_all_ones(self):
        est = estimate_min_fourier(generate("allOnes", 10), 0.1, 0)
        assert abs(est.value) <= 0.1

    def test_hyperplane(self):
        est = estimate_min_fourier(generate("hyperplaneSide", 10, alpha=3), 0.1, 0)
        assert abs(est.value + 0.5) <= 0.1

    def test_clamped_range(self):
        for s in range(10):
            v = estimate_min_fourier(generate("randomDensity", 8, seed=s), 0.2, s).value
            assert -0.5 <= v <= 1.0

    def test_shared_oracle(self):
        o = CountingOracle(generate("randomDensity", 10, seed=1))
        est = estimate_min_fourier(o, 0.2, 3)
        assert est.queries == o.queries


class TestLinearity:
    def test_zero(self):
        assert estimate_linearity_distance(generate("zero", 8), 0.1, 0).value == 0

    def test_x1x2(self):
        f = BooleanFunction.from_support(2, [0b11])
        est = estimate_linearity_distance(f, 0.1, 0)
        assert abs(est.value - float(linearity_distance(f))) <= 0.1

    def test_hyperplane(self):
        f = generate("hyperplaneSide", 10, alpha=9)
        assert linearity_distance(f) == 0
        assert estimate_linearity_distance(f, 0.1, 1).value <= 0.1

    def test_json(self):
        est = estimate_linearity_distance(generate("randomDensity", 8, seed=2), 0.2, 4)
        d = json.loads(est.to_json())
        assert d["seed"] == 4 and 0 <= d["value"] <= 0.5
        assert isinstance(est, Estimate)

    def test_deterministic(self):
        f = generate("randomDensity", 10, seed=6)
        assert estimate_linearity_distance(f, 0.2, 5).to_json() == estimate_linearity_distance(f, 0.2, 5).to_json()
