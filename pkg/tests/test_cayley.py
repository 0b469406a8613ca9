import json
from fractions import Fraction

import numpy as np
import pytest

from ocfkit.cayley import (
    Bipartition,
    CayleyGraph,
    DimensionError,
    best_bipartition,
    edge_count_bound,
    exact_bipartiteness_distance,
    find_odd_cycle,
    lambda_min,
    min_same_side_weight,
    sample_induced_subgraph,
    verify_all_eigenpairs,
    verify_eigenpair,
)
from ocfkit.core import BooleanFunction, CountingOracle, generate, make_rng, wht
from ocfkit.ocf import exact_distance
from ocfkit.verify import all_functions, random_functions

from oracles import bipartiteness_bruteforce, edges_inside_bruteforce

K4 = BooleanFunction.from_support(2, [0b01, 0b10, 0b11])
C4 = BooleanFunction.from_support(2, [0b01, 0b11])


class TestGraph:
    def test_regular(self):
        f = generate("randomDensity", 5, seed=1)
        A = CayleyGraph(f).adjacency_matrix()
        assert np.all(A.sum(axis=1) == f.support_size)
        assert np.array_equal(A, A.T)
        assert CayleyGraph(f).neighbors(3).tolist() == sorted(int(s) ^ 3 for s in f.support())

    def test_self_loops(self):
        assert not CayleyGraph(K4).has_self_loops()
        assert CayleyGraph(generate("allOnes", 2)).has_self_loops()


class TestEigen:
    def test_all_ones_vector(self):
        f = generate("randomDensity", 6, seed=2)
        assert verify_eigenpair(f, 0)

    def test_cycle_eigenvalue(self):
        # direct 4x4 product: A chi_01 = -2 chi_01
        A = np.array([[int(C4(u ^ v)) for v in range(4)] for u in range(4)])
        chi = np.array([1, -1, 1, -1])
        assert (A @ chi).tolist() == (-2 * chi).tolist()
        assert verify_eigenpair(C4, 0b01)
        assert wht(C4).w[0b01] == -2

    def test_wrong_eigenvalue_detected(self):
        f = generate("randomDensity", 5, seed=3)
        bad = wht(generate("randomDensity", 5, seed=4))
        assert not all(verify_eigenpair(f, a, spectrum=bad) for a in range(32))

    def test_random(self):
        rng = make_rng(1)
        for n in range(2, 9):
            f = generate("randomDensity", n, seed=n)
            assert verify_eigenpair(f, int(rng.integers(0, 1 << n)))
            assert verify_all_eigenpairs(f)

    def test_lambda_min(self):
        assert lambda_min(K4) == -1
        assert lambda_min(C4) == -2
        assert lambda_min(generate("zero", 4)) == 0

    def test_lambda_min_is_min_eigenvalue(self):
        for n in (2, 4, 6):
            f = generate("randomDensity", n, seed=n)
            eig = np.linalg.eigvalsh(CayleyGraph(f).adjacency_matrix().astype(float))
            assert eig.min() == pytest.approx(lambda_min(f))

    def test_guard(self):
        with pytest.raises(DimensionError):
            verify_eigenpair(generate("zero", 13), 0)


class TestEdgeBound:
    def test_full_set_tight(self):
        f = generate("randomDensity", 5, seed=5)
        r = edge_count_bound(f, range(32))
        assert r.exact == r.lower_bound == Fraction(32 * f.support_size, 2)
        assert r.holds

    def test_empty(self):
        r = edge_count_bound(K4, [])
        assert r.exact == 0 == r.lower_bound and r.holds

    def test_random_sets(self):
        rng = make_rng(9)
        for n in range(3, 7):
            for i in range(25):
                f = generate("randomDensity", n, seed=100 * n + i, p=float(rng.random()))
                U = np.flatnonzero(rng.random(1 << n) < rng.random())
                r = edge_count_bound(f, U)
                assert r.exact == edges_inside_bruteforce(f.table.tolist(), U.tolist())
                assert r.holds


class TestBipartiteness:
    def test_k4(self):
        assert exact_bipartiteness_distance(K4) == Fraction(1, 8)

    def test_cycle(self):
        assert exact_bipartiteness_distance(C4) == 0

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_against_bruteforce(self, n):
        for f in all_functions(n):
            assert exact_bipartiteness_distance(f) == bipartiteness_bruteforce(f.table.tolist())

    def test_factor_two_small(self):
        for n in (1, 2, 3):
            for f in all_functions(n):
                assert exact_bipartiteness_distance(f) == exact_distance(f) / 2
        for f in random_functions(4, 100, seed=1):
            assert exact_bipartiteness_distance(f) == exact_distance(f) / 2

    def test_best_partition_attains(self):
        f = generate("randomDensity", 4, seed=8)
        dist, part = best_bipartition(f)
        assert part.violations(f) == dist * f.size ** 2

    def test_corollary_spectral_condition(self):
        for f in random_functions(4, 200, seed=3):
            d = f.support_size
            lam = lambda_min(f)
            # largest eps with lambda_min >= -d + 2 eps N
            eps = Fraction(lam + d, 2 * f.size)
            if eps > 0:
                assert exact_bipartiteness_distance(f) >= eps / 2

    def test_guard(self):
        with pytest.raises(DimensionError):
            exact_bipartiteness_distance(generate("zero", 5))

    def test_min_same_side_odd_sizes(self):
        rng = make_rng(4)
        for t in (1, 2, 3, 5, 7):
            A = rng.integers(0, 2, (t, t))
            A = np.triu(A, 1)
            A = A + A.T
            best = min(
                sum(A[u, v] for u in range(t) for v in range(t) if ((c >> u) & 1) == ((c >> v) & 1))
                for c in range(0, 1 << t, 2)
            ) if t else 0
            assert min_same_side_weight(A)[0] == best


class TestSampleGraph:
    def test_duplicates_not_adjacent(self):
        g = sample_induced_subgraph(K4, [2, 2])
        assert not g.adj[0, 1] and g.loop is False

    def test_complete(self):
        g = sample_induced_subgraph(K4, [0, 1, 2, 3])
        assert g.adj.sum() == 12
        assert len(g.edges()) == 6

    def test_single(self):
        g = sample_induced_subgraph(K4, [3])
        assert g.edges() == [] and find_odd_cycle(g) is None

    def test_query_count(self):
        o = CountingOracle(generate("randomDensity", 10, seed=1))
        pts = make_rng(2).integers(0, 1024, 40)
        sample_induced_subgraph(o, pts)
        expected = {int(a) ^ int(b) for i, a in enumerate(pts) for b in pts[i + 1:]}
        assert o.queries == len(expected)
        assert o.probes == 40 * 39 // 2 + (1 if len(set(pts.tolist())) < 40 else 0)

    def test_json(self):
        g = sample_induced_subgraph(C4, [0, 1, 3])
        assert json.loads(g.to_json()) == {"vertices": ["00", "01", "11"], "edges": [[0, 1], [0, 2]]}


class TestOddCycle:
    def _check_walk(self, f, walk):
        assert walk[0] == walk[-1]
        m = len(walk) - 1
        assert m % 2 == 1
        acc = 0
        for a, b in zip(walk, walk[1:]):
            assert f(a ^ b)
            acc ^= a ^ b
        assert acc == 0

    def test_triangle(self):
        walk = find_odd_cycle(sample_induced_subgraph(K4, [1, 2, 3]))
        assert len(walk) == 4
        self._check_walk(K4, walk)

    def test_bipartite(self):
        assert find_odd_cycle(sample_induced_subgraph(C4, [0, 1, 2, 3])) is None

    def test_self_loop(self):
        f = generate("allOnes", 3)
        walk = find_odd_cycle(sample_induced_subgraph(f, [5, 2, 5]))
        assert walk == [5, 5]

    def test_random_samples(self):
        rng = make_rng(3)
        for i in range(200):
            f = generate("randomDensity", 8, seed=i, p=float(rng.random()) * 0.1)
            pts = rng.integers(0, 256, 30)
            g = sample_induced_subgraph(f, pts)
            walk = find_odd_cycle(g)
            if walk is None:
                # 2-colorable: check with networkx-free brute BFS
                color = {}
                for s in range(30):
                    if s in color:
                        continue
                    color[s] = 0
                    stack = [s]
                    while stack:
                        u = stack.pop()
                        for v in np.flatnonzero(g.adj[u]).tolist():
                            if v not in color:
                                color[v] = color[u] ^ 1
                                stack.append(v)
                            else:
                                assert color[v] != color[u]
            else:
                self._check_walk(f, walk)

    def test_deterministic(self):
        f = generate("randomDensity", 8, seed=1)
        pts = make_rng(5).integers(0, 256, 50)
        assert find_odd_cycle(sample_induced_subgraph(f, pts)) == find_odd_cycle(sample_induced_subgraph(f, pts))
