"""The Cayley graph of f: vertices F_2^n, u ~ v iff f(u ^ v) = 1.

The graph is never materialized for the oracle-facing routines; adjacency is
always answered by probing f.  Vertex count is N = 2^n (the graph-theory
literature often calls this n; here n stays the cube dimension).

Edge counting convention: for a vertex set U, e(U) = (1_U^T A 1_U) / 2, so an
ordinary edge inside U counts once and a self-loop (present at every vertex
when f(0) = 1) counts one half.  Bipartiteness distance is the minimum of
e(A) + e(B) over bipartitions, divided by N^2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import BooleanFunction, CountingOracle, DimensionError, Spectrum, parity, to_binary, wht

EIGEN_MAX_DIM = 12
EDGE_COUNT_MAX_DIM = 12
BIPARTITION_MAX_DIM = 4


def _guard(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise DimensionError(f"{what} limited to n <= {limit}, got n={n}")


class CayleyGraph:
    """Adjacency oracle for the Cayley graph generated by supp(f)."""

    def __init__(self, f: BooleanFunction):
        self.f = f
        self.N = f.size
        self.degree = f.support_size

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.f.table[u ^ v])

    def neighbors(self, u: int) -> np.ndarray:
        return np.sort(self.f.support() ^ u)

    def has_self_loops(self) -> bool:
        return bool(self.f.table[0])

    def adjacency_matrix(self) -> np.ndarray:
        """Dense N x N 0/1 matrix; only for small n."""
        _guard(self.f.n, EIGEN_MAX_DIM, "dense adjacency")
        idx = np.arange(self.N)
        return self.f.table[idx[:, None] ^ idx[None, :]]


@dataclass(frozen=True, eq=False)
class Bipartition:
    """side[v] = 0 puts v in A, 1 puts v in B."""

    side: np.ndarray

    def violations(self, f: BooleanFunction) -> Fraction:
        """e(A) + e(B) by probing f on (u, u ^ s) for s in supp(f)."""
        supp = f.support()
        doubled = 0
        for u in range(f.size):
            doubled += int(np.count_nonzero(self.side[u ^ supp] == self.side[u]))
        return Fraction(doubled, 2)


# ---------------------------------------------------------------------------
# Spectrum


def character(n: int, alpha: int) -> np.ndarray:
    return 1 - 2 * parity(np.arange(1 << n, dtype=np.int64) & alpha).astype(np.int64)


def verify_eigenpair(f: BooleanFunction, alpha: int, spectrum: Spectrum | None = None) -> bool:
    """Check A chi_alpha = W(alpha) chi_alpha by direct summation over all pairs."""
    _guard(f.n, EIGEN_MAX_DIM, "eigenpair verification")
    spec = wht(f) if spectrum is None else spectrum
    chi = character(f.n, alpha)
    idx = np.arange(f.size)
    b = np.empty(f.size, dtype=np.int64)
    rows = max(1, (1 << 22) // f.size)
    for start in range(0, f.size, rows):
        u = idx[start:start + rows]
        b[start:start + rows] = f.table[u[:, None] ^ idx[None, :]].astype(np.int64) @ chi
    return bool(np.array_equal(b, int(spec.w[alpha]) * chi))


def verify_all_eigenpairs(f: BooleanFunction, spectrum: Spectrum | None = None) -> bool:
    """verify_eigenpair for every alpha at once (one N x N product)."""
    _guard(f.n, 10, "batched eigenpair verification")
    spec = wht(f) if spectrum is None else spectrum
    A = CayleyGraph(f).adjacency_matrix().astype(np.int64)
    idx = np.arange(f.size, dtype=np.int64)
    X = 1 - 2 * parity(idx[:, None] & idx[None, :]).astype(np.int64)   # column alpha = chi_alpha
    return bool(np.array_equal(A @ X, X * spec.w[None, :]))


def lambda_min(f: BooleanFunction, spectrum: Spectrum | None = None) -> int:
    """Smallest adjacency eigenvalue: the characters exhaust the eigenvectors."""
    spec = wht(f) if spectrum is None else spectrum
    return spec.min_value()


# ---------------------------------------------------------------------------
# Edge counts


@dataclass(frozen=True)
class EdgeBound:
    lower_bound: Fraction
    exact: Fraction
    holds: bool


def edges_within(f: BooleanFunction, U) -> Fraction:
    """e(U) = (1_U^T A 1_U) / 2 counted by oracle probes over ordered pairs."""
    _guard(f.n, EDGE_COUNT_MAX_DIM, "exact edge count")
    U = np.unique(np.asarray(U, dtype=np.int64))
    if U.size == 0:
        return Fraction(0)
    doubled = 0
    rows = max(1, (1 << 22) // U.size)
    for start in range(0, U.size, rows):
        doubled += int(f.table[U[start:start + rows, None] ^ U[None, :]].sum(dtype=np.int64))
    return Fraction(doubled, 2)


def edge_count_bound(f: BooleanFunction, U, spectrum: Spectrum | None = None) -> EdgeBound:
    """e(U) >= (|U| / 2N) (|U| d + lambda_min (N - |U|))."""
    U = np.unique(np.asarray(U, dtype=np.int64))
    N = f.size
    d = f.support_size
    lam = lambda_min(f, spectrum)
    u = int(U.size)
    lower = Fraction(u * (u * d + lam * (N - u)), 2 * N)
    exact = edges_within(f, U)
    return EdgeBound(lower, exact, exact >= lower)


# ---------------------------------------------------------------------------
# Bipartiteness


def sign_patterns(m: int, fix_first: bool) -> np.ndarray:
    """All +-1 vectors of length m (first coordinate +1 when fix_first)."""
    free = m - 1 if fix_first and m else m
    codes = np.arange(1 << free, dtype=np.int64)
    bits = (codes[:, None] >> np.arange(free)) & 1
    ys = 1.0 - 2.0 * bits
    if fix_first and m:
        ys = np.hstack((np.ones((ys.shape[0], 1)), ys))
    return ys


def min_same_side_weight(adj: np.ndarray) -> tuple[int, np.ndarray]:
    """Minimize sum over ordered (u, v) on the same side of adj[u, v].

    ``adj`` is a symmetric 0/1 matrix whose diagonal holds self-loops.  Vertex
    0 is fixed to side 0.  Exhaustive over all 2^(t-1) bipartitions, split in
    two halves so each block is a single matrix product.  Returns the minimum
    and one minimizing side vector (smallest index in enumeration order).
    """
    A = np.asarray(adj, dtype=np.float64)
    t = A.shape[0]
    if t == 0:
        return 0, np.zeros(0, dtype=np.uint8)
    p = (t + 1) // 2
    YP = sign_patterns(p, fix_first=True)
    YR = sign_patterns(t - p, fix_first=False)
    App, Apr, Arr = A[:p, :p], A[:p, p:], A[p:, p:]
    a = np.einsum("ij,jk,ik->i", YP, App, YP)
    b = np.einsum("ij,jk,ik->i", YR, Arr, YR)
    cross_left = YP @ Apr                       # (2^(p-1), t-p)
    best = np.inf
    best_pos = (0, 0)
    rows = max(1, (1 << 22) // max(1, YR.shape[0]))
    for start in range(0, YP.shape[0], rows):
        block = a[start:start + rows, None] + b[None, :] + 2.0 * (cross_left[start:start + rows] @ YR.T)
        pos = int(np.argmin(block))
        val = block.flat[pos]
        if val < best:
            best = val
            best_pos = (start + pos // block.shape[1], pos % block.shape[1])
    y = np.concatenate((YP[best_pos[0]], YR[best_pos[1]]))
    # ordered same-side weight = (sum A + y^T A y) / 2
    total = int(round(A.sum()))
    same = (total + int(round(best))) // 2
    side = (y < 0).astype(np.uint8)
    return same, side


def best_bipartition(f: BooleanFunction) -> tuple[Fraction, Bipartition]:
    _guard(f.n, BIPARTITION_MAX_DIM, "exact bipartiteness distance")
    same, side = min_same_side_weight(CayleyGraph(f).adjacency_matrix())
    return Fraction(same, 2 * f.size * f.size), Bipartition(side)


def exact_bipartiteness_distance(f: BooleanFunction) -> Fraction:
    """min over bipartitions of (e(A) + e(B)) / N^2."""
    return best_bipartition(f)[0]


# ---------------------------------------------------------------------------
# Sampled subgraphs


@dataclass(frozen=True, eq=False)
class SampleGraph:
    """Subgraph induced by sampled vertices; adj[i, j] = f(v_i ^ v_j) for i != j.

    ``loop`` is f(0) when it was probed (only needed when two samples
    coincide or loops were requested), else None.
    """

    n: int
    vertices: np.ndarray
    adj: np.ndarray
    loop: bool | None = None

    @property
    def k(self) -> int:
        return int(self.vertices.size)

    def edges(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adj, 1))
        return list(zip(i.tolist(), j.tolist()))

    def to_dict(self) -> dict:
        return {
            "vertices": [to_binary(int(v), self.n) for v in self.vertices],
            "edges": [[i, j] for i, j in self.edges()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def sample_induced_subgraph(oracle, vertices, with_loops: bool = False) -> SampleGraph:
    """Probe f(v_i ^ v_j) for all i < j.

    ``oracle`` is a :class:`CountingOracle` or a :class:`BooleanFunction`.
    f(0) is probed once if some sample repeats or ``with_loops`` is set.
    """
    if isinstance(oracle, BooleanFunction):
        oracle = CountingOracle(oracle)
    v = np.asarray(vertices, dtype=np.int64)
    k = v.size
    adj = np.zeros((k, k), dtype=bool)
    iu, ju = np.triu_indices(k, 1)
    if iu.size:
        vals = oracle.query_many(v[iu] ^ v[ju]).astype(bool)
        adj[iu, ju] = vals
        adj[ju, iu] = vals
    loop = None
    if with_loops or (k and np.unique(v).size < k):
        loop = bool(oracle.query(0))
    return SampleGraph(oracle.n, v, adj, loop)


def find_odd_cycle(g: SampleGraph) -> list[int] | None:
    """Odd closed walk in g as vertex words [a_1, ..., a_m, a_1], or None.

    A repeated sample with a loop gives m = 1.  Otherwise components are
    2-colored breadth-first from their smallest-index vertex; for the first
    monochromatic edge (i, j) in row-major order the walk runs from i up the
    BFS tree to the common ancestor and down to j.
    """
    k = g.k
    adj = g.adj
    if g.loop:
        for i in range(k):
            dup = np.flatnonzero(g.vertices[i + 1:] == g.vertices[i])
            if dup.size:
                return [int(g.vertices[i]), int(g.vertices[i])]
    depth = np.full(k, -1, dtype=np.int64)
    parent = np.full(k, -1, dtype=np.int64)
    for root in range(k):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        frontier = np.array([root])
        level = 0
        while frontier.size:
            sub = adj[frontier]
            new = np.flatnonzero(sub.any(axis=0) & (depth < 0))
            if new.size == 0:
                break
            level += 1
            depth[new] = level
            parent[new] = frontier[np.argmax(sub[:, new], axis=0)]
            frontier = new
    mono = np.triu(adj & ((depth[:, None] & 1) == (depth[None, :] & 1)), 1)
    hits = np.argwhere(mono)
    if hits.size == 0:
        return None
    i, j = (int(x) for x in hits[0])
    up_i, up_j = [i], [j]
    a, b = i, j
    while depth[a] > depth[b]:
        a = int(parent[a]); up_i.append(a)
    while depth[b] > depth[a]:
        b = int(parent[b]); up_j.append(b)
    while a != b:
        a = int(parent[a]); up_i.append(a)
        b = int(parent[b]); up_j.append(b)
    walk = up_i + up_j[-2::-1]               # i .. lca .. j
    words = [int(g.vertices[x]) for x in walk]
    return words + [words[0]]
