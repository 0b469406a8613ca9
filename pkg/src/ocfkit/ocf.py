"""Exact odd-cycle-freeness: predicates, distance, witnesses, fourth moment.

A function is odd-cycle-free (OCF) when no odd number of support points
(repetitions allowed) XOR to zero.  Every routine here is exact; they serve
as ground truth for the randomized testers and estimators.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core import (
    BooleanFunction,
    DimensionError,
    Spectrum,
    fwht,
    parity,
    to_binary,
    from_binary,
    wht,
)

WITNESS_MAX_DIM = 20
_HYPERPLANE_MATRIX_MAX_DIM = 12


class InvalidWitness(ValueError):
    pass


@dataclass(frozen=True)
class OcfWitness:
    """Odd multiset of support points whose XOR is zero."""

    n: int
    points: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.points)

    def check(self, f: BooleanFunction) -> bool:
        try:
            self.validate(f)
        except InvalidWitness:
            return False
        return True

    def validate(self, f: BooleanFunction) -> None:
        if self.n != f.n:
            raise InvalidWitness(f"witness dimension {self.n} != n={f.n}")
        if self.k % 2 == 0:
            raise InvalidWitness(f"witness length {self.k} is not odd")
        acc = 0
        for x in self.points:
            if not f(x):
                raise InvalidWitness(f"point {to_binary(x, self.n)} not in support")
            acc ^= x
        if acc:
            raise InvalidWitness(f"points XOR to {to_binary(acc, self.n)}, not 0")

    def to_dict(self) -> dict:
        return {"k": self.k, "points": [to_binary(x, self.n) for x in self.points]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict, n: int) -> "OcfWitness":
        pts = tuple(from_binary(p) for p in data["points"])
        if data.get("k", len(pts)) != len(pts):
            raise InvalidWitness("k does not match the number of points")
        return cls(n, pts)


# ---------------------------------------------------------------------------
# Predicates


def is_ocf_spectral(f: BooleanFunction, spectrum: Spectrum | None = None) -> tuple[bool, int | None]:
    """OCF iff some coefficient equals minus the density.

    Returns ``(True, alpha)`` with the smallest such alpha, else ``(False, None)``.
    """
    spec = wht(f) if spectrum is None else spectrum
    hits = np.flatnonzero(spec.w == -spec.support_size)
    if hits.size:
        return True, int(hits[0])
    return False, None


def is_ocf_hyperplane(f: BooleanFunction) -> tuple[bool, int | None]:
    """OCF iff some nonzero alpha has alpha.x = 1 on the whole support.

    Filters candidate alphas support point by support point, so non-OCF
    inputs are usually rejected after a handful of points.
    """
    supp = f.support()
    if supp.size == 0:
        return True, (1 if f.n else 0)
    if f.table[0]:
        return False, None
    cand = np.arange(1, f.size, dtype=np.int64)
    for start in range(0, supp.size, 16):
        chunk = supp[start:start + 16]
        keep = np.all(parity(cand[:, None] & chunk[None, :]) == 1, axis=1)
        cand = cand[keep]
        if cand.size == 0:
            return False, None
    return True, int(cand[0])


# ---------------------------------------------------------------------------
# Distance


def exact_distance(f: BooleanFunction, spectrum: Spectrum | None = None) -> Fraction:
    """(|supp| + min_a W(a)) / 2^(n+1)."""
    spec = wht(f) if spectrum is None else spectrum
    return Fraction(spec.support_size + spec.min_value(), 1 << (f.n + 1))


@lru_cache(maxsize=8)
def _hyperplane_matrix(n: int) -> np.ndarray:
    # row a is the indicator of the hyperplane {x : a.x = 0}, a != 0
    idx = np.arange(1 << n, dtype=np.int64)
    m = (parity(idx[1:, None] & idx[None, :]) == 0).astype(np.float64)
    m.setflags(write=False)
    return m


def hyperplane_counts(f: BooleanFunction) -> np.ndarray:
    """Entry a-1 is |{x in supp : a.x = 0}| for each nonzero a."""
    if f.n <= _HYPERPLANE_MATRIX_MAX_DIM:
        return np.rint(_hyperplane_matrix(f.n) @ f.table.astype(np.float64)).astype(np.int64)
    supp = f.support()
    alphas = np.arange(1, f.size, dtype=np.int64)
    out = np.zeros(alphas.size, dtype=np.int64)
    step = max(1, (1 << 22) // max(1, alphas.size))
    for start in range(0, supp.size, step):
        chunk = supp[start:start + step]
        out += np.count_nonzero(parity(alphas[:, None] & chunk[None, :]) == 0, axis=1)
    return out


def exact_distance_combinatorial(f: BooleanFunction) -> Fraction:
    """Fewest support points to delete so that a proper hyperplane avoids the rest."""
    if f.n == 0:
        return Fraction(f.support_size, 1)
    counts = hyperplane_counts(f)
    return Fraction(int(counts.min()), f.size)


def linearity_distance(f: BooleanFunction, spectrum: Spectrum | None = None) -> Fraction:
    """min(rho, 1/2 + min_a f^(a))."""
    spec = wht(f) if spectrum is None else spectrum
    return min(spec.density, Fraction(1, 2) + spec.min_coefficient())


# ---------------------------------------------------------------------------
# Witnesses

_SMALL_BFS_WORK = 1 << 12


def shortest_odd_witness(f: BooleanFunction) -> OcfWitness | None:
    """Shortest odd closed walk from 0 in the Cayley graph of f.

    Breadth-first search over states (x, parity) with moves x -> x ^ s,
    s in supp(f).  The walk's steps form the witness; ``None`` means OCF.
    """
    if f.n > WITNESS_MAX_DIM:
        raise DimensionError(f"witness search limited to n <= {WITNESS_MAX_DIM}, got {f.n}")
    supp = f.support()
    if supp.size == 0:
        return None
    if f.table[0]:
        return OcfWitness(f.n, (0,))
    if f.size * supp.size <= _SMALL_BFS_WORK:
        steps = _bfs_small(f.size, [int(s) for s in supp])
    else:
        steps = _bfs_layers(f, supp)
    return None if steps is None else OcfWitness(f.n, tuple(steps))


def _bfs_small(size: int, supp: list[int]) -> list[int] | None:
    pred: dict[tuple[int, int], tuple[int, int]] = {(0, 0): (-1, -1)}
    queue = deque([(0, 0)])
    while queue:
        x, p = queue.popleft()
        for s in supp:
            state = (x ^ s, p ^ 1)
            if state in pred:
                continue
            pred[state] = (x, s)
            if state == (0, 1):
                steps = []
                while state != (0, 0):
                    prev, step = pred[state]
                    steps.append(step)
                    state = (prev, state[1] ^ 1)
                return steps[::-1]
            queue.append(state)
    return None


def _bfs_layers(f: BooleanFunction, supp: np.ndarray) -> list[int] | None:
    N = f.size
    f_hat = fwht(f.table)
    visited = np.zeros((2, N), dtype=bool)
    visited[0, 0] = True
    frontier = np.zeros(N, dtype=bool)
    frontier[0] = True
    layers = [frontier]
    level = 0
    while True:
        level += 1
        p = level & 1
        # XOR-convolution of frontier with supp: y reachable iff count > 0
        reach = fwht(fwht(frontier.astype(np.int64)) * f_hat) > 0
        new = reach & ~visited[p]
        if not new.any():
            return None
        visited[p] |= new
        layers.append(new)
        if p == 1 and new[0]:
            break
        frontier = new
    steps = []
    cur = 0
    for lvl in range(level, 0, -1):
        prev_ok = layers[lvl - 1][cur ^ supp]
        s = int(supp[np.argmax(prev_ok)])
        steps.append(s)
        cur ^= s
    assert cur == 0
    return steps[::-1]


def has_odd_witness_up_to_5(f: BooleanFunction) -> int | None:
    """Smallest odd k <= 5 admitting a witness, by exhaustive sumsets."""
    supp = f.support()
    if f.table[0]:
        return 1
    if supp.size == 0:
        return None
    # pair sums a ^ b over all ordered pairs of support points
    pairs = np.zeros(f.size, dtype=bool)
    pairs[(supp[:, None] ^ supp[None, :]).reshape(-1)] = True
    if np.any(pairs & f.table.astype(bool)):
        return 3
    pair_pts = np.flatnonzero(pairs)
    quads = np.zeros(f.size, dtype=bool)
    for start in range(0, pair_pts.size, 256):
        chunk = pair_pts[start:start + 256]
        quads[(chunk[:, None] ^ pair_pts[None, :]).reshape(-1)] = True
    if np.any(quads & f.table.astype(bool)):
        return 5
    return None


# ---------------------------------------------------------------------------
# Fourth moment

_CONVOLUTION_MAX_DIM = 16


def fourth_moment_spectral(spectrum: Spectrum) -> Fraction:
    w = spectrum.w
    if spectrum.n <= 12:
        total = int(np.sum(w ** 4))
    else:
        # w^2 fits in int64 for n <= 24; square again as Python ints
        total = sum(x * x for x in (w * w).tolist())
    return Fraction(total, 1 << (4 * spectrum.n))


def quadruple_count(f: BooleanFunction) -> int:
    """|{(x1,x2,x3) : f(x1) f(x2) f(x3) f(x1^x2^x3) = 1}|.

    Uses c(y) = |{(a, b) in supp^2 : a ^ b = y}|, so the count is sum_y c(y)^2.
    c is built by direct summation over support points, not via a transform.
    """
    if f.n > _CONVOLUTION_MAX_DIM:
        raise DimensionError(f"quadruple count limited to n <= {_CONVOLUTION_MAX_DIM}")
    c = xor_autocorrelation(f)
    return sum(int(v) * int(v) for v in c[c > 0].tolist())


def xor_autocorrelation(f: BooleanFunction) -> np.ndarray:
    """c(y) = sum_x f(x) f(x ^ y), by blocked direct summation.

    Points split as x = (high, low).  For each high part yh of y the products
    over all x come from one matrix product F^T F[. ^ yh]; summing its
    entries (xl, xl ^ yl) over xl gives c(yh, yl).
    """
    nl = f.n // 2
    nh = f.n - nl
    F = f.table.reshape(1 << nh, 1 << nl).astype(np.float32)
    hi = np.arange(1 << nh)
    lo = np.arange(1 << nl)
    cols = lo[:, None] ^ lo[None, :]          # [xl, yl] -> xl ^ yl
    out = np.empty((1 << nh, 1 << nl), dtype=np.int64)
    step = max(1, (1 << 22) // f.size)
    for start in range(0, 1 << nh, step):
        yh = hi[start:start + step]
        G = F[hi[None, :] ^ yh[:, None]]      # (c, 2^nh, 2^nl)
        M = np.matmul(F.T[None], G)           # (c, 2^nl, 2^nl), entries <= 2^nh
        picked = np.take_along_axis(M, np.broadcast_to(cols, M.shape), axis=2)
        out[start:start + yh.size] = np.rint(picked).astype(np.int64).sum(axis=1)
    return out.reshape(-1)


def fourth_moment(f: BooleanFunction, spectrum: Spectrum | None = None,
                  cross_check: bool | None = None) -> Fraction:
    """A = sum_a f^(a)^4, equal to Pr[x1, x2, x3, x1^x2^x3 all in supp].

    Both forms are computed and must agree; ``cross_check=False`` skips the
    counting form (it costs O(2^n |supp|)).
    """
    spec = wht(f) if spectrum is None else spectrum
    a = fourth_moment_spectral(spec)
    if cross_check is None:
        cross_check = f.n <= _CONVOLUTION_MAX_DIM
    if cross_check:
        b = Fraction(quadruple_count(f), 1 << (3 * f.n))
        if a != b:
            raise ArithmeticError(f"fourth moment mismatch: spectral {a} vs counting {b}")
    return a
