"""Boolean functions on F_2^n: truth tables, exact Walsh-Hadamard spectra,
GF(2) subspaces, instance generators and the text file format.

Point/index convention: bit j of an index is coordinate j of the point
(bit 0 least significant).  All spectral values are integers scaled by 2^n.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

MAX_DIM = 24
NAIVE_MAX_DIM = 14

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class DimensionError(ValueError):
    """Raised when n is outside the range an operation supports."""


class FormatError(ValueError):
    """Raised on malformed function files."""


# ---------------------------------------------------------------------------
# Seeding


def splitmix64(x: int) -> int:
    x = (x + _GOLDEN) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def mix(seed: int, t: int) -> int:
    """Seed for trial ``t`` of a run seeded with ``seed``.

    mix(seed, t) = splitmix64((seed + t * 0x9E3779B97F4A7C15) mod 2^64).
    """
    return splitmix64((seed + t * _GOLDEN) & _MASK64)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed & _MASK64))


# ---------------------------------------------------------------------------
# Bit helpers


def parity(a: np.ndarray | int) -> np.ndarray | int:
    """Parity of the popcount, elementwise."""
    if isinstance(a, (int, np.integer)):
        return int(a).bit_count() & 1
    return (np.bitwise_count(a) & 1).astype(np.int8)


def to_binary(x: int, n: int) -> str:
    """Coordinate j is the character j positions from the right."""
    return format(x, f"0{n}b") if n > 0 else ""


def from_binary(s: str) -> int:
    return int(s, 2) if s else 0


def _check_dim(n: int, limit: int = MAX_DIM) -> None:
    if not 0 <= n <= limit:
        raise DimensionError(f"dimension n={n} outside supported range 0..{limit}")


# ---------------------------------------------------------------------------
# Types


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    """Truth table of f: F_2^n -> {0,1}; ``table[i]`` is f at the point i."""

    n: int
    table: np.ndarray

    def __post_init__(self):
        _check_dim(self.n)
        table = np.ascontiguousarray(self.table, dtype=np.uint8)
        if table.shape != (1 << self.n,):
            raise ValueError(f"table must have length 2^{self.n}, got {table.shape}")
        if np.any(table > 1):
            raise ValueError("table entries must be 0 or 1")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> "BooleanFunction":
        table = np.zeros(1 << n, dtype=np.uint8)
        idx = np.fromiter(support, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= (1 << n)):
            raise ValueError("support point out of range")
        table[idx] = 1
        return cls(n, table)

    @property
    def size(self) -> int:
        return 1 << self.n

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.table)

    @property
    def support_size(self) -> int:
        return int(np.count_nonzero(self.table))

    @property
    def density(self) -> Fraction:
        return Fraction(self.support_size, self.size)

    def __repr__(self):
        return f"BooleanFunction(n={self.n}, |supp|={self.support_size})"


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Integer Walsh-Hadamard spectrum, ``w[a] = sum_x f(x) (-1)^(a.x)``."""

    n: int
    w: np.ndarray
    support_size: int

    def coefficient(self, alpha: int) -> Fraction:
        return Fraction(int(self.w[alpha]), 1 << self.n)

    @property
    def density(self) -> Fraction:
        return Fraction(self.support_size, 1 << self.n)

    def min_value(self) -> int:
        return int(self.w.min())

    def argmin(self) -> int:
        # np.argmin returns the first (smallest index) minimizer
        return int(np.argmin(self.w))

    def min_coefficient(self) -> Fraction:
        return Fraction(self.min_value(), 1 << self.n)

    def __eq__(self, other):
        if not isinstance(other, Spectrum):
            return NotImplemented
        return (self.n == other.n and self.support_size == other.support_size
                and np.array_equal(self.w, other.w))


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace of F_2^n given by a reduced row-echelon basis
    (pivot = highest set bit, basis sorted by ascending pivot).

    Element with index y (0 <= y < 2^dim) is the XOR of ``basis[j]`` over the
    set bits j of y; :meth:`elements` lists them in that order.
    """

    ambient: int
    basis: tuple[int, ...]
    raw_generators: tuple[int, ...] = field(default=())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return 1 << self.dim

    def elements(self) -> np.ndarray:
        elems = np.zeros(1, dtype=np.int64)
        for b in self.basis:
            elems = np.concatenate((elems, elems ^ b))
        return elems

    def coordinates(self, alpha: int) -> int:
        """Index of the restricted character chi_alpha|_H in the dual of H.

        Bit j of the result is alpha . basis[j]; two characters agree on H
        exactly when their coordinates agree.
        """
        out = 0
        for j, b in enumerate(self.basis):
            out |= parity(alpha & b) << j
        return out

    def __contains__(self, x: int) -> bool:
        for b in reversed(self.basis):
            if x ^ b < x:
                x ^= b
        return x == 0


# ---------------------------------------------------------------------------
# Transforms


def fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalized in-place-style butterfly along the last axis (int64)."""
    a = np.array(a, dtype=np.int64)
    lead = a.shape[:-1]
    size = a.shape[-1]
    h = 1
    while h < size:
        v = a.reshape(*lead, -1, 2, h)
        x = v[..., 0, :]
        y = v[..., 1, :]
        diff = x - y
        x += y
        y[...] = diff
        h *= 2
    return a.reshape(*lead, size)


def wht(f: BooleanFunction) -> Spectrum:
    return Spectrum(f.n, fwht(f.table), f.support_size)


@lru_cache(maxsize=12)
def character_matrix(n: int) -> np.ndarray:
    """Matrix of chi_a(x) = (-1)^(a.x) built pointwise from bit parities."""
    _check_dim(n, 10)
    idx = np.arange(1 << n, dtype=np.int64)
    m = 1 - 2 * parity(idx[:, None] & idx[None, :]).astype(np.int64)
    m.setflags(write=False)
    return m


def wht_naive(f: BooleanFunction) -> Spectrum:
    """Direct double sum; independent O(4^n) check on :func:`wht`."""
    if f.n > NAIVE_MAX_DIM:
        raise DimensionError(f"naive transform limited to n <= {NAIVE_MAX_DIM}, got {f.n}")
    vals = f.table.astype(np.int64)
    if f.n <= 10:
        return Spectrum(f.n, character_matrix(f.n) @ vals, f.support_size)
    idx = np.arange(f.size, dtype=np.int64)
    w = np.empty(f.size, dtype=np.int64)
    for start in range(0, f.size, 256):
        a = idx[start:start + 256]
        w[start:start + 256] = (1 - 2 * parity(a[:, None] & idx[None, :]).astype(np.int64)) @ vals
    return Spectrum(f.n, w, f.support_size)


# ---------------------------------------------------------------------------
# Subspaces


def span_of(generators: Sequence[int], n: int) -> Subspace:
    """Gaussian elimination over GF(2); pivots on the highest set bit."""
    gens = tuple(int(g) for g in generators)
    for g in gens:
        if g < 0 or g >> n:
            raise ValueError(f"generator {g} has more than {n} bits")
    rows: list[int] = []
    for g in gens:
        for r in rows:
            g = min(g, g ^ r)
        if g:
            rows.append(g)
    # full reduction: clear each pivot column from all other rows
    rows.sort(reverse=True)
    for i, r in enumerate(rows):
        top = 1 << (r.bit_length() - 1)
        for j in range(len(rows)):
            if j != i and rows[j] & top:
                rows[j] ^= r
    # ascending pivots: the standard basis comes back as e_0, e_1, ...
    rows.sort()
    return Subspace(n, tuple(rows), gens)


def restrict(f: BooleanFunction, H: Subspace) -> BooleanFunction:
    """g(y) = f(sum_j y_j basis_j) on F_2^dim."""
    if H.ambient != f.n:
        raise ValueError(f"subspace ambient dimension {H.ambient} != n={f.n}")
    return BooleanFunction(H.dim, f.table[H.elements()])


# ---------------------------------------------------------------------------
# Generators

GENERATOR_KINDS = (
    "zero",
    "allOnes",
    "hyperplaneSide",
    "randomDensity",
    "allNonzero",
    "hyperplaneMinusNoise",
    "hyperplaneSubset",
)


def generate(kind: str, n: int, seed: int = 0, **params) -> BooleanFunction:
    """Build an instance of a named family.

    Kinds and parameters::

        zero, allOnes, allNonzero
        hyperplaneSide(alpha, side=1)      f(x) = [alpha.x == side]
        randomDensity(p=0.5)               iid Bernoulli(p) values
        hyperplaneMinusNoise(alpha, delta) side-1 hyperplane, plus each point of
                                           the side-0 half added with prob. delta
        hyperplaneSubset(alpha, p=0.5)     random subset of the side-1 half (OCF)
    """
    _check_dim(n)
    N = 1 << n
    idx = np.arange(N, dtype=np.int64)
    rng = make_rng(seed)
    if kind == "zero":
        table = np.zeros(N, dtype=np.uint8)
    elif kind == "allOnes":
        table = np.ones(N, dtype=np.uint8)
    elif kind == "allNonzero":
        table = (idx != 0).astype(np.uint8)
    elif kind == "randomDensity":
        p = float(params.get("p", 0.5))
        table = (rng.random(N) < p).astype(np.uint8)
    elif kind in ("hyperplaneSide", "hyperplaneMinusNoise", "hyperplaneSubset"):
        alpha = int(params.get("alpha", 1))
        if alpha == 0 or alpha >> n:
            raise ValueError(f"alpha must be a nonzero {n}-bit word, got {alpha}")
        side = parity(idx & alpha).astype(np.uint8)
        if kind == "hyperplaneSide":
            s = int(params.get("side", 1))
            table = (side == s).astype(np.uint8)
        elif kind == "hyperplaneSubset":
            p = float(params.get("p", 0.5))
            table = (side & (rng.random(N) < p)).astype(np.uint8)
        else:
            delta = float(params.get("delta", 0.1))
            table = (side | (rng.random(N) < delta)).astype(np.uint8)
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    return BooleanFunction(n, table)


def parse_gen_spec(spec: str) -> tuple[str, int, dict]:
    """Parse ``kind:n=8,alpha=3,p=0.5`` into (kind, n, params).

    ``alpha`` accepts a decimal integer or a binary string prefixed ``0b``.
    """
    kind, _, rest = spec.partition(":")
    params: dict = {}
    for item in filter(None, rest.split(",")):
        key, sep, val = item.partition("=")
        if not sep:
            raise ValueError(f"bad generator parameter {item!r}")
        key = key.strip()
        val = val.strip()
        if key in ("n", "alpha", "side"):
            params[key] = int(val, 0)
        else:
            params[key] = float(val)
    if "n" not in params:
        raise ValueError("generator spec needs n=<int>")
    n = params.pop("n")
    return kind, n, params


# ---------------------------------------------------------------------------
# File format

_HEADER = re.compile(r"^\s*n\s*=\s*(\d+)\s*$")


def serialize(f: BooleanFunction) -> str:
    """Dense form: hex nibbles, little-endian bit order within the string.

    Nibble k holds table[4k..4k+3]; within a nibble bit b is table[4k+b], and
    nibble k is hex character k from the left.
    """
    bits = np.zeros(-(-f.size // 4) * 4, dtype=np.uint8)
    bits[: f.size] = f.table
    nibbles = bits.reshape(-1, 4) @ np.array([1, 2, 4, 8], dtype=np.int64)
    payload = "".join("0123456789abcdef"[v] for v in nibbles)
    return f"n={f.n}\n{payload}\n"


def serialize_sparse(f: BooleanFunction) -> str:
    pts = "".join(" " + to_binary(int(x), f.n) for x in f.support())
    return f"n={f.n}\nsupport:{pts}\n"


def parse(text: str) -> BooleanFunction:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty function file")
    m = _HEADER.match(lines[0])
    if not m:
        raise FormatError(f"malformed header {lines[0]!r}; expected 'n=<int>'")
    n = int(m.group(1))
    try:
        _check_dim(n)
    except DimensionError as exc:
        raise FormatError(str(exc)) from None
    body = " ".join(ln.strip() for ln in lines[1:])
    if body.startswith("support:"):
        words = body[len("support:"):].split()
        pts = []
        for w in words:
            if len(w) != n or set(w) - {"0", "1"}:
                raise FormatError(f"support point {w!r} is not an {n}-character binary string")
            pts.append(from_binary(w))
        return BooleanFunction.from_support(n, pts)
    payload = body.replace(" ", "")
    nchars = -(-(1 << n) // 4)
    if len(payload) != nchars:
        raise FormatError(f"expected {nchars} hex digits for n={n}, got {len(payload)}")
    try:
        nibbles = np.array([int(c, 16) for c in payload], dtype=np.uint8)
    except ValueError:
        raise FormatError("payload is not hexadecimal") from None
    bits = ((nibbles[:, None] >> np.arange(4, dtype=np.uint8)) & 1).reshape(-1)
    if np.any(bits[1 << n:]):
        raise FormatError("padding bits beyond 2^n must be zero")
    return BooleanFunction(n, bits[: 1 << n])


def load(path) -> BooleanFunction:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def save(f: BooleanFunction, path, sparse: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_sparse(f) if sparse else serialize(f))


# ---------------------------------------------------------------------------
# Query accounting


class CountingOracle:
    """Query access to f that records distinct probed points.

    Repeated probes of the same point are answered from the memo and are
    not counted again.
    """

    def __init__(self, f: BooleanFunction):
        self._f = f
        self.n = f.n
        self._seen = np.zeros(f.size, dtype=bool)
        self.probes = 0

    def query(self, x: int) -> int:
        self._seen[x] = True
        self.probes += 1
        return int(self._f.table[x])

    def query_many(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        self._seen[xs.reshape(-1)] = True
        self.probes += xs.size
        return self._f.table[xs]

    @property
    def queries(self) -> int:
        return int(np.count_nonzero(self._seen))

    def queried_points(self) -> np.ndarray:
        return np.flatnonzero(self._seen)


def random_subspace(n: int, k: int, seed: int) -> Subspace:
    """Span of k uniform (with replacement) vectors of F_2^n."""
    gens = make_rng(seed).integers(0, 1 << n, size=k, dtype=np.int64)
    return span_of(gens.tolist(), n)
