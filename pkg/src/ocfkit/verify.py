"""Cross-checks between independent exact routines.

Each ``check_*`` function returns a list of human-readable violations (empty
when everything agrees); sweeps aggregate them over function families.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from .cayley import edge_count_bound, exact_bipartiteness_distance, verify_all_eigenpairs, verify_eigenpair
from .core import BooleanFunction, make_rng, mix, wht, wht_naive
from .ocf import (
    exact_distance,
    exact_distance_combinatorial,
    has_odd_witness_up_to_5,
    is_ocf_hyperplane,
    is_ocf_spectral,
    shortest_odd_witness,
)


def all_functions(n: int) -> Iterator[BooleanFunction]:
    """Every f on F_2^n, in order of the integer whose bit i is f(i)."""
    N = 1 << n
    shifts = np.arange(N, dtype=np.int64)
    for start in range(0, 1 << N, 4096):
        codes = np.arange(start, min(start + 4096, 1 << N), dtype=np.int64)
        tables = ((codes[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
        for row in tables:
            yield BooleanFunction(n, row)


def random_functions(n: int, count: int, seed: int) -> Iterator[BooleanFunction]:
    """Random functions with densities spread over (0, 1), so that OCF and
    near-OCF inputs are not vanishingly rare."""
    for i in range(count):
        rng = make_rng(mix(seed, i))
        p = rng.choice([rng.random(), rng.random() * 0.2, 0.5])
        table = (rng.random(1 << n) < p).astype(np.uint8)
        if n and rng.random() < 0.25:
            # push toward OCF: clear the support on one side of a random hyperplane
            alpha = int(rng.integers(1, 1 << n))
            side = np.bitwise_count(np.arange(1 << n) & alpha) & 1
            table &= side.astype(np.uint8)
        yield BooleanFunction(n, table)


def _fmt(f: BooleanFunction) -> str:
    return f"n={f.n} supp={f.support().tolist()[:16]}"


def check_characterization(f: BooleanFunction) -> list[str]:
    spec = wht(f)
    errs = []
    spectral, a1 = is_ocf_spectral(f, spec)
    hyper, a2 = is_ocf_hyperplane(f)
    witness = shortest_odd_witness(f)
    if not (spectral == hyper == (witness is None)):
        errs.append(f"OCF predicates disagree ({spectral}, {hyper}, witness={witness}) on {_fmt(f)}")
    if spectral and hyper and f.support_size and a1 != a2:
        errs.append(f"certificates differ ({a1} vs {a2}) on {_fmt(f)}")
    if witness is not None and not witness.check(f):
        errs.append(f"invalid witness {witness} on {_fmt(f)}")
    d1 = exact_distance(f, spec)
    d2 = exact_distance_combinatorial(f)
    d3 = (spec.density + spec.min_coefficient()) / 2
    if not (d1 == d2 == d3):
        errs.append(f"distances disagree ({d1}, {d2}, {d3}) on {_fmt(f)}")
    if (d1 == 0) != spectral:
        errs.append(f"distance {d1} inconsistent with OCF={spectral} on {_fmt(f)}")
    return errs


def check_transform(f: BooleanFunction) -> list[str]:
    return [] if wht(f) == wht_naive(f) else [f"wht != naive on {_fmt(f)}"]


def check_eigenpairs(f: BooleanFunction) -> list[str]:
    ok = verify_all_eigenpairs(f) if f.n <= 10 else all(
        verify_eigenpair(f, a) for a in range(f.size))
    return [] if ok else [f"eigenpair check failed on {_fmt(f)}"]


def check_factor_two(f: BooleanFunction) -> list[str]:
    b = exact_bipartiteness_distance(f)
    d = exact_distance(f)
    return [] if b == d / 2 else [f"bipartiteness {b} != distance/2 = {d / 2} on {_fmt(f)}"]


def check_edge_bound(f: BooleanFunction, U) -> list[str]:
    r = edge_count_bound(f, U)
    return [] if r.holds else [f"e(U) = {r.exact} < bound {r.lower_bound} on {_fmt(f)}"]


def check_witness_minimality(f: BooleanFunction) -> list[str]:
    w = shortest_odd_witness(f)
    small = has_odd_witness_up_to_5(f)
    if w is None:
        return [] if small is None else [f"no witness but k={small} exists on {_fmt(f)}"]
    errs = [] if w.check(f) else [f"invalid witness on {_fmt(f)}"]
    if small is not None and w.k != small:
        errs.append(f"witness length {w.k} but k={small} exists on {_fmt(f)}")
    if small is None and w.k <= 5:
        errs.append(f"witness length {w.k} missed by exhaustive search on {_fmt(f)}")
    return errs


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"name": self.name, "checked": self.checked, "ok": self.ok,
                "violations": self.violations[:20]}


def sweep(name: str, functions, check: Callable[[BooleanFunction], list[str]]) -> SweepResult:
    res = SweepResult(name)
    for f in functions:
        res.checked += 1
        res.violations.extend(check(f))
    return res


def full_suite(n_max: int = 4, samples: int = 200, seed: int = 0) -> list[SweepResult]:
    """Exhaustive checks for n <= min(n_max, 4), random samples above."""
    out = []
    exhaustive = range(1, min(n_max, 4) + 1)
    for n in exhaustive:
        out.append(sweep(f"characterization n={n} (all)", all_functions(n), check_characterization))
    for n in range(5, n_max + 1):
        out.append(sweep(f"characterization n={n} (random)", random_functions(n, samples, mix(seed, n)),
                         check_characterization))
    for n in range(1, min(n_max, 10) + 1):
        out.append(sweep(f"transform n={n}", random_functions(n, samples, mix(seed, 100 + n)),
                         check_transform))
        out.append(sweep(f"eigenpairs n={n}", random_functions(n, min(samples, 50), mix(seed, 200 + n)),
                         check_eigenpairs))
    for n in range(1, min(n_max, 3) + 1):
        out.append(sweep(f"factor-2 n={n} (all)", all_functions(n), check_factor_two))
    if n_max >= 4:
        out.append(sweep("factor-2 n=4 (random)", random_functions(4, samples, mix(seed, 300)),
                         check_factor_two))
    for n in range(2, min(n_max, 6) + 1):
        out.append(sweep(f"witness minimality n={n}", random_functions(n, samples, mix(seed, 400 + n)),
                         check_witness_minimality))
    return out
