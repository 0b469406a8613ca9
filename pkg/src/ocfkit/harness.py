"""Seed-derived independent trials, optionally spread over worker processes."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, TypeVar

from .core import mix

T = TypeVar("T")


def trial_seeds(seed: int, trials: int) -> list[int]:
    return [mix(seed, t) for t in range(trials)]


def run_trials(fn: Callable[[int], T], seed: int, trials: int, jobs: int = 1) -> list[T]:
    """[fn(mix(seed, t)) for t in range(trials)], in trial order.

    Results do not depend on ``jobs``; ``fn`` must be picklable when jobs > 1.
    """
    seeds = trial_seeds(seed, trials)
    if jobs <= 1 or trials < 2:
        return [fn(s) for s in seeds]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, seeds, chunksize=max(1, trials // (4 * jobs))))
