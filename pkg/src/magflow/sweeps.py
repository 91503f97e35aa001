"""
Seeded sweeps over initial conditions. Each sweep index gets its own generator, seeded by a
splitmix64 mix of (seed, index), so results depend on the index only and never on scheduling.
"""
from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

import numpy as np
from tqdm import tqdm

from magflow import ENV_THREADS
from magflow.config.base import SystemConfig
from magflow.logger import log
from magflow.surfaces.base import PhaseState

T = TypeVar("T")
R = TypeVar("R")

MASK64: int = (1 << 64) - 1
DEFAULT_MAX_THREADS: int = 8


def splitmix64(x: int) -> int:
    """One round of the splitmix64 output function on a 64-bit state."""
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def sweep_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for sweep entry `index`, reproducible across platforms."""
    return np.random.default_rng(splitmix64(splitmix64(seed & MASK64) ^ (index & MASK64)))


def sweep_states(system: SystemConfig, seed: int, count: int) -> list[PhaseState]:
    """`count` random admissible initial states of a system, by index."""
    return [system.random_state(sweep_rng(seed, k)) for k in range(count)]


def thread_count() -> int:
    """Worker threads for sweeps: MAGFLOW_THREADS if set to a positive integer, else min(8, cpu count)."""
    default = min(DEFAULT_MAX_THREADS, os.cpu_count() or 1)
    raw = os.getenv(ENV_THREADS)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        warnings.warn(f"Ignoring {ENV_THREADS}={raw!r}; expected a positive integer.", UserWarning)
        return default
    return value


def run_sweep(
    func: Callable[[T], R], items: Sequence[T], desc: str = "Sweeping", progress: bool = True
) -> list[R]:
    """
    Applies func to every item concurrently; results come back in item order.
    The first exception raised by func is re-raised.
    """
    if not items:
        return []
    workers = min(thread_count(), len(items))
    log.debug(f"{desc}: {len(items)} item(s) on {workers} thread(s).")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(func, item) for item in items]
        for future in tqdm(futures, desc=desc, total=len(futures), disable=not progress, leave=False):
            future.exception()
    return [future.result() for future in futures]
