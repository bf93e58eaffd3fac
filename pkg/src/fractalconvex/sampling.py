"""Deterministic candidate generation and sharded first-witness search.

Every search runs three phases in a fixed order: a lattice sweep, a Halton
sweep, and a seeded PCG64 stream.  Candidates are cut into shards of fixed
size; the reported hit is always the one with the lowest (shard, row) rank,
so results do not depend on how many worker threads ran.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import InputError

SHARD_ROWS = 16384
THREADS_ENV = "FRACTAL_INEQ_THREADS"

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)


@dataclass(frozen=True)
class Budget:
    """Search budget.

    ``grid`` sets the eta lattice resolution and, for points, a lattice of
    roughly ``grid`` points per region.  ``samples`` is the size of each of
    the Halton and PRNG phases.
    """

    grid: int = 32
    samples: int = 4096
    seed: int = 0

    def __post_init__(self):
        for name in ("grid", "samples"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v <= 0:
                raise InputError(f"budget.{name} must be a positive integer, got {v!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise InputError(f"budget.seed must be an unsigned 64-bit integer, got {self.seed!r}")

    def to_json(self) -> dict:
        return {"grid": self.grid, "samples": self.samples, "seed": self.seed}


def halton(n: int, dims: int, start: int = 1) -> np.ndarray:
    """First ``n`` points of the Halton sequence (indices ``start..start+n-1``)."""
    if dims > len(_PRIMES):
        raise InputError(f"Halton sweep supports at most {len(_PRIMES)} dimensions")
    idx = np.arange(start, start + n, dtype=np.int64)
    out = np.empty((n, dims))
    for d in range(dims):
        base = _PRIMES[d]
        i = idx.copy()
        f = 1.0
        r = np.zeros(n)
        while np.any(i > 0):
            f /= base
            r += f * (i % base)
            i //= base
        out[:, d] = r
    return out


def prng_uniform(seed: int, n: int, dims: int) -> np.ndarray:
    """``n`` x ``dims`` uniforms from a PCG64 stream; identical on every platform."""
    return np.random.Generator(np.random.PCG64(seed)).random((n, dims))


def eta_grid(grid: int, include_endpoints: bool = True) -> np.ndarray:
    if include_endpoints:
        return np.linspace(0.0, 1.0, max(grid, 2))
    return np.linspace(0.0, 1.0, grid + 2)[1:-1]


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n <= 0:
        raise InputError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


@dataclass
class Phase:
    """A block of candidate rows.  ``arrays`` share their first dimension."""

    name: str
    arrays: dict

    @property
    def size(self) -> int:
        for v in self.arrays.values():
            return len(v)
        return 0

    def rows(self, lo: int, hi: int) -> dict:
        return {k: v[lo:hi] for k, v in self.arrays.items()}


@dataclass
class Hit:
    phase: str
    index: int
    shard: int
    row: dict
    violation: float
    detail: dict


def first_violation(phases: Sequence[Phase],
                    kernel: Callable[[dict], tuple[np.ndarray, dict]],
                    tol: float) -> tuple[Optional[Hit], int]:
    """Scan phases in order and return the lowest-ranked row with violation > tol.

    ``kernel`` maps a dict of row arrays to ``(violation, detail_arrays)``.
    Returns the hit (or None) and the number of rows checked.
    """
    shards = []
    for ph in phases:
        for lo in range(0, ph.size, SHARD_ROWS):
            shards.append((ph, lo, min(lo + SHARD_ROWS, ph.size)))

    def run(item):
        ph, lo, hi = item
        rows = ph.rows(lo, hi)
        viol, detail = kernel(rows)
        bad = np.nonzero(viol > tol)[0]
        if len(bad) == 0:
            return None
        j = int(bad[0])
        return Hit(ph.name, lo + j, -1, {k: v[j] for k, v in rows.items()}, float(viol[j]),
                   {k: v[j] for k, v in detail.items()})

    workers = thread_count()
    checked = 0
    if workers == 1:
        for rank, item in enumerate(shards):
            hit = run(item)
            checked += item[2] - item[1]
            if hit is not None:
                hit.shard = rank
                return hit, checked
        return None, checked
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for start in range(0, len(shards), workers):
            batch = shards[start:start + workers]
            results = list(pool.map(run, batch))
            for off, (item, hit) in enumerate(zip(batch, results)):
                checked += item[2] - item[1]
                if hit is not None:
                    hit.shard = start + off
                    return hit, checked
    return None, checked


def lattice_pairs(n_points: int) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs ``i < j`` over ``n_points`` lattice points."""
    if n_points < 2:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    i, j = np.triu_indices(n_points, k=1)
    return i.astype(np.int64), j.astype(np.int64)


def simplex_lattice(m: int, d: int) -> np.ndarray:
    """All barycentric vectors with entries in ``{0, 1/m, ..., 1}`` summing to 1."""
    rows = []
    for combo in itertools.product(range(m + 1), repeat=d):
        if sum(combo) <= m:
            rows.append(combo + (m - sum(combo),))
    return np.asarray(rows, dtype=float) / m


def per_axis(grid: int, d: int) -> int:
    return max(2, int(round(grid ** (1.0 / d))))
