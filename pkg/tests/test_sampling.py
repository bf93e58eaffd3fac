from __future__ import annotations

import numpy as np
import pytest

from fractalconvex.errors import InputError
from fractalconvex.sampling import (Budget, Phase, eta_grid, first_violation, halton,
                                    lattice_pairs, prng_uniform, simplex_lattice, thread_count)


def test_budget_validation():
    with pytest.raises(InputError):
        Budget(grid=0)
    with pytest.raises(InputError):
        Budget(seed=-1)
    assert Budget().to_json() == {"grid": 32, "samples": 4096, "seed": 0}


def test_halton_first_points():
    H = halton(4, 2)
    assert np.allclose(H[:, 0], [0.5, 0.25, 0.75, 0.125])
    assert np.allclose(H[:, 1], [1 / 3, 2 / 3, 1 / 9, 4 / 9])


def test_prng_is_seeded():
    assert np.array_equal(prng_uniform(7, 10, 3), prng_uniform(7, 10, 3))
    assert not np.array_equal(prng_uniform(7, 10, 3), prng_uniform(8, 10, 3))


def test_eta_grid():
    assert eta_grid(4)[0] == 0.0 and eta_grid(4)[-1] == 1.0
    inner = eta_grid(4, include_endpoints=False)
    assert inner.min() > 0.0 and inner.max() < 1.0


def test_lattice_helpers():
    i, j = lattice_pairs(4)
    assert len(i) == 6 and np.all(i < j)
    S = simplex_lattice(2, 2)
    assert np.allclose(S.sum(axis=1), 1.0)
    assert len(S) == 6


def _phases():
    x = np.arange(40000, dtype=float)
    return [Phase("a", {"x": x[:20000]}), Phase("b", {"x": x[20000:]})]


def _kernel(rows):
    x = rows["x"]
    return np.where((x == 17000) | (x == 30000), 1.0, 0.0), {"x2": 2 * x}


def test_first_violation_lowest_rank(monkeypatch):
    hit, checked = first_violation(_phases(), _kernel, 0.5)
    assert hit.phase == "a" and hit.index == 17000 and hit.detail["x2"] == 34000
    monkeypatch.setenv("FRACTAL_INEQ_THREADS", "4")
    again, checked4 = first_violation(_phases(), _kernel, 0.5)
    assert (again.phase, again.index, again.violation) == (hit.phase, hit.index, hit.violation)
    assert checked4 == checked


def test_thread_count_env(monkeypatch):
    monkeypatch.delenv("FRACTAL_INEQ_THREADS", raising=False)
    assert thread_count() == 1
    monkeypatch.setenv("FRACTAL_INEQ_THREADS", "0")
    with pytest.raises(InputError):
        thread_count()
