"""E^alpha-convex sets, E^alpha-epigraphs and lower level sets.

Sets are membership predicates on points ``(x, r)`` where ``r`` stands for
the magnitude of ``r^alpha``.  A lifted region is itself a ``Region`` of
dimension ``n + 1`` (last coordinate is the height), so the pair sampler
from the convexity module applies unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .alpha import AlphaCtx
from .convexity import (DEFAULT_TOL, Certificate, pair_phases, point_phases,
                        run_search)
from .errors import DomainError, InputError
from .functions import (FACE_TOL, EMap, EvaluableFn, IdentityMap, Region,
                        as_fn, as_points, emap_from_json, fn_from_json,
                        region_from_json)
from .sampling import Budget, Phase, halton

IDEMPOTENT_TOL = 1e-12
DEFAULT_LEVELS = 16


@dataclass(frozen=True)
class EAlphaPoint:
    """A pair ``(x, r^alpha)`` stored as ``(x, r)``."""

    x: tuple[float, ...]
    r: float

    def __post_init__(self):
        x = tuple(float(v) for v in np.atleast_1d(np.asarray(self.x, dtype=float)))
        if not all(math.isfinite(v) for v in x) or not math.isfinite(self.r):
            raise InputError(f"E^alpha point must be finite, got ({x}, {self.r})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "r", float(self.r))


# ---------------------------------------------------------------------------
# height predicates


class Height:
    """Constraint on the height ``r`` given the base point ``x``."""

    def gap(self, X: np.ndarray, r: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def sample(self, X: np.ndarray, u: np.ndarray) -> np.ndarray:
        """Map ``u`` in [0, 1] to a height satisfying the constraint at ``X``."""
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class EpigraphLift(Height):
    """``g(E(x)) <= r``; sampled heights lie in ``[g(E(x)), g(E(x)) + span]``."""

    fn: EvaluableFn
    E: Optional[EMap] = None
    span: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "fn", as_fn(self.fn))
        if not (math.isfinite(self.span) and self.span > 0):
            raise InputError(f"epigraph sampling span must be positive, got {self.span!r}")

    def floor(self, X):
        return self.fn.evaluate(X if self.E is None else self.E.evaluate(X))

    def gap(self, X, r):
        return self.floor(X) - r

    def sample(self, X, u):
        return self.floor(X) + u * self.span

    def to_json(self):
        out = {"lift": "epigraph", "fn": self.fn.to_json(), "span": self.span}
        if self.E is not None:
            out["emap"] = self.E.to_json()
        return out


@dataclass(frozen=True, eq=False)
class HeightHalfspace(Height):
    """``normal . x + coef * r <= offset``."""

    normal: tuple[float, ...]
    coef: float
    offset: float
    span: float = 1.0

    def gap(self, X, r):
        return X @ np.asarray(self.normal, dtype=float) + self.coef * r - self.offset

    def sample(self, X, u):
        free = X @ np.asarray(self.normal, dtype=float)
        if self.coef > 0:
            return (self.offset - free) / self.coef - u * self.span
        if self.coef < 0:
            return (self.offset - free) / self.coef + u * self.span
        return (2.0 * u - 1.0) * self.span

    def to_json(self):
        return {"lift": "halfspace", "normal": list(self.normal), "coef": self.coef,
                "offset": self.offset, "span": self.span}


@dataclass(frozen=True, eq=False)
class HeightBox(Height):
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise InputError(f"height box needs finite lo < hi, got [{self.lo}, {self.hi}]")

    def gap(self, X, r):
        return np.maximum(self.lo - r, r - self.hi)

    def sample(self, X, u):
        return self.lo + u * (self.hi - self.lo)

    def to_json(self):
        return {"lift": "box", "height": [self.lo, self.hi]}


# ---------------------------------------------------------------------------
# lifted regions


@dataclass(frozen=True, eq=False)
class LiftedRegion(Region):
    """``{(x, r) : x in base, height constraint holds}`` as an ``(n+1)``-dimensional region."""

    base: Region
    height: Height

    def __post_init__(self):
        E = getattr(self.height, "E", None)
        if E is not None and E.dim != self.base.dim:
            raise InputError(f"E-map dimension {E.dim} does not match base dimension {self.base.dim}")
        if isinstance(self.height, HeightHalfspace) and len(self.height.normal) != self.base.dim:
            raise InputError("height half-space normal must match the base dimension")

    @property
    def dim(self):
        return self.base.dim + 1

    @property
    def unit_dim(self):
        return self.base.unit_dim + 1

    def gap(self, X):
        x, r = X[:, :-1], X[:, -1]
        return np.maximum(self.base.gap(x), self.height.gap(x, r))

    def contains(self, X):
        x, r = X[:, :-1], X[:, -1]
        inside = self.base.contains(x)
        out = np.zeros(len(X), dtype=bool)
        if inside.any():
            out[inside] = self.height.gap(x[inside], r[inside]) <= FACE_TOL
        return out

    def _lift(self, x, u):
        r = np.full(len(x), np.nan)
        inside = self.base.contains(x)
        if inside.any():
            r[inside] = self.height.sample(x[inside], u[inside])
        return np.column_stack([x, r])

    def from_unit(self, U):
        return self._lift(self.base.from_unit(U[:, : self.base.unit_dim]), U[:, self.base.unit_dim])

    def lattice(self, grid):
        x = self.base.lattice(grid)
        m = max(2, int(round(math.sqrt(grid))))
        us = np.linspace(0.0, 1.0, m)
        return self._lift(np.repeat(x, m, axis=0), np.tile(us, len(x)))

    def to_json(self):
        out = dict(self.base.to_json())
        out.update(self.height.to_json())
        return out


@dataclass(frozen=True, eq=False)
class LiftedIntersection(Region):
    """Intersection of lifted regions over a common base dimension.

    Candidates are drawn from the members in turn and kept only if every
    member contains them.
    """

    members: tuple[Region, ...]

    def __post_init__(self):
        if not self.members:
            raise InputError("intersection needs at least one member")
        if len({m.dim for m in self.members}) != 1:
            raise InputError("intersected regions must share one dimension")

    @property
    def dim(self):
        return self.members[0].dim

    @property
    def unit_dim(self):
        return max(m.unit_dim for m in self.members)

    def gap(self, X):
        return np.max(np.vstack([m.gap(X) for m in self.members]), axis=0)

    def contains(self, X):
        out = np.ones(len(X), dtype=bool)
        for m in self.members:
            out &= m.contains(X)
        return out

    def from_unit(self, U):
        out = np.empty((len(U), self.dim))
        k = len(self.members)
        for i, m in enumerate(self.members):
            rows = np.arange(i, len(U), k)
            if len(rows):
                out[rows] = m.from_unit(U[rows, : m.unit_dim])
        return out

    def lattice(self, grid):
        return np.vstack([m.lattice(grid) for m in self.members])

    def to_json(self):
        return {"type": "intersection", "members": [m.to_json() for m in self.members]}


_LIFT_KEYS = ("lift", "fn", "emap", "span", "normal", "coef", "offset", "height")


def lifted_from_json(obj, path: str = "$") -> LiftedRegion:
    if not isinstance(obj, dict):
        raise InputError(f"{path}: expected an object")
    lift = obj.get("lift")
    base = region_from_json({k: v for k, v in obj.items() if k not in _LIFT_KEYS}, path)
    span = float(obj.get("span", 1.0))
    if lift == "epigraph":
        E = emap_from_json(obj["emap"], f"{path}.emap") if "emap" in obj else None
        return LiftedRegion(base, EpigraphLift(fn_from_json(obj.get("fn"), f"{path}.fn"), E, span))
    if lift == "halfspace":
        try:
            return LiftedRegion(base, HeightHalfspace(tuple(float(v) for v in obj["normal"]),
                                                      float(obj["coef"]), float(obj["offset"]), span))
        except (KeyError, TypeError, ValueError):
            raise InputError(f"{path}: halfspace lift needs normal, coef and offset") from None
    if lift == "box":
        h = obj.get("height")
        if not (isinstance(h, list) and len(h) == 2):
            raise InputError(f"{path}.height: expected [lo, hi]")
        return LiftedRegion(base, HeightBox(float(h[0]), float(h[1])))
    raise InputError(f"{path}.lift: expected 'epigraph', 'halfspace' or 'box', got {lift!r}")


# ---------------------------------------------------------------------------
# checks


def _split(P: np.ndarray):
    return P[:, :-1], P[:, -1]


def check_E_alpha_convex_set(S: Region, E: EMap | None, alpha: float,
                             budget: Budget | None = None, tol: float = DEFAULT_TOL,
                             retain=None) -> Certificate:
    """Search for ``(x1,r1), (x2,r2)`` in ``S`` and ``eta`` with
    ``(eta E(x1) + (1-eta) E(x2), eta^a r1 + (1-eta)^a r2)`` outside ``S``.
    """
    a = AlphaCtx(alpha).alpha
    budget = budget or Budget()
    base_dim = S.dim - 1
    E = E or IdentityMap(base_dim)
    if E.dim != base_dim:
        raise InputError(f"E-map dimension {E.dim} does not match base dimension {base_dim}")

    def kernel(rows):
        x1, r1 = _split(rows["y1"])
        x2, r2 = _split(rows["y2"])
        eta = rows["eta"]
        x = eta[:, None] * E.evaluate(x1) + (1.0 - eta)[:, None] * E.evaluate(x2)
        r = eta ** a * r1 + (1.0 - eta) ** a * r2
        z = np.column_stack([x, r])
        viol = np.where(S.contains(z), 0.0, 1.0)
        return viol, {"z": z, "gap": S.gap(z) + 0.0}

    return run_search(pair_phases(S, budget, True, retain), kernel, ("y1", "y2", "eta"), budget, tol)


def check_intersection_closure(members: Sequence[Region], E: EMap | None, alpha: float,
                               budget: Budget | None = None, tol: float = DEFAULT_TOL) -> Certificate:
    """E^alpha-convexity of the intersection; vacuous when the members do not overlap."""
    members = tuple(members)
    S = members[0] if len(members) == 1 else LiftedIntersection(members)
    return check_E_alpha_convex_set(S, E, alpha, budget, tol)


def epigraph_membership(g, E: EMap | None, p: EAlphaPoint, region: Region) -> bool:
    """``(x, r)`` is in the E^alpha-epigraph iff ``g(E(x)) <= r``."""
    X = as_points(p.x, region.dim)
    if not region.contains(X)[0]:
        raise DomainError(f"point {p.x} lies outside the region", point=p.x)
    U = X if E is None else E.evaluate(X)
    return bool(as_fn(g).evaluate(U)[0] <= p.r)


def level_set_membership(g, E: EMap | None, x, r: float, mode: str = "composed") -> bool:
    """Membership in ``L_r(g o E)`` (composed) or ``L_r(g)`` on ``E(B)`` (restricted)."""
    X = as_points(x)
    if mode == "composed":
        U = X if E is None else E.evaluate(X)
    elif mode == "restricted":
        U = X
    else:
        raise InputError(f"level-set mode must be 'composed' or 'restricted', got {mode!r}")
    return bool(as_fn(g).evaluate(U)[0] <= r)


def default_levels(g, E: EMap | None, region: Region, budget: Budget, count: int = DEFAULT_LEVELS) -> np.ndarray:
    """Quantiles of ``g(E(x))`` over Halton samples of ``region``."""
    X = region.from_unit(halton(budget.samples, region.unit_dim))
    X = X[region.contains(X)]
    U = X if E is None else E.evaluate(X)
    vals = as_fn(g).evaluate(U)
    return np.quantile(vals, np.linspace(0.0, 1.0, count))


def check_level_sets_convex(g, E: EMap | None, region: Region, levels=None,
                            budget: Budget | None = None, tol: float = DEFAULT_TOL) -> Certificate:
    """Segment test on the restricted lower level sets ``{u in E(B) : g(u) <= r}``.

    Points of ``E(B)`` come from ``E`` applied to samples of ``region``;
    convexity of ``E(B)`` itself is the caller's premise.  The witness is
    the first violation over levels in order.
    """
    g = as_fn(g)
    budget = budget or Budget()
    E = E or IdentityMap(region.dim)
    levels = default_levels(g, E, region, budget) if levels is None else np.asarray(levels, dtype=float)
    base = pair_phases(region, budget, True)
    phases = []
    for li, r in enumerate(levels):
        for ph in base:
            arrays = dict(ph.arrays)
            arrays["level"] = np.full(ph.size, float(r))
            phases.append(Phase(f"level{li}:{ph.name}", arrays))

    def kernel(rows):
        u1, u2 = E.evaluate(rows["y1"]), E.evaluate(rows["y2"])
        eta, r = rows["eta"], rows["level"]
        w = eta[:, None] * u1 + (1.0 - eta)[:, None] * u2
        g1, g2, gw = g.evaluate(u1), g.evaluate(u2), g.evaluate(w)
        inside = (g1 <= r) & (g2 <= r)
        viol = np.where(inside, gw - r, -np.inf)
        return viol, {"u1": u1, "u2": u2, "blend": w, "g_blend": gw}

    return run_search(phases, kernel, ("y1", "y2", "eta", "level"), budget, tol)


def check_idempotent(E: EMap, region: Region, budget: Budget | None = None) -> Certificate:
    """Search for ``x`` with ``|E(E(x)) - E(x)| > 1e-12``."""
    budget = budget or Budget()

    def kernel(rows):
        once = E.evaluate(rows["y"])
        diff = np.max(np.abs(E.evaluate(once) - once), axis=1)
        return diff, {"E_y": once}

    return run_search(point_phases(region, budget), kernel, ("y",), budget, IDEMPOTENT_TOL)
