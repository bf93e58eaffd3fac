"""Counterexample search for the convexity classes.

A check never proves membership.  It sweeps a lattice, a Halton sequence
and a seeded PCG64 stream of candidate pairs and either reports the first
violating candidate (lowest shard/row rank) or says nothing was found under
the stated budget.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .alpha import AlphaCtx
from .errors import InputError, NumericalError, WitnessError
from .functions import EMap, EvaluableFn, IdentityMap, Region, as_fn
from .sampling import (Budget, Phase, eta_grid, first_violation, halton,
                       lattice_pairs, prng_uniform)

DEFAULT_TOL = 1e-9
WITNESS_TOL = 1e-12

CLASSES = (
    "generalized-convex",
    "s-convex-1",
    "s-convex-2",
    "generalized-quasiconvex",
    "E-convex-fn",
    "gECF",
    "gE-quasiconvex",
    "E-convex-set",
    "E-image-subset",
)
_NEEDS_FN = {"generalized-convex", "s-convex-1", "s-convex-2", "generalized-quasiconvex",
             "E-convex-fn", "gECF", "gE-quasiconvex"}
_NEEDS_E = {"E-convex-fn", "gECF", "gE-quasiconvex", "E-convex-set", "E-image-subset"}
_NEEDS_S = {"s-convex-1", "s-convex-2"}


@dataclass(frozen=True, eq=False)
class ConvexityQuery:
    """What to check, where, and with how much effort.

    ``strict`` switches the E-quasiconvex class to the strict E-quasiconcave
    test ``g(blend) > min{...}``; strict modes exclude the eta endpoints.
    """

    cls: str
    region: Region
    alpha: float = 1.0
    fn: Optional[EvaluableFn] = None
    E: Optional[EMap] = None
    s: Optional[float] = None
    budget: Budget = field(default_factory=Budget)
    tolerance: float = DEFAULT_TOL
    strict: bool = False

    def __post_init__(self):
        if self.cls not in CLASSES:
            raise InputError(f"unknown class tag {self.cls!r}; expected one of {', '.join(CLASSES)}")
        AlphaCtx(self.alpha)
        if not (isinstance(self.tolerance, (int, float)) and math.isfinite(self.tolerance)
                and self.tolerance > 0):
            raise InputError(f"tolerance must be a finite positive number, got {self.tolerance!r}")
        if self.cls in _NEEDS_FN:
            if self.fn is None:
                raise InputError(f"class {self.cls} needs a function")
            object.__setattr__(self, "fn", as_fn(self.fn))
        if self.cls in _NEEDS_S:
            if self.s is None or not (0.0 < self.s <= 1.0):
                raise InputError(f"class {self.cls} needs s in (0, 1], got {self.s!r}")
        if self.cls in _NEEDS_E:
            E = self.E if self.E is not None else IdentityMap(self.region.dim)
            if E.dim != self.region.dim:
                raise InputError(f"E-map dimension {E.dim} does not match region dimension {self.region.dim}")
            object.__setattr__(self, "E", E)
        if self.fn is not None and self.fn.arity > self.region.dim:
            raise InputError(f"function reads {self.fn.arity} coordinates but the region has {self.region.dim}")
        if self.strict and self.cls != "gE-quasiconvex":
            raise InputError("strict mode applies only to gE-quasiconvex")


@dataclass
class Certificate:
    status: str
    witness: Optional[dict]
    budget: Budget
    violation: Optional[float]
    checked: int = 0

    @property
    def is_counterexample(self) -> bool:
        return self.status == "counterexample"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witness": self.witness,
            "budget": self.budget.to_json(),
            "seed": self.budget.seed,
            "violation": self.violation,
            "checked": self.checked,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)


# ---------------------------------------------------------------------------
# candidate generation


def _filter_inside(region: Region, arrays: dict, keys: Sequence[str]) -> dict:
    keep = np.ones(len(arrays[keys[0]]), dtype=bool)
    for k in keys:
        keep &= region.contains(arrays[k])
    return {k: v[keep] for k, v in arrays.items()}


def _from_unit_block(region: Region, U: np.ndarray, point_keys: Sequence[str], with_eta: bool) -> dict:
    ud = region.unit_dim
    out = {}
    for i, k in enumerate(point_keys):
        out[k] = region.from_unit(U[:, i * ud:(i + 1) * ud])
    if with_eta:
        out["eta"] = U[:, len(point_keys) * ud]
    return _filter_inside(region, out, point_keys)


def _retained_phase(retain, keys: Sequence[str]) -> Optional[Phase]:
    if not retain:
        return None
    arrays = {k: [] for k in keys}
    for w in retain:
        w = w.witness if isinstance(w, Certificate) else w
        if w is None:
            continue
        for k in keys:
            if k not in w:
                raise InputError(f"retained witness lacks field {k!r}")
            arrays[k].append(w[k])
    if not arrays[keys[0]]:
        return None
    return Phase("retained", {k: np.asarray(v, dtype=float) for k, v in arrays.items()})


def pair_phases(region: Region, budget: Budget, include_endpoints: bool = True,
                retain=None) -> list[Phase]:
    """Candidate pairs ``(y1, y2, eta)`` drawn from ``region``.

    Order: retained witnesses, lattice pairs times the eta grid, Halton,
    PCG64.  The Halton and PCG64 blocks are prefix-stable in ``samples``.
    """
    phases = []
    kept = _retained_phase(retain, ("y1", "y2", "eta"))
    if kept is not None:
        phases.append(kept)
    P = region.lattice(budget.grid)
    P = P[region.contains(P)]
    i, j = lattice_pairs(len(P))
    etas = eta_grid(budget.grid, include_endpoints)
    if len(i):
        phases.append(Phase("lattice", {
            "y1": np.repeat(P[i], len(etas), axis=0),
            "y2": np.repeat(P[j], len(etas), axis=0),
            "eta": np.tile(etas, len(i)),
        }))
    dims = 2 * region.unit_dim + 1
    phases.append(Phase("halton", _from_unit_block(region, halton(budget.samples, dims), ("y1", "y2"), True)))
    phases.append(Phase("prng", _from_unit_block(
        region, prng_uniform(budget.seed, budget.samples, dims), ("y1", "y2"), True)))
    if not include_endpoints:
        for ph in phases:
            e = ph.arrays["eta"]
            keep = (e > 0.0) & (e < 1.0)
            ph.arrays = {k: v[keep] for k, v in ph.arrays.items()}
    return phases


def point_phases(region: Region, budget: Budget, retain=None) -> list[Phase]:
    """Single candidate points ``y`` drawn from ``region``."""
    phases = []
    kept = _retained_phase(retain, ("y",))
    if kept is not None:
        phases.append(kept)
    P = region.lattice(budget.grid)
    phases.append(Phase("lattice", {"y": P[region.contains(P)]}))
    ud = region.unit_dim
    phases.append(Phase("halton", _from_unit_block(region, halton(budget.samples, ud), ("y",), False)))
    phases.append(Phase("prng", _from_unit_block(
        region, prng_uniform(budget.seed, budget.samples, ud), ("y",), False)))
    return phases


# ---------------------------------------------------------------------------
# kernels


def _finite(arr: np.ndarray, pts: np.ndarray, what: str):
    bad = ~np.isfinite(arr)
    if bad.any():
        p = tuple(float(v) for v in pts[np.nonzero(bad)[0][0]])
        raise NumericalError(f"non-finite {what} at point {p}")


def _weights(q: ConvexityQuery, eta: np.ndarray):
    """Point weights and value weights for each class."""
    a = q.alpha
    if q.cls == "s-convex-1":
        eta2 = (1.0 - eta ** q.s) ** (1.0 / q.s)
        return eta, eta2, eta ** (q.s * a), eta2 ** (q.s * a)
    if q.cls == "s-convex-2":
        return eta, 1.0 - eta, eta ** (q.s * a), (1.0 - eta) ** (q.s * a)
    if q.cls == "E-convex-fn":
        return eta, 1.0 - eta, eta, 1.0 - eta
    return eta, 1.0 - eta, eta ** a, (1.0 - eta) ** a


def make_kernel(q: ConvexityQuery) -> Callable[[dict], tuple[np.ndarray, dict]]:
    """Violation kernel for ``q``: positive entries are counterexamples."""
    cls = q.cls

    if cls == "E-image-subset":
        def image_kernel(rows):
            z = q.E.evaluate(rows["y"])
            gap = q.region.gap(z) + 0.0
            viol = np.where(q.region.contains(z), 0.0, 1.0)
            return viol, {"z": z, "gap": gap}
        return image_kernel

    if cls == "E-convex-set":
        def set_kernel(rows):
            eta = rows["eta"][:, None]
            z = eta * q.E.evaluate(rows["y1"]) + (1.0 - eta) * q.E.evaluate(rows["y2"])
            gap = q.region.gap(z) + 0.0
            viol = np.where(q.region.contains(z), 0.0, 1.0)
            return viol, {"z": z, "gap": gap}
        return set_kernel

    uses_E = cls in _NEEDS_E
    quasi = cls in ("generalized-quasiconvex", "gE-quasiconvex")

    def fn_kernel(rows):
        y1, y2, eta = rows["y1"], rows["y2"], rows["eta"]
        u1 = q.E.evaluate(y1) if uses_E else y1
        u2 = q.E.evaluate(y2) if uses_E else y2
        p1, p2, w1, w2 = _weights(q, eta)
        z = p1[:, None] * u1 + p2[:, None] * u2
        f1, f2, lhs = q.fn.evaluate(u1), q.fn.evaluate(u2), q.fn.evaluate(z)
        _finite(lhs, z, "function value")
        _finite(f1, u1, "function value")
        _finite(f2, u2, "function value")
        if quasi and q.strict:
            rhs = np.minimum(f1, f2)
            viol = rhs - lhs
            viol = np.where(np.all(u1 == u2, axis=1), -np.inf, viol)
        elif quasi:
            rhs = np.maximum(f1, f2)
            viol = lhs - rhs
        else:
            rhs = w1 * f1 + w2 * f2
            viol = lhs - rhs
        detail = {"lhs": lhs, "rhs": rhs}
        if cls == "s-convex-1":
            detail["eta2"] = p2
        return viol, detail
    return fn_kernel


def _input_keys(q: ConvexityQuery) -> tuple[str, ...]:
    return ("y",) if q.cls == "E-image-subset" else ("y1", "y2", "eta")


def _to_plain(v):
    arr = np.asarray(v)
    if arr.ndim == 0:
        return float(arr)
    return [float(t) for t in arr]


# ---------------------------------------------------------------------------
# checks


def run_query(q: ConvexityQuery, retain=None) -> Certificate:
    """Search for a counterexample to ``q``; ``retain`` lists earlier witnesses to re-check first."""
    if q.cls == "E-image-subset":
        phases = point_phases(q.region, q.budget, retain)
    else:
        phases = pair_phases(q.region, q.budget, include_endpoints=not q.strict, retain=retain)
    return run_search(phases, make_kernel(q), _input_keys(q), q.budget, q.tolerance)


def run_search(phases, kernel, input_keys: Sequence[str], budget: Budget, tol: float) -> Certificate:
    """Run a sharded search and package the first hit as a certificate."""
    hit, checked = first_violation(phases, kernel, tol)
    if hit is None:
        return Certificate("no-counterexample-found", None, budget, None, checked)
    witness = {"phase": hit.phase, "index": hit.index}
    for k in input_keys:
        witness[k] = _to_plain(hit.row[k])
    for k, v in hit.detail.items():
        witness[k] = _to_plain(v)
    witness["violation"] = hit.violation
    return Certificate("counterexample", witness, budget, hit.violation, checked)


def check_generalized_convex(q: ConvexityQuery, retain=None) -> Certificate:
    return run_query(replace(q, cls="generalized-convex"), retain)


def check_s_convex(q: ConvexityQuery, sense: int = 2, retain=None) -> Certificate:
    if sense not in (1, 2):
        raise InputError(f"s-convexity sense must be 1 or 2, got {sense!r}")
    return run_query(replace(q, cls=f"s-convex-{sense}"), retain)


def check_gECF(q: ConvexityQuery, retain=None) -> Certificate:
    return run_query(replace(q, cls="gECF"), retain)


def check_quasiconvex(q: ConvexityQuery, variant: str = "plain", strict: bool = False,
                      retain=None) -> Certificate:
    if variant == "plain":
        if strict:
            raise InputError("strict mode is defined only for the E variant")
        return run_query(replace(q, cls="generalized-quasiconvex", strict=False), retain)
    if variant == "E":
        return run_query(replace(q, cls="gE-quasiconvex", strict=strict), retain)
    raise InputError(f"quasiconvexity variant must be 'plain' or 'E', got {variant!r}")


def check_E_convex_set(region: Region, E: EMap | None = None, budget: Budget | None = None,
                       tol: float = DEFAULT_TOL, retain=None) -> Certificate:
    q = ConvexityQuery("E-convex-set", region, E=E, budget=budget or Budget(), tolerance=tol)
    return run_query(q, retain)


def check_E_image_subset(region: Region, E: EMap | None = None, budget: Budget | None = None,
                         tol: float = DEFAULT_TOL, retain=None) -> Certificate:
    q = ConvexityQuery("E-image-subset", region, E=E, budget=budget or Budget(), tolerance=tol)
    return run_query(q, retain)


def witness_violation(witness: dict, q: ConvexityQuery) -> float:
    """Recompute the violation at a stored witness.

    Raises WitnessError if a witness point is outside the query region.
    """
    rows = {}
    for k in _input_keys(q):
        if k not in witness:
            raise WitnessError(f"witness lacks field {k!r}")
        v = np.asarray(witness[k], dtype=float)
        rows[k] = v.reshape(1, -1) if k != "eta" else v.reshape(1)
    for k in _input_keys(q):
        if k == "eta":
            if not 0.0 <= rows[k][0] <= 1.0:
                raise WitnessError(f"witness eta={rows[k][0]!r} outside [0, 1]")
            continue
        if not q.region.contains(rows[k])[0]:
            raise WitnessError(f"witness point {k}={witness[k]!r} lies outside the region")
    viol, _ = make_kernel(q)(rows)
    return float(viol[0])


def verify_witness(c: Certificate, q: ConvexityQuery) -> bool:
    """True iff the stored witness still violates ``q`` by the stored amount (to 1e-12)."""
    if not c.is_counterexample or c.witness is None:
        raise InputError("only counterexample certificates carry a witness")
    v = witness_violation(c.witness, q)
    stored = c.witness.get("violation")
    if stored is None or not math.isfinite(v):
        return False
    return v > q.tolerance and abs(v - float(stored)) <= WITNESS_TOL
