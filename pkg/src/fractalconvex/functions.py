"""Evaluation-only functions, E-maps and region predicates.

Everything here evaluates on batches: a point set is an ``(N, d)`` float
array and a function returns an ``(N,)`` array.  The scalar helpers
``eval_fn``, ``apply_emap`` and ``region_contains`` wrap the batch path so
that witnesses re-evaluate through exactly the same arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, InputError
from .fpoly import FractalPoly
from .sampling import halton, per_axis, simplex_lattice

FACE_TOL = 1e-12
TOTALITY_SAMPLES = 10_000


def as_points(x, dim: int | None = None) -> np.ndarray:
    """Coerce a scalar, a point or a batch of points to an ``(N, d)`` array."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(1, -1)
    elif arr.ndim != 2:
        raise InputError(f"expected a point or a batch of points, got shape {arr.shape}")
    if dim is not None and arr.shape[1] != dim:
        raise InputError(f"dimension mismatch: expected {dim}, got {arr.shape[1]}")
    return arr


# ---------------------------------------------------------------------------
# functions


class EvaluableFn:
    """Base class; subclasses implement ``evaluate`` on ``(N, d)`` batches."""

    arity: int = 1

    def evaluate(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, x) -> float:
        return float(self.evaluate(as_points(x))[0])

    def to_json(self) -> dict:
        raise NotImplementedError

    def _check_arity(self, X: np.ndarray):
        if X.shape[1] < self.arity:
            raise InputError(f"function of arity {self.arity} applied to {X.shape[1]}-dimensional points")


@dataclass(frozen=True, eq=False)
class PolyFn(EvaluableFn):
    """A fractal polynomial applied to coordinate ``var``."""

    poly: FractalPoly
    var: int = 0
    even_power: bool = False

    @property
    def arity(self) -> int:
        return self.var + 1

    def evaluate(self, X):
        self._check_arity(X)
        t = X[:, self.var]
        try:
            return self.poly(t, even_power=self.even_power)
        except DomainError as exc:
            row = int(np.nonzero(t < 0)[0][0])
            p = tuple(float(v) for v in X[row])
            raise DomainError(f"{exc} at point {p}", point=p) from None

    def to_json(self):
        out = self.poly.to_json()
        if self.var:
            out["var"] = self.var
        if self.even_power:
            out["even_power"] = True
        return out


@dataclass(frozen=True, eq=False)
class Product(EvaluableFn):
    """Pointwise product, e.g. ``x1**a * x2**(3a)``."""

    factors: tuple[EvaluableFn, ...]

    @property
    def arity(self) -> int:
        return max(f.arity for f in self.factors)

    def evaluate(self, X):
        out = np.ones(len(X))
        for f in self.factors:
            out = out * f.evaluate(X)
        return out

    def to_json(self):
        return {"type": "product", "fns": [f.to_json() for f in self.factors]}


_OPS = {
    "<": np.less,
    "<=": np.less_equal,
    ">": np.greater,
    ">=": np.greater_equal,
}


@dataclass(frozen=True)
class Guard:
    """Threshold predicate ``x[var] op c``."""

    var: int
    op: str
    c: float

    def __post_init__(self):
        if self.op not in _OPS:
            raise InputError(f"guard op must be one of {sorted(_OPS)}, got {self.op!r}")
        if self.var < 0:
            raise InputError(f"guard var must be >= 0, got {self.var}")

    def mask(self, X: np.ndarray) -> np.ndarray:
        return _OPS[self.op](X[:, self.var], self.c)

    def to_json(self):
        return {"var": self.var, "op": self.op, "c": self.c}


@dataclass(frozen=True, eq=False)
class Piecewise(EvaluableFn):
    """First matching guard wins.  A point matching no guard is a domain error.

    If ``domain`` is given, totality is checked at construction on 10^4
    Halton points of it.
    """

    pieces: tuple[tuple[Guard, EvaluableFn], ...]
    domain: "Box | None" = None

    def __post_init__(self):
        if not self.pieces:
            raise InputError("piecewise function needs at least one piece")
        if self.domain is not None:
            X = self.domain.from_unit(halton(TOTALITY_SAMPLES, self.domain.unit_dim))
            X = np.vstack([X, self.domain.lattice(64)])
            covered = np.zeros(len(X), dtype=bool)
            for g, _ in self.pieces:
                covered |= g.mask(X)
            if not covered.all():
                p = tuple(float(v) for v in X[np.nonzero(~covered)[0][0]])
                raise InputError(f"piecewise guards do not cover the domain, e.g. {p}")

    @property
    def arity(self) -> int:
        return max(max(g.var + 1, f.arity) for g, f in self.pieces)

    def evaluate(self, X):
        self._check_arity(X)
        out = np.full(len(X), np.nan)
        todo = np.ones(len(X), dtype=bool)
        for g, f in self.pieces:
            m = g.mask(X) & todo
            if m.any():
                out[m] = f.evaluate(X[m])
                todo &= ~m
        if todo.any():
            p = tuple(float(v) for v in X[np.nonzero(todo)[0][0]])
            raise DomainError(f"no piecewise guard matches point {p}", point=p)
        return out

    def to_json(self):
        return {"type": "piecewise",
                "pieces": [{"if": g.to_json(), "fn": f.to_json()} for g, f in self.pieces]}


@dataclass(frozen=True, eq=False)
class AffinePre(EvaluableFn):
    """``fn(scale*x + offset)``, applied to every coordinate."""

    fn: EvaluableFn
    scale: float
    offset: float = 0.0

    @property
    def arity(self) -> int:
        return self.fn.arity

    def evaluate(self, X):
        return self.fn.evaluate(self.scale * X + self.offset)

    def to_json(self):
        return {"type": "affine-pre", "fn": self.fn.to_json(), "scale": self.scale, "offset": self.offset}


@dataclass(frozen=True, eq=False)
class WeightedSum(EvaluableFn):
    terms: tuple[tuple[float, EvaluableFn], ...]

    def __post_init__(self):
        for i, (w, _) in enumerate(self.terms):
            if not (math.isfinite(w) and w >= 0):
                raise InputError(f"weighted-sum weight #{i} must be finite and >= 0, got {w!r}")

    @property
    def arity(self) -> int:
        return max(f.arity for _, f in self.terms)

    def evaluate(self, X):
        out = np.zeros(len(X))
        for w, f in self.terms:
            out = out + w * f.evaluate(X)
        return out

    def to_json(self):
        return {"type": "weighted-sum", "terms": [{"w": w, "fn": f.to_json()} for w, f in self.terms]}


@dataclass(frozen=True, eq=False)
class SupFamily(EvaluableFn):
    members: tuple[EvaluableFn, ...]

    def __post_init__(self):
        if not self.members:
            raise InputError("sup family needs at least one member")

    @property
    def arity(self) -> int:
        return max(f.arity for f in self.members)

    def evaluate(self, X):
        return np.max(np.vstack([f.evaluate(X) for f in self.members]), axis=0)

    def to_json(self):
        return {"type": "sup", "fns": [f.to_json() for f in self.members]}


@dataclass(frozen=True, eq=False)
class Compose(EvaluableFn):
    """``outer(inner(x))`` with a one-variable ``outer``."""

    outer: EvaluableFn
    inner: EvaluableFn

    def __post_init__(self):
        if self.outer.arity != 1:
            raise InputError("outer function of a composition must take one variable")

    @property
    def arity(self) -> int:
        return self.inner.arity

    def evaluate(self, X):
        return self.outer.evaluate(self.inner.evaluate(X)[:, None])

    def to_json(self):
        return {"type": "compose", "outer": self.outer.to_json(), "inner": self.inner.to_json()}


def as_fn(f) -> EvaluableFn:
    if isinstance(f, EvaluableFn):
        return f
    if isinstance(f, FractalPoly):
        return PolyFn(f)
    raise InputError(f"not an evaluable function: {f!r}")


def eval_fn(f, x) -> float:
    """Evaluate ``f`` at a single point."""
    return as_fn(f)(x)


# ---------------------------------------------------------------------------
# E-maps


class EMap:
    dim: int = 1

    def evaluate(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


def _check_emap_dim(n: int):
    if n not in (1, 2, 3):
        raise InputError(f"E-maps are supported for dimension 1..3, got {n}")


@dataclass(frozen=True, eq=False)
class IdentityMap(EMap):
    dim: int = 1

    def __post_init__(self):
        _check_emap_dim(self.dim)

    def evaluate(self, X):
        return X

    def to_json(self):
        return {"type": "emap-identity", "dim": self.dim}


@dataclass(frozen=True, eq=False)
class AffineMap(EMap):
    """``E(x) = A x + b``."""

    matrix: tuple[tuple[float, ...], ...]
    offset: tuple[float, ...]

    def __post_init__(self):
        A = np.asarray(self.matrix, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] != len(self.offset):
            raise InputError("affine E-map needs a square matrix and a matching offset")
        _check_emap_dim(A.shape[0])

    @property
    def dim(self) -> int:
        return len(self.offset)

    def evaluate(self, X):
        return X @ np.asarray(self.matrix, dtype=float).T + np.asarray(self.offset, dtype=float)

    def to_json(self):
        return {"type": "emap-affine", "matrix": [list(r) for r in self.matrix], "offset": list(self.offset)}


@dataclass(frozen=True, eq=False)
class ComponentwiseMap(EMap):
    """One evaluable function per output coordinate."""

    fns: tuple[EvaluableFn, ...]

    def __post_init__(self):
        _check_emap_dim(len(self.fns))
        for i, f in enumerate(self.fns):
            if f.arity > len(self.fns):
                raise InputError(f"E-map component {i} reads coordinate beyond dimension {len(self.fns)}")

    @property
    def dim(self) -> int:
        return len(self.fns)

    def evaluate(self, X):
        return np.column_stack([f.evaluate(X) for f in self.fns])

    def to_json(self):
        return {"type": "emap-componentwise", "fns": [f.to_json() for f in self.fns]}


def apply_emap(E: EMap, x) -> tuple:
    X = as_points(x)
    if X.shape[1] != E.dim:
        raise InputError(f"E-map of dimension {E.dim} applied to a {X.shape[1]}-dimensional point")
    return tuple(float(v) for v in E.evaluate(X)[0])


# ---------------------------------------------------------------------------
# regions


class Region:
    """Membership predicate plus a map from the unit cube for sampling."""

    dim: int
    unit_dim: int

    def contains(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def gap(self, X: np.ndarray) -> np.ndarray:
        """How far outside each point is (<= 0 inside, up to face tolerance)."""
        raise NotImplementedError

    def from_unit(self, U: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def lattice(self, grid: int) -> np.ndarray:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class Box(Region):
    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi) or not self.lo:
            raise InputError("box lo/hi must be non-empty and of equal length")
        for a, b in zip(self.lo, self.hi):
            if not (math.isfinite(a) and math.isfinite(b) and a < b):
                raise InputError(f"box needs finite lo < hi per axis, got {self.lo} / {self.hi}")

    @property
    def dim(self):
        return len(self.lo)

    @property
    def unit_dim(self):
        return len(self.lo)

    def gap(self, X):
        lo, hi = np.asarray(self.lo), np.asarray(self.hi)
        return np.max(np.maximum(lo - X, X - hi), axis=1)

    def contains(self, X):
        return self.gap(X) <= FACE_TOL

    def from_unit(self, U):
        lo, hi = np.asarray(self.lo), np.asarray(self.hi)
        return lo + U[:, : self.dim] * (hi - lo)

    def lattice(self, grid):
        m = grid if self.dim == 1 else per_axis(grid, self.dim)
        axes = [np.linspace(a, b, m) for a, b in zip(self.lo, self.hi)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.column_stack([g.ravel() for g in mesh])

    def to_json(self):
        if self.dim == 1:
            return {"type": "interval", "lo": self.lo[0], "hi": self.hi[0]}
        return {"type": "box", "lo": list(self.lo), "hi": list(self.hi)}


def interval(lo: float, hi: float) -> Box:
    return Box((float(lo),), (float(hi),))


@dataclass(frozen=True, eq=False)
class Simplex(Region):
    """Convex hull of ``dim + 1`` affinely independent vertices.

    ``closed=True`` admits zero barycentric weights; the open variant needs
    every weight above the face tolerance.
    """

    verts: tuple[tuple[float, ...], ...]
    closed: bool = True

    def __post_init__(self):
        V = np.asarray(self.verts, dtype=float)
        if V.ndim != 2 or V.shape[0] != V.shape[1] + 1:
            raise InputError(f"simplex in R^d needs d+1 vertices of dimension d, got shape {V.shape}")
        T = (V[1:] - V[0]).T
        scale = max(1.0, float(np.max(np.abs(T))))
        if abs(np.linalg.det(T)) <= 1e-12 * scale ** T.shape[0]:
            raise InputError("simplex vertices are affinely dependent")
        object.__setattr__(self, "_v0", V[0])
        object.__setattr__(self, "_tinv", np.linalg.inv(T))
        object.__setattr__(self, "_V", V)

    @property
    def dim(self):
        return len(self.verts[0])

    @property
    def unit_dim(self):
        return self.dim

    def barycentric(self, X):
        rest = (X - self._v0) @ self._tinv.T
        return np.column_stack([1.0 - rest.sum(axis=1), rest])

    def gap(self, X):
        return np.max(-self.barycentric(X), axis=1)

    def contains(self, X):
        lam = self.barycentric(X)
        if self.closed:
            return np.all(lam >= -FACE_TOL, axis=1)
        return np.all(lam > FACE_TOL, axis=1)

    def from_unit(self, U):
        u = np.sort(U[:, : self.dim], axis=1)
        n = len(u)
        edges = np.column_stack([np.zeros(n), u, np.ones(n)])
        lam = np.diff(edges, axis=1)
        return lam @ self._V

    def lattice(self, grid):
        m = per_axis(grid, self.dim)
        lam = simplex_lattice(m, self.dim)
        if not self.closed:
            lam = lam[np.all(lam > 0, axis=1)]
        return lam @ self._V

    def to_json(self):
        return {"type": "simplex", "verts": [list(v) for v in self.verts], "closed": self.closed}


@dataclass(frozen=True, eq=False)
class Halfspaces(Region):
    """Conjunction of ``normal . x <= offset``; sampled by rejection from ``bbox``."""

    normals: tuple[tuple[float, ...], ...]
    offsets: tuple[float, ...]
    bbox: Box

    def __post_init__(self):
        if not self.normals or len(self.normals) != len(self.offsets):
            raise InputError("halfspaces need matching, non-empty normals and offsets")
        if any(len(n) != self.bbox.dim for n in self.normals):
            raise InputError("halfspace normals must match the bounding-box dimension")

    @property
    def dim(self):
        return self.bbox.dim

    @property
    def unit_dim(self):
        return self.bbox.dim

    def gap(self, X):
        N = np.asarray(self.normals, dtype=float)
        return np.max(X @ N.T - np.asarray(self.offsets, dtype=float), axis=1)

    def contains(self, X):
        return self.gap(X) <= FACE_TOL

    def from_unit(self, U):
        return self.bbox.from_unit(U)

    def lattice(self, grid):
        return self.bbox.lattice(grid)

    def to_json(self):
        return {"type": "halfspaces", "normals": [list(n) for n in self.normals],
                "offsets": list(self.offsets), "bbox": self.bbox.to_json()}


def region_contains(R: Region, x) -> bool:
    X = as_points(x)
    if X.shape[1] != R.dim:
        raise InputError(f"region of dimension {R.dim} queried with a {X.shape[1]}-dimensional point")
    return bool(R.contains(X)[0])


def sample_region(R: Region, U: np.ndarray) -> np.ndarray:
    """Map unit-cube rows into ``R`` and drop any that land outside (rejection)."""
    X = R.from_unit(U)
    return X[R.contains(X)]


# ---------------------------------------------------------------------------
# JSON DSL


def _num(obj, key, path):
    v = obj.get(key) if isinstance(obj, dict) else None
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise InputError(f"{path}.{key}: expected a finite number")
    return float(v)


def _int(obj, key, path, default=None):
    if key not in obj and default is not None:
        return default
    v = obj.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise InputError(f"{path}.{key}: expected a non-negative integer")
    return v


def _list(obj, key, path):
    v = obj.get(key) if isinstance(obj, dict) else None
    if not isinstance(v, list) or not v:
        raise InputError(f"{path}.{key}: expected a non-empty list")
    return v


def _vec(v, path):
    if not isinstance(v, list) or not v or not all(
            isinstance(t, (int, float)) and not isinstance(t, bool) for t in v):
        raise InputError(f"{path}: expected a non-empty list of numbers")
    return tuple(float(t) for t in v)


def fn_from_json(obj, path: str = "$") -> EvaluableFn:
    if not isinstance(obj, dict) or "type" not in obj:
        raise InputError(f"{path}: expected an object with a 'type' field")
    kind = obj["type"]
    try:
        if kind == "fpoly":
            return PolyFn(FractalPoly.from_json(obj, path), _int(obj, "var", path, 0),
                          bool(obj.get("even_power", False)))
        if kind == "product":
            return Product(tuple(fn_from_json(f, f"{path}.fns[{i}]")
                                 for i, f in enumerate(_list(obj, "fns", path))))
        if kind == "piecewise":
            pieces = []
            for i, pc in enumerate(_list(obj, "pieces", path)):
                p = f"{path}.pieces[{i}]"
                if not isinstance(pc, dict) or "if" not in pc or "fn" not in pc:
                    raise InputError(f"{p}: expected {{'if': ..., 'fn': ...}}")
                g = pc["if"]
                if not isinstance(g, dict) or not isinstance(g.get("op"), str):
                    raise InputError(f"{p}.if: expected {{'var', 'op', 'c'}}")
                try:
                    guard = Guard(_int(g, "var", f"{p}.if"), g["op"], _num(g, "c", f"{p}.if"))
                except InputError as exc:
                    msg = str(exc)
                    raise InputError(msg if msg.startswith("$") else f"{p}.if: {msg}") from None
                pieces.append((guard, fn_from_json(pc["fn"], f"{p}.fn")))
            domain = region_from_json(obj["domain"], f"{path}.domain") if "domain" in obj else None
            return Piecewise(tuple(pieces), domain)
        if kind == "affine-pre":
            return AffinePre(fn_from_json(obj.get("fn"), f"{path}.fn"), _num(obj, "scale", path),
                             _num(obj, "offset", path) if "offset" in obj else 0.0)
        if kind == "weighted-sum":
            terms = []
            for i, t in enumerate(_list(obj, "terms", path)):
                terms.append((_num(t, "w", f"{path}.terms[{i}]"),
                              fn_from_json(t.get("fn"), f"{path}.terms[{i}].fn")))
            return WeightedSum(tuple(terms))
        if kind == "sup":
            return SupFamily(tuple(fn_from_json(f, f"{path}.fns[{i}]")
                                   for i, f in enumerate(_list(obj, "fns", path))))
        if kind == "compose":
            return Compose(fn_from_json(obj.get("outer"), f"{path}.outer"),
                           fn_from_json(obj.get("inner"), f"{path}.inner"))
    except InputError as exc:
        msg = str(exc)
        raise InputError(msg if msg.startswith("$") else f"{path}: {msg}") from None
    raise InputError(f"{path}.type: unknown function type {kind!r}")


def emap_from_json(obj, path: str = "$") -> EMap:
    if not isinstance(obj, dict) or "type" not in obj:
        raise InputError(f"{path}: expected an object with a 'type' field")
    kind = obj["type"]
    try:
        if kind == "emap-identity":
            return IdentityMap(_int(obj, "dim", path, 1))
        if kind == "emap-affine":
            rows = _list(obj, "matrix", path)
            return AffineMap(tuple(_vec(r, f"{path}.matrix[{i}]") for i, r in enumerate(rows)),
                             _vec(obj.get("offset"), f"{path}.offset"))
        if kind == "emap-componentwise":
            return ComponentwiseMap(tuple(fn_from_json(f, f"{path}.fns[{i}]")
                                          for i, f in enumerate(_list(obj, "fns", path))))
    except InputError as exc:
        msg = str(exc)
        raise InputError(msg if msg.startswith("$") else f"{path}: {msg}") from None
    raise InputError(f"{path}.type: unknown E-map type {kind!r}")


def region_from_json(obj, path: str = "$") -> Region:
    if not isinstance(obj, dict) or "type" not in obj:
        raise InputError(f"{path}: expected an object with a 'type' field")
    kind = obj["type"]
    try:
        if kind == "interval":
            return interval(_num(obj, "lo", path), _num(obj, "hi", path))
        if kind == "box":
            return Box(_vec(obj.get("lo"), f"{path}.lo"), _vec(obj.get("hi"), f"{path}.hi"))
        if kind == "simplex":
            verts = tuple(_vec(v, f"{path}.verts[{i}]") for i, v in enumerate(_list(obj, "verts", path)))
            closed = obj.get("closed", True)
            if not isinstance(closed, bool):
                raise InputError(f"{path}.closed: expected a boolean")
            return Simplex(verts, closed)
        if kind == "halfspaces":
            normals = tuple(_vec(n, f"{path}.normals[{i}]") for i, n in enumerate(_list(obj, "normals", path)))
            bbox = region_from_json(obj.get("bbox"), f"{path}.bbox")
            if not isinstance(bbox, Box):
                raise InputError(f"{path}.bbox: expected a box or interval")
            return Halfspaces(normals, _vec(obj.get("offsets"), f"{path}.offsets"), bbox)
    except InputError as exc:
        msg = str(exc)
        raise InputError(msg if msg.startswith("$") else f"{path}: {msg}") from None
    raise InputError(f"{path}.type: unknown region type {kind!r}")


def region_with_closure(R: Region, closed: bool) -> Region:
    """Copy of a simplex region with the requested closure; other regions unchanged."""
    if isinstance(R, Simplex):
        return Simplex(R.verts, closed)
    return R


def points_in(R: Region, pts: Sequence) -> np.ndarray:
    return R.contains(as_points(pts, R.dim))
