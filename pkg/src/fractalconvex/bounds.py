"""Hermite-Hadamard chains and midpoint-gap bounds in closed form.

Every report carries all sides of its chain plus one link per inequality.
Sides are computed separately from the function itself (no shared
subexpressions), so an algebra slip shows up as a broken link rather than
being cancelled away.

Notation used below: ``G(k) = Gamma(1 + k*alpha)``, ``w = b - a`` and
``d2`` is the absolute second alpha-derivative ``|D^a D^a f|``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .alpha import AlphaCtx, gamma, hh_constant
from .errors import InputError, UnsupportedExponentError, UnsupportedFamilyError
from .fpoly import (FractalPoly, Interval, d_alpha,
                    lf_integral, lf_integral_unit_reflected)
from .functions import EvaluableFn
from .quadrature import adaptive_simpson

SLACK_TOL = 1e-10
HOLDER_TOL = 1e-12


@dataclass(frozen=True)
class HolderPair:
    """Conjugate exponents with ``1/p1 + 1/p2 = 1``."""

    p1: float
    p2: float

    def __post_init__(self):
        if not (math.isfinite(self.p1) and math.isfinite(self.p2) and self.p1 > 1 and self.p2 > 1):
            raise InputError(f"Holder exponents must be finite and > 1, got ({self.p1}, {self.p2})")
        if abs(1.0 / self.p1 + 1.0 / self.p2 - 1.0) > HOLDER_TOL:
            raise InputError(f"Holder exponents must satisfy 1/p1 + 1/p2 = 1, got ({self.p1}, {self.p2})")

    @classmethod
    def from_p2(cls, p2: float) -> HolderPair:
        if not p2 > 1:
            raise InputError(f"p2 must be > 1, got {p2!r}")
        return cls(p2 / (p2 - 1.0), p2)


@dataclass
class Link:
    name: str
    left: float
    right: float
    tol: float = SLACK_TOL

    @property
    def slack(self) -> float:
        return self.right - self.left

    @property
    def satisfied(self) -> bool:
        return self.slack >= -self.tol

    def to_json(self) -> dict:
        return {"name": self.name, "satisfied": self.satisfied, "slack": self.slack}


@dataclass
class IneqReport:
    label: str
    alpha: float
    interval: tuple[float, float]
    lhs: Optional[float]
    rhs: Optional[float]
    middle: Optional[float] = None
    links: list = field(default_factory=list)
    s: Optional[float] = None
    p1: Optional[float] = None
    p2: Optional[float] = None
    notes: list = field(default_factory=list)
    status: str = "evaluated"
    extras: dict = field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        return all(l.satisfied for l in self.links)

    def link(self, name: str) -> Link:
        for l in self.links:
            if l.name == name:
                return l
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "alpha": self.alpha,
            "s": self.s,
            "p1": self.p1,
            "p2": self.p2,
            "interval": list(self.interval),
            "lhs": self.lhs,
            "middle": self.middle,
            "rhs": self.rhs,
            "links": [l.to_json() for l in self.links],
            "notes": list(self.notes),
            "status": self.status,
            "extras": dict(self.extras),
        }

    CSV_FIELDS = ("label", "alpha", "s", "p1", "p2", "a", "b", "lhs", "middle", "rhs",
                  "link", "satisfied", "slack", "status")

    def csv_rows(self) -> list[dict]:
        base = {"label": self.label, "alpha": self.alpha, "s": self.s, "p1": self.p1, "p2": self.p2,
                "a": self.interval[0], "b": self.interval[1], "lhs": self.lhs,
                "middle": self.middle, "rhs": self.rhs, "status": self.status}
        rows = [dict(base, link=l.name, satisfied=l.satisfied, slack=l.slack) for l in self.links]
        return rows or [dict(base, link="", satisfied="", slack="")]


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=IneqReport.CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        for row in r.csv_rows():
            w.writerow({k: "" if v is None else v for k, v in row.items()})
    return buf.getvalue()


# ---------------------------------------------------------------------------
# helpers


def _G(k: float, a: float) -> float:
    return gamma(1.0 + k * a)


def _check_s(s: float):
    if not (isinstance(s, (int, float)) and 0.0 < s <= 1.0):
        raise InputError(f"s must lie in (0, 1], got {s!r}")


def _iv(iv) -> Interval:
    return iv if isinstance(iv, Interval) else Interval(*iv)


def second_derivative_abs(f: FractalPoly) -> Callable[[float], float]:
    """``x -> |D^a D^a f(x)|``."""
    d2 = d_alpha(d_alpha(f))
    return lambda x: abs(d2(x))


def _second_derivative_or_raise(f: FractalPoly) -> Callable[[float], float]:
    try:
        return second_derivative_abs(f)
    except UnsupportedExponentError as exc:
        raise UnsupportedExponentError(f"second alpha-derivative of {f} is outside the closed-form family: {exc}") from None


def midpoint_gap(f: FractalPoly, iv) -> float:
    """``|G(2)/2^a f(mid) - G(2) G(1)^2 / (2^a w^a) I(f)|``, the left side shared by the bounds."""
    iv = _iv(iv)
    a = f.alpha
    g2, g1 = _G(2, a), _G(1, a)
    w = iv.width
    return abs(g2 / 2.0 ** a * f(iv.mid) - g2 * g1 ** 2 / (2.0 ** a * w ** a) * lf_integral(f, iv))


def _holder_gamma(p1: float, a: float) -> float:
    """``[Gamma(1+2 p1 a) / Gamma(1+(2 p1 + 1) a)]^(1/p1)``."""
    return (gamma(1.0 + 2.0 * p1 * a) / gamma(1.0 + (2.0 * p1 + 1.0) * a)) ** (1.0 / p1)


def _params(iv: Interval) -> tuple[float, float]:
    return (iv.lo, iv.hi)


# ---------------------------------------------------------------------------
# Hermite-Hadamard chains


def hh_generalized(f: FractalPoly, iv) -> IneqReport:
    """``f(mid) <= G(1)/w^a I(f) <= (f(a)+f(b))/2^a``."""
    iv = _iv(iv)
    a = f.alpha
    lhs = f(iv.mid)
    middle = gamma(1.0 + a) / iv.width ** a * lf_integral(f, iv)
    rhs = (f(iv.lo) + f(iv.hi)) / 2.0 ** a
    return IneqReport("eq8", a, _params(iv), lhs, rhs, middle,
                      [Link("left", lhs, middle), Link("right", middle, rhs)])


def _as_callable(f) -> Callable[[float], float]:
    if isinstance(f, FractalPoly):
        if f.alpha != 1.0:
            raise InputError(f"classical inequality needs alpha = 1, got {f.alpha}")
        return lambda x: f(x)
    if isinstance(f, EvaluableFn):
        if f.arity != 1:
            raise InputError("classical inequality needs a function of one variable")
        return lambda x: f(x)
    if callable(f):
        return f
    raise InputError(f"not a function: {f!r}")


def classical_mean(f, iv) -> float:
    """``1/w * integral of f`` by adaptive Simpson."""
    iv = _iv(iv)
    g = _as_callable(f)
    return adaptive_simpson(g, iv.lo, iv.hi) / iv.width


def hh_classical(f, iv) -> IneqReport:
    """Alpha = 1 chain with the integral taken by quadrature."""
    iv = _iv(iv)
    g = _as_callable(f)
    lhs = g(iv.mid)
    middle = classical_mean(g, iv)
    rhs = (g(iv.lo) + g(iv.hi)) / 2.0
    return IneqReport("eq9", 1.0, _params(iv), lhs, rhs, middle,
                      [Link("left", lhs, middle), Link("right", middle, rhs)])


def hh_s_classical(f, iv, s: float) -> IneqReport:
    """``2^(s-1) f(mid) <= mean <= (f(a)+f(b))/(s+1)``, quadrature mean."""
    _check_s(s)
    iv = _iv(iv)
    g = _as_callable(f)
    lhs = 2.0 ** (s - 1.0) * g(iv.mid)
    middle = classical_mean(g, iv)
    rhs = (g(iv.lo) + g(iv.hi)) / (s + 1.0)
    return IneqReport("eq10", 1.0, _params(iv), lhs, rhs, middle,
                      [Link("left", lhs, middle), Link("right", middle, rhs)], s=s)


def hh_s_generalized(f: FractalPoly, iv, s: float) -> IneqReport:
    """``2^(a(s-1)) f(mid) <= G(1)/w^a I(f) <= G(s)G(1)/G(s+1) (f(a)+f(b))``."""
    _check_s(s)
    iv = _iv(iv)
    a = f.alpha
    lhs = 2.0 ** (a * (s - 1.0)) * f(iv.mid)
    middle = gamma(1.0 + a) / iv.width ** a * lf_integral(f, iv)
    rhs = hh_constant(s, a) * (f(iv.lo) + f(iv.hi))
    return IneqReport("eq11", a, _params(iv), lhs, rhs, middle,
                      [Link("left", lhs, middle), Link("right", middle, rhs)], s=s)


# ---------------------------------------------------------------------------
# midpoint identity and bounds


def lemma_midpoint_identity(f: FractalPoly, iv) -> tuple[float, float]:
    """Both sides of the midpoint identity for ``f`` with constant second alpha-derivative.

    Left: ``G(2)G(1)^2/(2^a w^a) I(f) - G(2)/2^a f(mid)``.
    Right: ``w^(2a)/16^a * C * [I_0^1 g^(2a) + I_0^1 (1-g)^(2a)]`` with ``C``
    the constant second derivative; the second integral goes through the
    unit-interval reflection rule.
    """
    iv = _iv(iv)
    a = f.alpha
    d2 = d_alpha(d_alpha(f))
    if not d2.is_constant():
        raise UnsupportedFamilyError(f"second alpha-derivative of {f} is not constant")
    C = d2.constant_value()
    w = iv.width
    lhs = (_G(2, a) * _G(1, a) ** 2 / (2.0 ** a * w ** a) * lf_integral(f, iv)
           - _G(2, a) / 2.0 ** a * f(iv.mid))
    weight = FractalPoly.monomial(a, 2.0)
    rhs = w ** (2 * a) / 16.0 ** a * (C * lf_integral(weight, Interval(0.0, 1.0))
                                       + C * lf_integral_unit_reflected(weight))
    return lhs, rhs


def lemma_report(f: FractalPoly, iv) -> IneqReport:
    iv = _iv(iv)
    lhs, rhs = lemma_midpoint_identity(f, iv)
    return IneqReport("lemma-some1", f.alpha, _params(iv), lhs, rhs, None,
                      [Link("identity-le", lhs, rhs), Link("identity-ge", rhs, lhs)])


def some3_value(d2: Callable[[float], float], iv, s: float, a: float) -> float:
    iv = _iv(iv)
    w = iv.width
    bracket = _G(s, a) / _G(s + 1, a) - 2.0 ** a * _G(s + 1, a) / _G(s + 2, a) + _G(s + 2, a) / _G(s + 3, a)
    return w ** (2 * a) / 16.0 ** a * (
        2.0 ** a * _G(s + 2, a) / _G(s + 3, a) * d2(iv.mid) + bracket * (d2(iv.lo) + d2(iv.hi)))


def some4_value(d2: Callable[[float], float], iv, s: float, a: float) -> float:
    iv = _iv(iv)
    w = iv.width
    const = (2.0 ** (a * (2.0 - s)) * _G(s + 2, a) / _G(s + 3, a) * _G(s, a) * _G(1, a) / _G(s + 1, a)
             + _G(s, a) / _G(s + 1, a)
             - 2.0 ** a * _G(s + 1, a) / _G(s + 2, a)
             + _G(s + 2, a) / _G(s + 3, a))
    return w ** (2 * a) / 16.0 ** a * const * (d2(iv.lo) + d2(iv.hi))


def some5_values(d2: Callable[[float], float], iv, a: float) -> tuple[float, float]:
    """The ``s = 1`` chain written with its own printed constants."""
    iv = _iv(iv)
    w = iv.width
    g1, g2, g3, g4 = _G(1, a), _G(2, a), _G(3, a), _G(4, a)
    pre = w ** (2 * a) / 16.0 ** a
    first = pre * (2.0 ** a * g3 / g4 * d2(iv.mid)
                   + (g1 / g2 - 2.0 ** a * g2 / g3 + g3 / g4) * (d2(iv.lo) + d2(iv.hi)))
    second = pre * (2.0 ** a * g3 / g4 * g1 ** 2 / g2 + g1 / g2 - 2.0 ** a * g2 / g3 + g3 / g4) \
        * (d2(iv.lo) + d2(iv.hi))
    return first, second


def bound_some2(f: FractalPoly, iv, s: float) -> IneqReport:
    """``midpoint gap <= some3 bound <= some4 bound``.

    The premise (generalized s-convexity of ``|D^2a f|``) is the caller's
    responsibility.
    """
    _check_s(s)
    iv = _iv(iv)
    a = f.alpha
    d2 = _second_derivative_or_raise(f)
    lhs = midpoint_gap(f, iv)
    middle = some3_value(d2, iv, s, a)
    rhs = some4_value(d2, iv, s, a)
    rep = IneqReport("some3", a, _params(iv), lhs, rhs, middle,
                     [Link("some3", lhs, middle), Link("some4", middle, rhs)], s=s)
    if s == 1.0:
        rep.extras["some5"] = list(some5_values(d2, iv, a))
    return rep


def some7_value(d2: Callable[[float], float], iv, s: float, hp: HolderPair, a: float) -> float:
    iv = _iv(iv)
    w = iv.width
    p1, p2 = hp.p1, hp.p2
    dm = d2(iv.mid) ** p2
    norms = (dm + d2(iv.lo) ** p2) ** (1.0 / p2) + (dm + d2(iv.hi) ** p2) ** (1.0 / p2)
    return (w ** (2 * a) / 16.0 ** a * (_G(s, a) / _G(s + 1, a)) ** (1.0 / p2)
            * _holder_gamma(p1, a) * norms)


def some8_value(d2: Callable[[float], float], iv, hp: HolderPair, a: float) -> float:
    """The ``s = 1`` bound written with its own printed constants."""
    iv = _iv(iv)
    w = iv.width
    p1, p2 = hp.p1, hp.p2
    dm = d2(iv.mid) ** p2
    norms = (dm + d2(iv.lo) ** p2) ** (1.0 / p2) + (dm + d2(iv.hi) ** p2) ** (1.0 / p2)
    g_ratio = (gamma(1.0 + a) / gamma(1.0 + 2.0 * a)) ** (1.0 / p2)
    return w ** (2 * a) / 16.0 ** a * g_ratio * _holder_gamma(p1, a) * norms


def bound_some6(f: FractalPoly, iv, s: float, hp: HolderPair) -> IneqReport:
    _check_s(s)
    iv = _iv(iv)
    a = f.alpha
    d2 = _second_derivative_or_raise(f)
    lhs = midpoint_gap(f, iv)
    rhs = some7_value(d2, iv, s, hp, a)
    rep = IneqReport("some7", a, _params(iv), lhs, rhs, None, [Link("bound", lhs, rhs)],
                     s=s, p1=hp.p1, p2=hp.p2)
    if s == 1.0:
        rep.extras["some8"] = some8_value(d2, iv, hp, a)
    return rep


def corollary_value(d2: Callable[[float], float], iv, s: float, hp: HolderPair, a: float) -> float:
    iv = _iv(iv)
    w = iv.width
    p1, p2 = hp.p1, hp.p2
    k = 2.0 ** (a * (1.0 - s))
    bracket = ((k * _G(s, a) * _G(1, a) + _G(s + 1, a)) ** (1.0 / p2)
               + k ** (1.0 / p2) * _G(s, a) ** (1.0 / p2) * _G(1, a) ** (1.0 / p2))
    return (w ** (2 * a) / 16.0 ** a * _G(s, a) ** (1.0 / p2) / _G(s + 1, a) ** (2.0 / p2)
            * _holder_gamma(p1, a) * bracket * (d2(iv.lo) + d2(iv.hi)))


def bound_corollary(f: FractalPoly, iv, s: float, hp: HolderPair) -> IneqReport:
    _check_s(s)
    iv = _iv(iv)
    a = f.alpha
    d2 = _second_derivative_or_raise(f)
    lhs = midpoint_gap(f, iv)
    rhs = corollary_value(d2, iv, s, hp, a)
    return IneqReport("corollary", a, _params(iv), lhs, rhs, None, [Link("bound", lhs, rhs)],
                      s=s, p1=hp.p1, p2=hp.p2)


def some9_value(d2: Callable[[float], float], iv, s: float, hp: HolderPair, a: float) -> float:
    iv = _iv(iv)
    w = iv.width
    p1, p2 = hp.p1, hp.p2
    q1, q3 = (3.0 * iv.lo + iv.hi) / 4.0, (iv.lo + 3.0 * iv.hi) / 4.0
    return (2.0 ** (a * (s - 1.0) / p2) * w ** (2 * a) / (16.0 ** a * gamma(1.0 + a) ** (1.0 / p2))
            * _holder_gamma(p1, a) * (d2(q1) + d2(q3)))


def bound_some9(f: FractalPoly, iv, s: float, hp: HolderPair) -> IneqReport:
    """Quarter-point bound under an s-concavity premise on ``|D^2a f|^p2``.

    For ``alpha < 1`` the report is marked ``premise-vacuous``: no
    nonconstant generalized s-concave function is known there, so the
    numbers are produced but carry no evidential weight.
    """
    _check_s(s)
    iv = _iv(iv)
    a = f.alpha
    d2 = _second_derivative_or_raise(f)
    lhs = midpoint_gap(f, iv)
    rhs = some9_value(d2, iv, s, hp, a)
    rep = IneqReport("some9", a, _params(iv), lhs, rhs, None, [Link("bound", lhs, rhs)],
                     s=s, p1=hp.p1, p2=hp.p2)
    if a < 1.0 and not d_alpha(d_alpha(f)).is_constant():
        rep.status = "premise-vacuous"
        rep.notes.append("no nonconstant generalized s-concave function is known for alpha < 1")
    return rep


def remark_some9_alpha1(d2: Callable[[float], float], iv, s: float, hp: HolderPair) -> float:
    """Alpha = 1 form ``2^((s-1)/p2) w^2/16 [1/Gamma(2 p1 + 1)]^(1/p1) (...)``."""
    iv = _iv(iv)
    q1, q3 = (3.0 * iv.lo + iv.hi) / 4.0, (iv.lo + 3.0 * iv.hi) / 4.0
    return (2.0 ** ((s - 1.0) / hp.p2) * iv.width ** 2 / 16.0
            * (1.0 / gamma(2.0 * hp.p1 + 1.0)) ** (1.0 / hp.p1) * (d2(q1) + d2(q3)))


def reverse_hh_premise(g, iv, s: float, p2: float, alpha: float) -> IneqReport:
    """Both quarter-point premise bounds used for the s-concave case.

    Checks ``I_0^1 g(t m + (1-t) a)^p2 <= 2^(a(s-1))/G(1) g((3a+b)/4)^p2`` and
    the mirrored bound on the right half.  At alpha = 1 any one-variable
    ``g`` is integrated by quadrature; for alpha < 1 only constants reduce
    to closed form and anything else is reported as ``unsupported-family``.
    """
    _check_s(s)
    if not p2 > 1:
        raise InputError(f"p2 must be > 1, got {p2!r}")
    a = AlphaCtx(alpha).alpha
    iv = _iv(iv)
    lo, hi, m = iv.lo, iv.hi, iv.mid
    q1, q3 = (3.0 * lo + hi) / 4.0, (lo + 3.0 * hi) / 4.0
    factor = 2.0 ** (a * (s - 1.0)) / gamma(1.0 + a)
    rep = IneqReport("some10", a, _params(iv), None, None, None, [], s=s,
                     p1=p2 / (p2 - 1.0), p2=p2)
    if a == 1.0:
        h = _as_callable(g)
        left_int = adaptive_simpson(lambda t: abs(h(t * m + (1.0 - t) * lo)) ** p2, 0.0, 1.0)
        right_int = adaptive_simpson(lambda t: abs(h(t * hi + (1.0 - t) * m)) ** p2, 0.0, 1.0)
        left_bound = factor * abs(h(q1)) ** p2
        right_bound = factor * abs(h(q3)) ** p2
    elif isinstance(g, FractalPoly) and g.is_constant():
        c = abs(g.constant_value()) ** p2
        unit = FractalPoly.constant(a, c)
        left_int = lf_integral(unit, Interval(0.0, 1.0))
        right_int = lf_integral(unit, Interval(0.0, 1.0))
        left_bound = factor * c
        right_bound = factor * c
    else:
        rep.status = "unsupported-family"
        rep.notes.append("for alpha < 1 only constant functions reduce to closed form")
        return rep
    rep.lhs, rep.rhs = left_int, left_bound
    rep.links = [Link("some10", left_int, left_bound), Link("some11", right_int, right_bound)]
    rep.extras["some11"] = {"lhs": right_int, "rhs": right_bound}
    return rep
