"""Closed-form calculus on fractal polynomials ``sum c_i * x**(k_i*alpha)``.

Derivatives and integrals follow the local fractional power rule::

    D^a x^{ka}        = G(1+ka)/G(1+(k-1)a) * x^{(k-1)a}
    antiderivative    = G(1+ka)/G(1+(k+1)a) * x^{(k+1)a}

so every quantity here is exact up to Gamma rounding.  No quadrature is
involved: an alpha-Riemann sum over an ordinary interval does not converge
for alpha < 1.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .alpha import AlphaCtx, gamma
from .errors import DomainError, InputError, UnsupportedExponentError


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` with ``0 <= lo < hi``."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InputError(f"interval bounds must be finite, got [{lo}, {hi}]")
        if lo < 0:
            raise InputError(f"interval must start at lo >= 0, got lo={lo}")
        if not lo < hi:
            raise InputError(f"interval needs lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo


def _normalize(terms: Iterable[tuple[float, float]]) -> tuple[tuple[float, float], ...]:
    acc: dict[float, float] = {}
    for c, k in terms:
        c, k = float(c), float(k)
        if not math.isfinite(c) or not math.isfinite(k):
            raise InputError(f"non-finite term ({c}, {k})")
        if k < 0:
            raise UnsupportedExponentError(f"exponent index k must be >= 0, got {k}")
        acc[k] = acc.get(k, 0.0) + c
    return tuple((c, k) for k, c in sorted(acc.items()) if c != 0.0)


@dataclass(frozen=True)
class FractalPoly:
    """Finite sum ``sum coeff * x**(k*alpha)`` with distinct ``k >= 0``.

    Terms are kept sorted by ``k`` with zero coefficients dropped, so two
    equal polynomials compare equal.
    """

    alpha: float
    terms: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "alpha", AlphaCtx(self.alpha).alpha)
        object.__setattr__(self, "terms", _normalize(self.terms))

    @classmethod
    def monomial(cls, alpha: float, k: float, coeff: float = 1.0) -> FractalPoly:
        return cls(alpha, ((coeff, k),))

    @classmethod
    def constant(cls, alpha: float, c: float) -> FractalPoly:
        return cls(alpha, ((c, 0.0),))

    @property
    def ctx(self) -> AlphaCtx:
        return AlphaCtx(self.alpha)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(k == 0.0 for _, k in self.terms)

    def constant_value(self) -> float:
        if not self.is_constant():
            raise UnsupportedExponentError(f"{self} is not constant")
        return self.terms[0][0] if self.terms else 0.0

    def __add__(self, other: FractalPoly) -> FractalPoly:
        if not isinstance(other, FractalPoly):
            return NotImplemented
        if other.alpha != self.alpha:
            raise InputError(f"cannot add polynomials of order {self.alpha} and {other.alpha}")
        return FractalPoly(self.alpha, self.terms + other.terms)

    def __mul__(self, scalar: float) -> FractalPoly:
        return FractalPoly(self.alpha, tuple((c * scalar, k) for c, k in self.terms))

    __rmul__ = __mul__

    def __neg__(self) -> FractalPoly:
        return self * -1.0

    def __call__(self, x, even_power: bool = False):
        """Evaluate at a scalar or array ``x``.

        Negative arguments are rejected unless ``even_power`` is set, in
        which case even-integer ``k`` terms use ``(t**k)**alpha``.
        """
        arr = np.asarray(x, dtype=float)
        neg = arr < 0
        if np.any(neg):
            bad = [k for _, k in self.terms if k != 0.0 and not (even_power and _is_even_int(k))]
            if bad:
                where = float(arr[neg].flat[0])
                raise DomainError(f"fractal power of negative argument x={where!r}", point=where)
        base = np.abs(arr)
        out = np.zeros_like(base)
        for c, k in self.terms:
            out = out + c * base ** (k * self.alpha)
        if out.ndim == 0:
            return float(out)
        return out

    def __str__(self):
        if not self.terms:
            return f"fpoly(α={self.alpha:g}; 0)"
        parts = []
        for c, k in self.terms:
            parts.append(f"{c:g}" if k == 0 else f"{c:g}*x^{{{k:g}α}}")
        return f"fpoly(α={self.alpha:g}; " + " + ".join(parts) + ")"

    def to_json(self) -> dict:
        return {"type": "fpoly", "alpha": self.alpha, "terms": [[c, k] for c, k in self.terms]}

    @classmethod
    def from_json(cls, obj, path: str = "$") -> FractalPoly:
        if not isinstance(obj, dict) or obj.get("type") != "fpoly":
            raise InputError(f"{path}: expected an object with type 'fpoly'")
        if "alpha" not in obj:
            raise InputError(f"{path}.alpha: missing")
        terms = obj.get("terms", [])
        if not isinstance(terms, list):
            raise InputError(f"{path}.terms: expected a list of [coeff, k] pairs")
        parsed = []
        for i, t in enumerate(terms):
            if not (isinstance(t, (list, tuple)) and len(t) == 2
                    and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in t)):
                raise InputError(f"{path}.terms[{i}]: expected [coeff, k]")
            if t[1] < 0:
                raise InputError(f"{path}.terms[{i}]: exponent index must be >= 0")
            parsed.append((t[0], t[1]))
        try:
            return cls(obj["alpha"], tuple(parsed))
        except InputError as exc:
            raise InputError(f"{path}: {exc}") from None


def _is_even_int(k: float) -> bool:
    return k == math.floor(k) and int(k) % 2 == 0


def evaluate(p: FractalPoly, x: float) -> float:
    """Evaluate ``p`` at ``x >= 0``."""
    if x < 0:
        raise DomainError(f"evaluation point must be >= 0, got {x!r}", point=x)
    return p(x)


def d_alpha(p: FractalPoly) -> FractalPoly:
    """Local fractional derivative of order alpha, term by term."""
    a = p.alpha
    out = []
    for c, k in p.terms:
        if k == 0.0:
            continue
        if k < 1.0:
            raise UnsupportedExponentError(
                f"D^alpha of x^({k:g}α) leaves the nonnegative-exponent algebra")
        out.append((c * gamma(1.0 + k * a) / gamma(1.0 + (k - 1.0) * a), k - 1.0))
    return FractalPoly(a, tuple(out))


def antiderivative(p: FractalPoly) -> FractalPoly:
    """Power-rule antiderivative anchored at 0."""
    a = p.alpha
    return FractalPoly(a, tuple(
        (c * gamma(1.0 + k * a) / gamma(1.0 + (k + 1.0) * a), k + 1.0) for c, k in p.terms))


def lf_integral(p: FractalPoly, iv: Interval) -> float:
    """Local fractional integral of ``p`` over ``iv`` (Newton-Leibniz form)."""
    F = antiderivative(p)
    return F(iv.hi) - F(iv.lo)


def lf_integral_unit_reflected(p: FractalPoly) -> float:
    """Integral over [0, 1] of ``p(1 - t)``.

    Evaluated through the reflection rule: it equals the integral of
    ``p(t)`` over [0, 1].
    """
    return lf_integral(p, Interval(0.0, 1.0))


_HEAD = re.compile(r"^\s*fpoly\s*\(\s*(?:α|alpha|a)\s*=\s*([^;]+);(.*)\)\s*$", re.S)
_NUM = r"[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?"
_TERM = re.compile(
    rf"^(?P<coef>{_NUM})?\s*\*?\s*(?P<x>x(?:\s*\^\s*(?:\{{(?P<eb>[^}}]*)\}}|(?P<ep>{_NUM})))?)?$")
_ALPHA_EXP = re.compile(rf"^({_NUM})?\s*\*?\s*(?:α|alpha|a)$")


def _split_signed(body: str) -> list[tuple[float, str]]:
    out, depth, cur, sign = [], 0, "", 1.0
    for i, ch in enumerate(body):
        depth += (ch == "{") - (ch == "}")
        is_sep = depth == 0 and ch in "+-" and not re.search(r"[0-9.][eE]$", body[:i])
        if not is_sep:
            cur += ch
            continue
        if cur.strip():
            out.append((sign, cur.strip()))
        elif out or body[:i].strip():
            raise InputError(f"empty term before {body[i:]!r}")
        sign, cur = (-1.0 if ch == "-" else 1.0), ""
    if not cur.strip():
        raise InputError(f"trailing operator in {body!r}")
    out.append((sign, cur.strip()))
    return out


def parse_fpoly(text: str) -> FractalPoly:
    """Parse the inline form ``fpoly(α=A; c1*x^{k1α} + c2*x^{e2} + c0)``.

    An exponent written with ``α`` (or ``a``/``alpha``) gives ``k`` directly;
    a bare number ``e`` is a plain exponent and maps to ``k = e/alpha``.
    """
    m = _HEAD.match(text)
    if not m:
        raise InputError(f"not an inline fpoly: {text!r}")
    try:
        alpha = float(m.group(1))
    except ValueError:
        raise InputError(f"bad alpha in {text!r}") from None
    AlphaCtx(alpha)
    body = m.group(2).strip()
    terms = []
    if body in ("", "0"):
        return FractalPoly(alpha)
    for sign, tok in _split_signed(body):
        tm = _TERM.match(tok.replace(" ", ""))
        if not tm or (tm.group("coef") is None and tm.group("x") is None):
            raise InputError(f"cannot parse term {tok!r} in {text!r}")
        coef = float(tm.group("coef")) if tm.group("coef") is not None else 1.0
        if tm.group("x") is None:
            k = 0.0
        elif tm.group("eb") is not None:
            eb = tm.group("eb").strip()
            am = _ALPHA_EXP.match(eb)
            if am:
                k = float(am.group(1)) if am.group(1) else 1.0
            else:
                try:
                    k = float(eb) / alpha
                except ValueError:
                    raise InputError(f"bad exponent {eb!r} in {text!r}") from None
        elif tm.group("ep") is not None:
            k = float(tm.group("ep")) / alpha
        else:
            k = 1.0 / alpha
        terms.append((sign * coef, k))
    return FractalPoly(alpha, tuple(terms))
