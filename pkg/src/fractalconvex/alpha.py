"""Gamma function, alpha-power arithmetic and the Gamma-ratio constants.

The fractal order ``alpha`` lives in ``(0, 1]``.  Elements of the fractal
line are carried as plain real magnitudes; the only fractal operation that
matters numerically is the power map ``x -> x**(k*alpha)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, InputError

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class AlphaCtx:
    """Fractal order ``alpha`` in ``(0, 1]``."""

    alpha: float

    def __post_init__(self):
        a = self.alpha
        if not isinstance(a, (int, float)) or not math.isfinite(a) or not 0.0 < a <= 1.0:
            raise InputError(f"alpha must lie in (0, 1], got {a!r}")
        object.__setattr__(self, "alpha", float(a))


@dataclass(frozen=True)
class FractalScalar:
    """An element ``a**alpha`` of the fractal line, stored by its magnitude."""

    magnitude: float
    alpha: float

    def __post_init__(self):
        if not math.isfinite(self.magnitude):
            raise InputError(f"fractal scalar magnitude must be finite, got {self.magnitude!r}")
        AlphaCtx(self.alpha)

    @classmethod
    def from_base(cls, a: float, alpha: float) -> FractalScalar:
        return cls(alpha_pow(a, 1.0, AlphaCtx(alpha)), alpha)


def _ctx(ctx) -> AlphaCtx:
    return ctx if isinstance(ctx, AlphaCtx) else AlphaCtx(ctx)


def _lanczos(x: float) -> float:
    # valid for x >= 0.5
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, 9):
        acc += _LANCZOS_COEF[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return _SQRT_2PI * t ** (x + 0.5) * math.exp(-t) * acc


def gamma(x: float) -> float:
    """Gamma function for positive real ``x``.

    Raises:
        DomainError: if ``x <= 0``.
    """
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"gamma requires x > 0, got {x!r}", point=x)
    if x == math.floor(x) and x <= 171.0:
        return float(math.factorial(int(x) - 1))
    if x < 0.5:
        # reflection keeps the Lanczos sum in its accurate range
        return math.pi / (math.sin(math.pi * x) * _lanczos(1.0 - x))
    return _lanczos(x)


def rgamma(x: float) -> float:
    """Reciprocal Gamma ``1/Gamma(x)``, an entire function (zero at the poles)."""
    x = float(x)
    if x > 0.0:
        return 1.0 / gamma(x)
    if x == math.floor(x):
        return 0.0
    # 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
    return math.sin(math.pi * x) * gamma(1.0 - x) / math.pi


def gamma_ratio(k: float, m: float, ctx) -> float:
    """``Gamma(1 + k*alpha) / Gamma(1 + m*alpha)``."""
    a = _ctx(ctx).alpha
    return gamma(1.0 + k * a) / gamma(1.0 + m * a)


def alpha_pow(x: float, p: float, ctx, even_power: bool = False) -> float:
    """Return ``x**(p*alpha)``.

    With ``even_power=True`` and ``p`` an even integer ``2m``, negative bases
    are allowed and ``t**(2m*alpha)`` is read as ``(t**(2m))**alpha``.
    """
    a = _ctx(ctx).alpha
    if p < 0:
        raise DomainError(f"alpha_pow requires p >= 0, got {p!r}")
    if x >= 0:
        return float(x) ** (p * a)
    if even_power and p == math.floor(p) and int(p) % 2 == 0:
        return (float(x) ** int(p)) ** a
    raise DomainError(f"negative base {x!r} needs an even-power exponent, got p={p!r}", point=x)


def hh_constant(s: float, ctx) -> float:
    """``Gamma(1+s*alpha) Gamma(1+alpha) / Gamma(1+(s+1)*alpha)``."""
    a = _ctx(ctx).alpha
    if not 0.0 < s <= 1.0:
        raise InputError(f"s must lie in (0, 1], got {s!r}")
    return gamma(1.0 + s * a) * gamma(1.0 + a) / gamma(1.0 + (s + 1.0) * a)
