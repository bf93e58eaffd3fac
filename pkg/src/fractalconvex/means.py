"""Special means, the two mean propositions and the fractal wave solution."""

from __future__ import annotations

import math
from enum import Enum

from .alpha import AlphaCtx, gamma, rgamma
from .bounds import (HolderPair, IneqReport, Link, midpoint_gap,
                     some5_values, some8_value)
from .errors import DomainError, InputError
from .fpoly import FractalPoly, Interval, d_alpha


class MeanKind(str, Enum):
    A_ALPHA = "A-alpha"
    LN_ALPHA = "Ln-alpha"
    A_CLASSICAL = "A-classical"
    L_CLASSICAL = "L-classical"
    LN_CLASSICAL = "Ln-classical"


def _positive(y1, y2):
    if not (math.isfinite(y1) and math.isfinite(y2) and y1 > 0 and y2 > 0):
        raise InputError(f"means need y1, y2 > 0, got ({y1}, {y2})")


def _distinct(y1, y2):
    if y1 == y2:
        raise InputError(f"log-type means need y1 != y2, got y1 = y2 = {y1}")


def _order(n):
    if n is None or not math.isfinite(n) or n in (-1, 0):
        raise InputError(f"log-mean order n must be finite and not in {{-1, 0}}, got {n!r}")


def _root(x: float, n: float) -> float:
    if x < 0 and not (float(n).is_integer() and int(n) % 2 == 1):
        raise DomainError(f"cannot take the 1/{n} root of negative value {x}", point=x)
    return math.copysign(abs(x) ** (1.0 / n), x)


def mean(kind, y1: float, y2: float, n: float | None = None, alpha: float = 1.0) -> float:
    """Evaluate a mean.  ``n`` is the log-mean order (or ``s``)."""
    kind = MeanKind(kind)
    a = AlphaCtx(alpha).alpha
    _positive(y1, y2)
    if kind is MeanKind.A_ALPHA:
        return (y1 ** a + y2 ** a) / 2.0 ** a
    if kind is MeanKind.A_CLASSICAL:
        return (y1 + y2) / 2.0
    _distinct(y1, y2)
    if kind is MeanKind.L_CLASSICAL:
        return (y1 - y2) / (math.log(y1) - math.log(y2))
    _order(n)
    if kind is MeanKind.LN_CLASSICAL:
        return _root((y2 ** (n + 1) - y1 ** (n + 1)) / ((n + 1) * (y2 - y1)), n)
    # Gamma(1+n a)/Gamma(1+(n+1) a) written with reciprocal Gamma, entire in n
    den = rgamma(1.0 + n * a)
    if den == 0.0:
        raise InputError(f"Gamma(1 + n*alpha) has a pole at n={n}, alpha={a}")
    ratio = rgamma(1.0 + (n + 1.0) * a) / den
    return _root(ratio * (y2 ** ((n + 1) * a) - y1 ** ((n + 1) * a)), n)


def _prop_checks(y1, y2, s):
    if not (math.isfinite(y1) and math.isfinite(y2) and 0 < y1 < y2):
        raise InputError(f"propositions need 0 < y1 < y2, got ({y1}, {y2})")
    if not (isinstance(s, (int, float)) and 0.0 < s < 1.0):
        raise InputError(f"propositions need s in (0, 1), got {s!r}")


def power_second_derivative(s: float, a: float):
    """``|D^a D^a x^(s a)| = |G(s)/G(s-2)| x^((s-2) a)``, valid through the Gamma poles."""
    coef = abs(gamma(1.0 + s * a) * rgamma(1.0 + (s - 2.0) * a))
    return coef, (lambda x: coef * x ** ((s - 2.0) * a))


def prop_mean_bound_1(y1: float, y2: float, s: float, alpha: float) -> IneqReport:
    """Midpoint gap of ``x^(s a)`` against the ``s = 1`` second-derivative bound."""
    _prop_checks(y1, y2, s)
    a = AlphaCtx(alpha).alpha
    iv = Interval(y1, y2)
    lhs = midpoint_gap(FractalPoly.monomial(a, s), iv)
    coef, d2 = power_second_derivative(s, a)
    _, rhs = some5_values(d2, iv, a)
    rep = IneqReport("prop1", a, (y1, y2), lhs, rhs, None, [Link("bound", lhs, rhs)], s=s)
    rep.extras["second_derivative_coef"] = coef
    if a == 1.0:
        rep.extras["printed_alpha1_rhs"] = prop1_alpha1_rhs(y1, y2, s)
    return rep


def prop1_alpha1_rhs(y1, y2, s) -> float:
    return (y2 - y1) ** 2 * abs(s * (s - 1.0)) / 48.0 * (y1 ** (s - 2.0) + y2 ** (s - 2.0))


def prop_mean_bound_2(y1: float, y2: float, s: float, hp: HolderPair, alpha: float) -> IneqReport:
    """Midpoint gap of ``x^(s a)`` against the Holder-type ``s = 1`` bound."""
    _prop_checks(y1, y2, s)
    a = AlphaCtx(alpha).alpha
    iv = Interval(y1, y2)
    lhs = midpoint_gap(FractalPoly.monomial(a, s), iv)
    coef, d2 = power_second_derivative(s, a)
    rhs = some8_value(d2, iv, hp, a)
    rep = IneqReport("prop2", a, (y1, y2), lhs, rhs, None, [Link("bound", lhs, rhs)],
                     s=s, p1=hp.p1, p2=hp.p2)
    rep.extras["second_derivative_coef"] = coef
    if a == 1.0:
        rep.extras["printed_alpha1_rhs"] = prop2_alpha1_rhs(y1, y2, s, hp)
    return rep


def prop2_alpha1_rhs(y1, y2, s, hp: HolderPair) -> float:
    p1, p2 = hp.p1, hp.p2
    m = (y1 + y2) / 2.0
    e = (s - 2.0) * p2
    norms = (m ** e + y1 ** e) ** (1.0 / p2) + (m ** e + y2 ** e) ** (1.0 / p2)
    return (y2 - y1) ** 2 * abs(s * (s - 1.0)) / (2.0 ** (1.0 / p2) * 16.0 * (2.0 * p1 + 1.0) ** (1.0 / p1)) * norms


# ---------------------------------------------------------------------------
# wave equation


def _wave_parts(a: float) -> tuple[FractalPoly, FractalPoly]:
    x_part = FractalPoly.monomial(a, 1.0, 1.0 / gamma(1.0 + a))
    t_part = FractalPoly.monomial(a, 2.0, 1.0 / gamma(1.0 + 2.0 * a))
    return x_part, t_part


def wave_solution_eval(x: float, t: float, alpha: float) -> float:
    """``x^a/Gamma(1+a) + t^(2a)/Gamma(1+2a)``."""
    a = AlphaCtx(alpha).alpha
    if x < 0 or t < 0:
        raise DomainError(f"wave solution needs x, t >= 0, got ({x}, {t})", point=(x, t))
    return x ** a / gamma(1.0 + a) + t ** (2.0 * a) / gamma(1.0 + 2.0 * a)


def wave_residual(x: float, t: float, alpha: float) -> tuple[float, float]:
    """Both sides of the wave equation at the claimed solution.

    The time side applies ``D^a`` twice to the ``t`` part and the space side
    applies it twice to the ``x`` part, scaled by ``x^(2a)/Gamma(1+2a)``.
    Nothing is asserted about their equality.
    """
    a = AlphaCtx(alpha).alpha
    if x < 0 or t < 0:
        raise DomainError(f"wave residual needs x, t >= 0, got ({x}, {t})", point=(x, t))
    x_part, t_part = _wave_parts(a)
    lhs = d_alpha(d_alpha(t_part))(t)
    rhs = x ** (2.0 * a) / gamma(1.0 + 2.0 * a) * d_alpha(d_alpha(x_part))(x)
    return float(lhs), float(rhs)


def wave_initial_value(x: float, alpha: float) -> tuple[float, float]:
    """``f(x, 0)`` next to the stated initial value ``x^a/Gamma(1+a)``."""
    a = AlphaCtx(alpha).alpha
    return wave_solution_eval(x, 0.0, a), x ** a / gamma(1.0 + a)
