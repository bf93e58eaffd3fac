from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fractalconvex.errors import DomainError, InputError, UnsupportedExponentError
from fractalconvex.fpoly import (FractalPoly, Interval, antiderivative, d_alpha, evaluate,
                                 lf_integral, lf_integral_unit_reflected, parse_fpoly)
from fractalconvex.quadrature import adaptive_simpson

ALPHAS = (0.3, 0.5, 0.8, 1.0)
coef = st.floats(-5.0, 5.0)
index = st.sampled_from([0.0, 1.0, 2.0, 3.0, 4.5])


@st.composite
def polys(draw, alpha=None):
    a = draw(st.sampled_from(ALPHAS)) if alpha is None else alpha
    terms = draw(st.lists(st.tuples(coef, index), max_size=4))
    return FractalPoly(a, tuple(terms))


@pytest.mark.parametrize("k", [0.0, 0.5, 1.0, 2.0, 3.0])
@pytest.mark.parametrize("a", ALPHAS)
def test_monomial_law(k, a):
    got = lf_integral(FractalPoly.monomial(a, k), Interval(0.0, 1.0))
    assert abs(got - math.gamma(1 + k * a) / math.gamma(1 + (k + 1) * a)) <= 1e-12


@given(polys(alpha=1.0), st.floats(0.0, 2.0), st.floats(0.01, 2.0))
def test_alpha_one_matches_quadrature(p, lo, width):
    iv = Interval(lo, lo + width)
    assert lf_integral(p, iv) == pytest.approx(adaptive_simpson(p, iv.lo, iv.hi), abs=1e-9)


@given(polys(), coef, coef)
def test_linearity(p, s, t):
    q = FractalPoly(p.alpha, ((1.0, 2.0), (-0.5, 0.0)))
    iv = Interval(0.2, 1.7)
    lhs = lf_integral(p * s + q * t, iv)
    rhs = s * lf_integral(p, iv) + t * lf_integral(q, iv)
    assert lhs == pytest.approx(rhs, abs=1e-12 * max(1.0, abs(lhs)) * 100)


@given(polys())
def test_derivative_of_antiderivative(p):
    back = d_alpha(antiderivative(p))
    assert len(back.terms) == len(p.terms)
    for (c1, k1), (c2, k2) in zip(back.terms, p.terms):
        assert k1 == k2
        assert c1 == pytest.approx(c2, rel=1e-13)


@given(polys(), st.floats(0.0, 3.0))
def test_integral_of_derivative_round_trip(p, x):
    # zero constant term and k >= 1 everywhere
    p = FractalPoly(p.alpha, tuple((c, k) for c, k in p.terms if k >= 1.0))
    F = antiderivative(d_alpha(p))
    assert F(x) == pytest.approx(p(x), abs=1e-12 * max(1.0, abs(p(x))) * 10)


def test_power_rule_examples():
    assert d_alpha(FractalPoly.monomial(1.0, 2.0)).terms == ((2.0, 1.0),)
    assert d_alpha(FractalPoly.constant(0.5, 3.0)).is_zero()
    with pytest.raises(UnsupportedExponentError):
        d_alpha(FractalPoly.monomial(0.5, 0.5))


def test_reflected_unit_integral():
    p = FractalPoly.monomial(1.0, 2.0)
    assert lf_integral_unit_reflected(p) == pytest.approx(1 / 3)


def test_evaluate_and_domain():
    p = FractalPoly.monomial(0.5, 2.0)
    assert evaluate(p, 4.0) == pytest.approx(4.0)
    with pytest.raises(DomainError):
        evaluate(p, -1.0)
    assert p(-2.0, even_power=True) == pytest.approx(2.0)


def test_interval_validation():
    with pytest.raises(InputError):
        Interval(1.0, 0.0)


@pytest.mark.parametrize("text,alpha,terms", [
    ("fpoly(α=0.5; x^{2α})", 0.5, ((1.0, 2.0),)),
    ("fpoly(alpha=1; 3*x^2 - 2*x + 1)", 1.0, ((1.0, 0.0), (-2.0, 1.0), (3.0, 2.0))),
    ("fpoly(α=0.5; x^{0.25})", 0.5, ((1.0, 0.5),)),
    ("fpoly(α=0.5; 0)", 0.5, ()),
])
def test_parse_fpoly(text, alpha, terms):
    p = parse_fpoly(text)
    assert p.alpha == alpha
    assert p.terms == terms


@pytest.mark.parametrize("text", ["x^2", "fpoly(α=2; x)", "fpoly(α=0.5; x^{2α} +)", "fpoly(α=0.5; y)"])
def test_parse_fpoly_rejects(text):
    with pytest.raises(InputError):
        parse_fpoly(text)


@given(polys())
def test_json_round_trip(p):
    assert FractalPoly.from_json(p.to_json()) == p


def test_from_json_errors_name_path():
    with pytest.raises(InputError, match=r"\$\.terms\[0\]"):
        FractalPoly.from_json({"type": "fpoly", "alpha": 0.5, "terms": [[1.0, -1.0]]})
