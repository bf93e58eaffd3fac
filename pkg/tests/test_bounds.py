from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fractalconvex.alpha import gamma
from fractalconvex.bounds import (HolderPair, IneqReport, Link, bound_corollary, bound_some2,
                                  bound_some6, bound_some9, hh_classical, hh_generalized,
                                  hh_s_classical, hh_s_generalized, lemma_midpoint_identity,
                                  lemma_report, remark_some9_alpha1, reports_to_csv,
                                  reverse_hh_premise, some8_value)
from fractalconvex.errors import InputError, UnsupportedFamilyError
from fractalconvex.fpoly import FractalPoly
from fractalconvex.functions import PolyFn

GRID = (0.25, 0.5, 0.75, 1.0)
alphas = st.sampled_from((0.3, 0.5, 0.8, 1.0))
svals = st.sampled_from((0.25, 0.5, 0.75, 1.0))


def test_holder_pair():
    assert HolderPair.from_p2(2.0) == HolderPair(2.0, 2.0)
    assert HolderPair.from_p2(3.0).p1 == pytest.approx(1.5)
    with pytest.raises(InputError):
        HolderPair(2.0, 3.0)
    with pytest.raises(InputError):
        HolderPair.from_p2(1.0)


def test_eq8_examples():
    r = hh_generalized(FractalPoly.monomial(1.0, 2.0), (0.0, 1.0))
    assert (r.lhs, r.middle, r.rhs) == pytest.approx((0.25, 1 / 3, 0.5))
    r = hh_generalized(FractalPoly.monomial(0.5, 2.0), (0.0, 1.0))
    assert (r.lhs, r.middle, r.rhs) == pytest.approx((0.5, 2 / 3, 2 ** -0.5))
    assert r.satisfied


def test_eq8_anomaly_for_x_alpha():
    r = hh_generalized(FractalPoly.monomial(0.5, 1.0), (0.0, 1.0))
    assert r.middle == pytest.approx(math.pi / 4)
    assert not r.link("right").satisfied


def test_classical_chains():
    r = hh_classical(lambda x: x ** 4, (0.0, 2.0))
    assert (r.lhs, r.middle, r.rhs) == pytest.approx((1.0, 3.2, 8.0))
    r = hh_s_classical(lambda x: x ** 0.5, (0.0, 1.0), 0.5)
    assert r.middle == pytest.approx(r.rhs, abs=1e-9)
    with pytest.raises(InputError):
        hh_classical(FractalPoly.monomial(0.5, 2.0), (0.0, 1.0))


@pytest.mark.parametrize("a", GRID)
@pytest.mark.parametrize("s", GRID)
def test_eq11_tightness(a, s):
    r = hh_s_generalized(FractalPoly.monomial(a, s), (0.0, 1.0), s)
    assert abs(r.middle - r.rhs) <= 1e-10
    assert r.link("left").satisfied


@given(alphas, st.floats(0.0, 2.0), st.floats(0.1, 2.0))
def test_eq11_s1_consistency_with_eq8(a, lo, w):
    f = FractalPoly(a, ((1.0, 2.0), (0.5, 1.0)))
    r8 = hh_generalized(f, (lo, lo + w))
    r11 = hh_s_generalized(f, (lo, lo + w), 1.0)
    assert r8.lhs == r11.lhs and r8.middle == r11.middle
    ratio = (gamma(1 + a) ** 2 / gamma(1 + 2 * a)) / 2 ** -a
    assert r11.rhs == pytest.approx(r8.rhs * ratio, rel=1e-12)


@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2), st.floats(0.0, 2.0), st.floats(0.1, 1.0))
def test_lemma_identity_alpha_one(c2, c1, c0, lo, w):
    f = FractalPoly(1.0, ((c0, 0.0), (c1, 1.0), (c2, 2.0)))
    lhs, rhs = lemma_midpoint_identity(f, (lo, lo + w))
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


def test_lemma_x2_twelfth():
    lhs, rhs = lemma_midpoint_identity(FractalPoly.monomial(1.0, 2.0), (0.0, 1.0))
    assert lhs == pytest.approx(1 / 12) and rhs == pytest.approx(1 / 12)
    assert lemma_report(FractalPoly.monomial(1.0, 2.0), (0.0, 1.0)).satisfied
    with pytest.raises(UnsupportedFamilyError):
        lemma_midpoint_identity(FractalPoly.monomial(1.0, 3.0), (0.0, 1.0))


def test_some2_triple_equality():
    r = bound_some2(FractalPoly.monomial(1.0, 2.0), (0.0, 1.0), 1.0)
    assert (r.lhs, r.middle, r.rhs) == pytest.approx((1 / 12,) * 3, abs=1e-15)
    assert r.extras["some5"] == pytest.approx([16 / 192, 4 / 48], abs=1e-15)


@given(alphas, svals, st.floats(0.0, 2.0), st.floats(0.1, 2.0), st.floats(2.0, 4.0))
def test_some3_le_some4(a, s, lo, w, k):
    # D^2a x^(k a) is x^((k-2) a) up to a constant, s-convex for k - 2 >= 1/a
    f = FractalPoly.monomial(a, k + 1.0 / a)
    r = bound_some2(f, (lo, lo + w), s)
    assert r.link("some4").satisfied


@given(alphas, st.floats(0.0, 2.0), st.floats(0.1, 2.0))
def test_s1_reductions(a, lo, w):
    f = FractalPoly(a, ((1.0, 2.0), (1.0, 3.0)))
    iv = (lo, lo + w)
    r = bound_some2(f, iv, 1.0)
    assert r.middle == pytest.approx(r.extras["some5"][0], rel=1e-12)
    assert r.rhs == pytest.approx(r.extras["some5"][1], rel=1e-12)
    hp = HolderPair(2.0, 2.0)
    r6 = bound_some6(f, iv, 1.0, hp)
    assert r6.rhs == pytest.approx(r6.extras["some8"], rel=1e-12)


def test_some7_and_corollary_values():
    hp = HolderPair(2.0, 2.0)
    f = FractalPoly.monomial(1.0, 2.0)
    r = bound_some6(f, (0.0, 1.0), 1.0, hp)
    assert r.lhs == pytest.approx(1 / 12)
    assert r.rhs == pytest.approx(1 / 16 * math.sqrt(0.5) * math.sqrt(0.2) * 2 * math.sqrt(8))
    c = bound_corollary(f, (0.0, 1.0), 1.0, hp)
    assert c.rhs == pytest.approx(1 / 16 / 2 * math.sqrt(0.2) * (math.sqrt(3) + 1) * 4)
    assert c.satisfied


@given(alphas, svals)
def test_corollary_relation_sweep(a, s):
    f = FractalPoly(a, ((1.0, 2.0),))
    assert bound_corollary(f, (0.0, 1.0), s, HolderPair(2.0, 2.0)).satisfied


def test_some9_alpha_one():
    hp = HolderPair.from_p2(2.0)
    r = bound_some9(FractalPoly.monomial(1.0, 2.5, 4 / 15), (0.0, 1.0), 1.0, hp)
    assert r.lhs == pytest.approx(0.02905002411, rel=1e-9)
    assert r.rhs == pytest.approx(0.03818157077, rel=1e-9)
    assert r.status == "evaluated" and r.satisfied


def test_some9_remark_form_is_reported_separately():
    hp = HolderPair.from_p2(2.0)
    d2 = lambda x: x ** 0.5
    remark = remark_some9_alpha1(d2, (0.0, 1.0), 1.0, hp)
    assert remark == pytest.approx(1 / 16 * (1 / gamma(5.0)) ** 0.5 * (0.5 + 0.75 ** 0.5))


def test_some9_premise_vacuous_below_one():
    r = bound_some9(FractalPoly.monomial(0.5, 5.0), (0.0, 1.0), 1.0, HolderPair(2.0, 2.0))
    assert r.status == "premise-vacuous"
    r = bound_some9(FractalPoly.monomial(0.5, 2.0), (0.0, 1.0), 1.0, HolderPair(2.0, 2.0))
    assert r.status == "evaluated"


def test_reverse_premise():
    # g^2 = sqrt(1 + x) is concave, so both quarter-point bounds hold
    r = reverse_hh_premise(lambda x: (1.0 + x) ** 0.25, (0.0, 1.0), 1.0, 2.0, 1.0)
    assert r.link("some10").satisfied and r.link("some11").satisfied
    # g^2 = (1 + x)^2 is convex and the bound fails
    r = reverse_hh_premise(lambda x: 1.0 + x, (0.0, 1.0), 1.0, 2.0, 1.0)
    assert not r.satisfied
    r = reverse_hh_premise(FractalPoly.constant(0.5, 2.0), (0.0, 1.0), 1.0, 2.0, 0.5)
    assert r.lhs == pytest.approx(4.0 / gamma(1.5))
    assert r.rhs == pytest.approx(4.0 / gamma(1.5))
    r = reverse_hh_premise(FractalPoly.monomial(0.5, 1.0), (0.0, 1.0), 0.5, 2.0, 0.5)
    assert r.status == "unsupported-family" and r.lhs is None


def test_report_serialization():
    r = IneqReport("x", 1.0, (0.0, 1.0), 1.0, 2.0, None, [Link("l", 1.0, 2.0)])
    assert list(r.to_json())[:3] == ["label", "alpha", "s"]
    text = reports_to_csv([r])
    assert text.splitlines()[0].startswith("label,alpha,s")
    assert len(text.splitlines()) == 2
    with pytest.raises(KeyError):
        r.link("missing")


def test_some8_helper_agrees_with_report():
    hp = HolderPair(3.0, 1.5)
    f = FractalPoly.monomial(0.5, 4.0)
    r = bound_some6(f, (0.5, 1.5), 1.0, hp)
    d2 = PolyFn(FractalPoly.monomial(0.5, 2.0, gamma(3.0) / gamma(2.0) * gamma(2.0) / gamma(1.0)))
    assert r.extras["some8"] == pytest.approx(some8_value(lambda x: abs(d2(x)), (0.5, 1.5), hp, 0.5), rel=1e-12)
