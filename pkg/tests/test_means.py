from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fractalconvex.alpha import gamma
from fractalconvex.bounds import HolderPair
from fractalconvex.errors import DomainError, InputError
from fractalconvex.fpoly import FractalPoly, Interval, lf_integral
from fractalconvex.means import (MeanKind, mean, power_second_derivative, prop1_alpha1_rhs,
                                 prop2_alpha1_rhs, prop_mean_bound_1, prop_mean_bound_2,
                                 wave_initial_value, wave_residual, wave_solution_eval)

pos = st.floats(0.1, 10.0)
alphas = st.sampled_from((0.3, 0.5, 0.8, 1.0))


def test_mean_examples():
    assert mean("A-alpha", 1, 1, alpha=0.5) == pytest.approx(2 ** 0.5)
    assert mean("A-classical", 1, 3) == 2.0
    assert mean("Ln-classical", 1, 2, n=2) == pytest.approx((7 / 3) ** 0.5)
    assert mean(MeanKind.L_CLASSICAL, 1, 2) == pytest.approx(1 / 0.6931471805599453)


def test_mean_errors():
    with pytest.raises(InputError):
        mean("A-alpha", -1, 2)
    with pytest.raises(InputError):
        mean("L-classical", 2, 2)
    with pytest.raises(InputError):
        mean("Ln-alpha", 1, 2, n=0)
    with pytest.raises(ValueError):
        mean("G-mean", 1, 2)


@given(pos, pos)
def test_A_alpha_at_one(y1, y2):
    assert mean("A-alpha", y1, y2, alpha=1.0) == pytest.approx(mean("A-classical", y1, y2), rel=1e-15)


@given(pos, pos, alphas, st.floats(0.1, 0.9))
def test_Ln_alpha_links_to_integral(y1, y2, a, s):
    lo, hi = sorted((y1, y2))
    if hi - lo < 1e-3:
        return
    m = mean("Ln-alpha", lo, hi, n=s, alpha=a)
    assert m ** s == pytest.approx(lf_integral(FractalPoly.monomial(a, s), Interval(lo, hi)), rel=1e-12)


def test_prop1_goldens():
    r = prop_mean_bound_1(1.0, 2.0, 0.5, 1.0)
    assert r.lhs == pytest.approx(0.005793454894129191, abs=1e-6)
    assert r.rhs == pytest.approx(0.0070497572426733, abs=1e-6)
    assert r.satisfied
    assert r.rhs == pytest.approx(r.extras["printed_alpha1_rhs"], abs=1e-13)


@given(st.floats(0.1, 5.0), st.floats(0.01, 5.0), st.floats(0.05, 0.95))
def test_alpha_one_printed_forms(y1, w, s):
    y2 = y1 + w
    assert prop_mean_bound_1(y1, y2, s, 1.0).rhs == pytest.approx(prop1_alpha1_rhs(y1, y2, s), rel=1e-13)
    hp = HolderPair(2.0, 2.0)
    assert prop_mean_bound_2(y1, y2, s, hp, 1.0).rhs == pytest.approx(prop2_alpha1_rhs(y1, y2, s, hp), rel=1e-13)


@given(st.floats(0.1, 5.0), st.floats(0.01, 5.0), st.floats(0.05, 0.95), alphas)
def test_prop1_rhs_nonnegative(y1, w, s, a):
    assert prop_mean_bound_1(y1, y1 + w, s, a).rhs >= 0.0


def test_prop1_alpha_half_is_reported():
    r = prop_mean_bound_1(1.0, 2.0, 0.5, 0.5)
    coef, _ = power_second_derivative(0.5, 0.5)
    assert r.extras["second_derivative_coef"] == pytest.approx(coef)
    assert "printed_alpha1_rhs" not in r.extras


def test_prop_input_checks():
    with pytest.raises(InputError):
        prop_mean_bound_1(2.0, 1.0, 0.5, 1.0)
    with pytest.raises(InputError):
        prop_mean_bound_1(1.0, 2.0, 1.0, 1.0)


def test_wave():
    assert wave_solution_eval(0, 0, 0.5) == 0.0
    assert wave_solution_eval(1, 1, 1.0) == pytest.approx(1.5)
    assert wave_solution_eval(1, 1, 0.5) == pytest.approx(1 / gamma(1.5) + 1.0)
    with pytest.raises(DomainError):
        wave_solution_eval(-1, 0, 0.5)


@given(st.floats(0.05, 1.0), st.floats(0.01, 5.0), st.floats(0.0, 5.0))
def test_wave_residual_is_one_zero(a, x, t):
    lhs, rhs = wave_residual(x, t, a)
    assert abs(lhs - 1.0) <= 1e-12 and abs(rhs) <= 1e-12
    got, want = wave_initial_value(x, a)
    assert got == pytest.approx(want, abs=1e-15)
