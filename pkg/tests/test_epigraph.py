from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fractalconvex.convexity import ConvexityQuery, check_gECF, check_quasiconvex
from fractalconvex.epigraph import (EAlphaPoint, EpigraphLift, HeightBox, HeightHalfspace,
                                    LiftedRegion, check_E_alpha_convex_set, check_idempotent,
                                    check_intersection_closure, check_level_sets_convex,
                                    default_levels, epigraph_membership, level_set_membership,
                                    lifted_from_json)
from fractalconvex.errors import DomainError, InputError
from fractalconvex.fpoly import FractalPoly
from fractalconvex.functions import AffineMap, AffinePre, PolyFn, SupFamily, interval
from fractalconvex.sampling import Budget
from fractalconvex.suite import example1, example2

SMALL = Budget(16, 1024, 0)
NO_CEX = "no-counterexample-found"


def mono(a, k, c=1.0):
    return PolyFn(FractalPoly.monomial(a, k, c))


def epi(fn, lo=0.0, hi=1.0, E=None):
    return LiftedRegion(interval(lo, hi), EpigraphLift(fn, E, 2.0))


def test_point_validation():
    with pytest.raises(InputError):
        EAlphaPoint((float("nan"),), 1.0)
    assert EAlphaPoint(0.5, 2).x == (0.5,)


def test_epigraph_of_power_is_E_alpha_convex():
    assert check_E_alpha_convex_set(epi(mono(0.5, 2.0)), None, 0.5, SMALL).status == NO_CEX


def test_intersection_closure():
    members = [epi(mono(0.5, 2.0)), epi(mono(0.5, 3.0))]
    assert check_intersection_closure(members, None, 0.5, SMALL).status == NO_CEX


def test_disjoint_intersection_is_vacuous():
    a = LiftedRegion(interval(0, 1), HeightBox(0.0, 1.0))
    b = LiftedRegion(interval(2, 3), HeightBox(0.0, 1.0))
    c = check_intersection_closure([a, b], None, 0.5, SMALL)
    assert c.status == NO_CEX and c.checked == 0


def test_example2_epigraph_without_E_fails():
    g, B, _ = example2(0.5)
    S = LiftedRegion(B, EpigraphLift(g, None, 2.0))
    assert check_E_alpha_convex_set(S, None, 0.5, SMALL).is_counterexample


def test_epigraph_theorem_direction():
    # E idempotent, epigraph E^alpha-convex, so g is gECF
    E = AffineMap(((1.0, 0.0), (0.0, 0.0)), (0.0, 0.0))
    from fractalconvex.functions import Box
    B = Box((0.0, 0.0), (1.0, 1.0))
    g = mono(0.5, 2.0)
    assert check_idempotent(E, B, SMALL).status == NO_CEX
    S = LiftedRegion(B, EpigraphLift(g, E, 2.0))
    assert check_E_alpha_convex_set(S, E, 0.5, SMALL).status == NO_CEX
    assert check_gECF(ConvexityQuery("gECF", B, 0.5, g, E, budget=SMALL)).status == NO_CEX


def test_idempotence_detects_non_projection():
    E = AffineMap(((0.5,),), (0.0,))
    assert check_idempotent(E, interval(0, 1), SMALL).is_counterexample


@given(st.floats(0.0, 1.0), st.floats(-1.0, 4.0))
def test_sup_epigraph_is_intersection(x, r):
    fns = [mono(0.5, 1.0), mono(0.5, 3.0, 2.0)]
    p = EAlphaPoint((x,), r)
    B = interval(0, 1)
    both = all(epigraph_membership(f, None, p, B) for f in fns)
    assert both == epigraph_membership(SupFamily(tuple(fns)), None, p, B)


def test_membership_errors_and_modes():
    with pytest.raises(DomainError):
        epigraph_membership(mono(1.0, 2.0), None, EAlphaPoint((2.0,), 0.0), interval(0, 1))
    E = AffineMap(((0.5,),), (0.0,))
    assert level_set_membership(mono(1.0, 2.0), E, (1.0,), 0.3, "composed")
    assert not level_set_membership(mono(1.0, 2.0), E, (1.0,), 0.3, "restricted")
    with pytest.raises(InputError):
        level_set_membership(mono(1.0, 2.0), E, (1.0,), 0.3, "other")


def test_level_sets_agree_with_quasiconvexity():
    g, B, E = example1(0.5)
    assert check_level_sets_convex(g, E, B, budget=SMALL).status == NO_CEX
    bump = AffinePre(PolyFn(FractalPoly.monomial(1.0, 2.0, -1.0), even_power=True), 1.0, -0.5)
    R = interval(0, 1)
    assert check_level_sets_convex(bump, None, R, budget=SMALL).is_counterexample
    assert check_quasiconvex(ConvexityQuery("gE-quasiconvex", R, 1.0, bump, budget=SMALL), "E").is_counterexample


def test_default_levels_sorted():
    lv = default_levels(mono(1.0, 2.0), None, interval(0, 1), SMALL)
    assert len(lv) == 16 and np.all(np.diff(lv) >= 0)


def test_halfspace_lift_and_json():
    S = LiftedRegion(interval(0, 1), HeightHalfspace((1.0,), -1.0, 0.0))
    # r >= x is convex, so E^alpha-convexity holds at alpha = 1
    assert check_E_alpha_convex_set(S, None, 1.0, SMALL).status == NO_CEX
    back = lifted_from_json(S.to_json())
    pts = np.array([[0.5, 0.6], [0.5, 0.4]])
    assert np.array_equal(back.contains(pts), S.contains(pts))
    box = LiftedRegion(interval(0, 1), HeightBox(0.0, 2.0))
    assert lifted_from_json(box.to_json()).contains(np.array([[0.5, 1.0]]))[0]
    with pytest.raises(InputError):
        HeightBox(1.0, 0.0)
