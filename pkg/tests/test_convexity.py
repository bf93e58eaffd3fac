from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fractalconvex.convexity import (Certificate, ConvexityQuery, check_E_convex_set,
                                     check_E_image_subset, check_gECF, check_generalized_convex,
                                     check_quasiconvex, check_s_convex, run_query, verify_witness,
                                     witness_violation)
from fractalconvex.errors import InputError, WitnessError
from fractalconvex.fpoly import FractalPoly
from fractalconvex.functions import (AffineMap, AffinePre, IdentityMap, PolyFn, Simplex,
                                     WeightedSum, interval)
from fractalconvex.sampling import Budget
from fractalconvex.suite import example1, example2

SMALL = Budget(16, 1024, 0)
NO_CEX = "no-counterexample-found"


def poly(a, *terms):
    return PolyFn(FractalPoly(a, terms))


def test_query_validation():
    R = interval(0, 1)
    with pytest.raises(InputError):
        ConvexityQuery("convex-ish", R, 0.5, poly(0.5, (1.0, 2.0)))
    with pytest.raises(InputError):
        ConvexityQuery("generalized-convex", R, 0.5)
    with pytest.raises(InputError):
        ConvexityQuery("s-convex-2", R, 0.5, poly(0.5, (1.0, 2.0)), s=1.5)
    with pytest.raises(InputError):
        ConvexityQuery("gECF", R, 0.5, poly(0.5, (1.0, 2.0)), E=IdentityMap(2))
    with pytest.raises(InputError):
        ConvexityQuery("gECF", R, 0.5, poly(0.5, (1.0, 2.0)), strict=True)
    with pytest.raises(InputError):
        ConvexityQuery("gECF", R, 0.5, poly(0.5, (1.0, 2.0)), tolerance=-1.0)


def test_power_is_generalized_convex():
    q = ConvexityQuery("generalized-convex", interval(0, 1), 0.5, poly(0.5, (1.0, 2.0)), budget=Budget(64, 4096, 7))
    assert run_query(q).status == NO_CEX


def test_negative_parabola_is_not_convex():
    f = AffinePre(PolyFn(FractalPoly.monomial(1.0, 2.0, -1.0), even_power=True), 1.0, -0.5)
    q = ConvexityQuery("generalized-convex", interval(0, 1), 1.0, f, budget=SMALL)
    c = run_query(q)
    assert c.is_counterexample and verify_witness(c, q)


@pytest.mark.parametrize("example", [example1, example2])
def test_examples(example):
    g, B, E = example(0.5)
    assert check_gECF(ConvexityQuery("gECF", B, 0.5, g, E, budget=SMALL)).status == NO_CEX
    q = ConvexityQuery("generalized-convex", B, 0.5, g, budget=SMALL)
    c = check_generalized_convex(q)
    assert c.is_counterexample and verify_witness(c, q)


def test_example1_set_is_E_convex_only_when_closed():
    _, B, E = example1(0.5)
    assert check_E_convex_set(B, E, SMALL).status == NO_CEX
    assert check_E_convex_set(Simplex(B.verts, False), E, SMALL).is_counterexample
    assert check_E_image_subset(B, E, SMALL).status == NO_CEX


@settings(max_examples=10)
@given(st.lists(st.tuples(st.floats(0.1, 2.0), st.sampled_from([0.0, 2.0, 3.0, 4.0])), min_size=1, max_size=3))
def test_gECF_reduces_to_generalized_convex_at_alpha_one(terms):
    f = poly(1.0, *terms)
    q = ConvexityQuery("gECF", interval(0, 1), 1.0, f, budget=SMALL)
    a = check_gECF(q)
    b = check_generalized_convex(q)
    assert a.dumps() == b.dumps()


def test_reduction_on_counterexample():
    f = AffinePre(PolyFn(FractalPoly.monomial(1.0, 2.0, -1.0), even_power=True), 1.0, -0.3)
    q = ConvexityQuery("gECF", interval(0, 1), 1.0, f, budget=SMALL)
    assert check_gECF(q).dumps() == check_generalized_convex(q).dumps()


def test_determinism():
    g, B, E = example1(0.5)
    q = ConvexityQuery("generalized-convex", B, 0.5, g, budget=Budget(16, 2048, 3))
    assert run_query(q).dumps() == run_query(q).dumps()


def test_counterexample_persists_under_larger_budget():
    g, B, _ = example1(0.5)
    q = ConvexityQuery("generalized-convex", B, 0.5, g, budget=Budget(8, 256, 0))
    first = run_query(q)
    assert first.is_counterexample
    from dataclasses import replace
    bigger = replace(q, budget=Budget(32, 8192, 0))
    again = run_query(bigger, retain=[first.witness])
    assert again.is_counterexample
    assert again.witness["phase"] == "retained"


def test_s_convex_classes():
    f = poly(1.0, (1.0, 2.0))
    q = ConvexityQuery("s-convex-2", interval(0, 1), 1.0, f, s=0.5, budget=SMALL)
    assert check_s_convex(q, 2).status == NO_CEX
    assert check_s_convex(q, 1).status == NO_CEX
    with pytest.raises(InputError):
        check_s_convex(q, 3)


def test_quasiconvex_variants():
    bump = AffinePre(PolyFn(FractalPoly.monomial(1.0, 2.0, -1.0), even_power=True), 1.0, -0.5)
    q = ConvexityQuery("generalized-quasiconvex", interval(0, 1), 1.0, bump, budget=SMALL)
    assert check_quasiconvex(q, "plain").is_counterexample
    assert check_quasiconvex(q, "E").is_counterexample
    # strictly E-quasiconcave: the blend stays above the smaller end value
    assert check_quasiconvex(q, "E", strict=True).status == NO_CEX
    with pytest.raises(InputError):
        check_quasiconvex(q, "plain", strict=True)
    with pytest.raises(InputError):
        check_quasiconvex(q, "other")


def test_concave_bump_generalized_convex_but_not_quasiconvex():
    # at alpha < 1 a gECF need not be E-quasiconvex
    sq = AffinePre(PolyFn(FractalPoly.monomial(1.0, 2.0, -0.05), even_power=True), 2.0, -1.0)
    g = WeightedSum(((1.0, PolyFn(FractalPoly.constant(0.5, 1.05))), (1.0, sq)))
    q = ConvexityQuery("gECF", interval(0, 1), 0.5, g)
    assert check_gECF(q).status == NO_CEX
    assert check_quasiconvex(q, "E").is_counterexample


def test_witness_checks():
    f = AffinePre(PolyFn(FractalPoly.monomial(1.0, 2.0, -1.0), even_power=True), 1.0, -0.5)
    q = ConvexityQuery("generalized-convex", interval(0, 1), 1.0, f, budget=SMALL)
    c = run_query(q)
    bad = dict(c.witness, y1=[5.0])
    with pytest.raises(WitnessError):
        witness_violation(bad, q)
    with pytest.raises(WitnessError):
        witness_violation(dict(c.witness, eta=1.5), q)
    tampered = Certificate(c.status, dict(c.witness, violation=c.violation + 1.0), c.budget, c.violation, c.checked)
    assert not verify_witness(tampered, q)
    with pytest.raises(InputError):
        verify_witness(run_query(ConvexityQuery("generalized-convex", interval(0, 1), 1.0, poly(1.0, (1.0, 2.0)))), q)


def test_certificate_json_layout():
    c = run_query(ConvexityQuery("generalized-convex", interval(0, 1), 1.0, poly(1.0, (1.0, 2.0)), budget=SMALL))
    assert list(c.to_json()) == ["status", "witness", "budget", "seed", "violation", "checked"]


def test_affine_E_on_2d():
    B = Simplex(((0.0, 0.0), (1.0, 0.0), (0.0, 1.0)))
    E = AffineMap(((0.5, 0.0), (0.0, 0.5)), (0.0, 0.0))
    f = PolyFn(FractalPoly.monomial(1.0, 2.0))
    assert check_gECF(ConvexityQuery("gECF", B, 1.0, f, E, budget=SMALL)).status == NO_CEX
