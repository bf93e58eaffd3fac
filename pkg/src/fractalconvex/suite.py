"""Acceptance suite: one check function per criterion, run in declaration order.

Each check returns ``(passed, details)``.  Details hold only values that are
deterministic under the seed (no timings), so two runs with the same seed
serialize to identical bytes.  Runtime limits are enforced but not reported.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .alpha import gamma
from .bounds import (HolderPair, bound_corollary, bound_some2, bound_some6, bound_some9,
                     hh_generalized, hh_s_generalized, lemma_midpoint_identity,
                     remark_some9_alpha1)
from .convexity import (ConvexityQuery, check_gECF, check_generalized_convex,
                        check_quasiconvex, verify_witness)
from .epigraph import (EAlphaPoint, EpigraphLift, LiftedRegion, check_intersection_closure,
                       check_level_sets_convex, epigraph_membership)
from .errors import InputError
from .fpoly import FractalPoly, Interval, lf_integral
from .functions import (AffineMap, AffinePre, ComponentwiseMap, Compose, Guard,
                        Piecewise, PolyFn, Product, Simplex, SupFamily, WeightedSum, interval)
from .means import prop_mean_bound_1, wave_initial_value, wave_residual
from .quadrature import adaptive_simpson
from .sampling import Budget

SCHEMA = "1"
DEFAULT_SEED = 42
ALPHAS = (0.3, 0.5, 0.8, 1.0)
PROPERTY_BUDGET = (16, 1024)
PROPERTY_INSTANCES = 6
PROP1_GOLDEN = (0.005793454894129191, 0.0070497572426733)


@dataclass(frozen=True)
class Criterion:
    cid: str
    title: str
    check: Callable[[int, float], tuple[bool, dict]]
    limit_s: float | None = None


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64([seed, stream]))


def _close(x: float, y: float, tol: float) -> bool:
    return abs(x - y) <= tol


# ---------------------------------------------------------------------------
# c01-c02: gamma and power rule


def c01_gamma(seed, tol):
    half = abs(gamma(1.5) - math.sqrt(math.pi) / 2.0)
    rel = max(abs(gamma(float(n)) - math.factorial(n - 1)) / math.factorial(n - 1) for n in range(1, 7))
    return half <= 1e-12 and rel <= 1e-12, {"gamma_1_5_error": half, "factorial_rel_error": rel}


def c02_power_rule(seed, tol):
    worst, worst_q = 0.0, 0.0
    for k in (0.0, 0.5, 1.0, 2.0, 3.0):
        for a in ALPHAS:
            got = lf_integral(FractalPoly.monomial(a, k), Interval(0.0, 1.0))
            worst = max(worst, abs(got - math.gamma(1 + k * a) / math.gamma(1 + (k + 1) * a)))
            if a == 1.0:
                worst_q = max(worst_q, abs(got - adaptive_simpson(lambda x, k=k: x ** k, 0.0, 1.0)))
    return worst <= 1e-12 and worst_q <= 1e-9, {"gamma_oracle_error": worst, "quadrature_error": worst_q}


# ---------------------------------------------------------------------------
# c03-c07: midpoint identity and bounds


def c03_lemma(seed, tol):
    rng = _rng(seed, 3)
    failures, worst = [], 0.0
    total = 0
    for _ in range(20):
        c2, c1, c0 = (float(v) for v in rng.uniform(-2.0, 2.0, 3))
        lo, hi = sorted(float(v) for v in rng.uniform(0.0, 3.0, 2))
        if hi - lo < 0.05:
            hi = min(3.0, lo + 0.5)
        for a in ALPHAS:
            f = FractalPoly(a, ((c0, 0.0), (c1, 1.0), (c2, 2.0)))
            lhs, rhs = lemma_midpoint_identity(f, Interval(lo, hi))
            err = abs(lhs - rhs) / max(1.0, abs(lhs))
            total += 1
            worst = max(worst, err)
            if err > 1e-10:
                failures.append(a)
    lhs, rhs = lemma_midpoint_identity(FractalPoly.monomial(1.0, 2.0), Interval(0.0, 1.0))
    anchor = _close(lhs, 1 / 12, 1e-10) and _close(rhs, 1 / 12, 1e-10)
    by_alpha = {str(a): failures.count(a) for a in ALPHAS}
    return (not failures and anchor,
            {"instances": total, "failing": len(failures), "failing_by_alpha": by_alpha,
             "worst_relative_error": worst, "x2_unit_interval": [lhs, rhs]})


def c04_eq11_tightness(seed, tol):
    grid = (0.25, 0.5, 0.75, 1.0)
    worst, ordered = 0.0, True
    for a in grid:
        for s in grid:
            rep = hh_s_generalized(FractalPoly.monomial(a, s), (0.0, 1.0), s)
            worst = max(worst, abs(rep.middle - rep.rhs))
            ordered &= rep.link("left").satisfied
    return worst <= 1e-10 and ordered, {"worst_middle_rhs_gap": worst, "lhs_le_middle": ordered}


def _some2_oracle(s: float) -> tuple[float, float, float]:
    """``f = x^(s+2)`` on [0, 1] at alpha = 1, integrals by quadrature."""
    f = lambda x: x ** (s + 2.0)
    d2 = lambda x: (s + 2.0) * (s + 1.0) * x ** s
    lhs = abs(f(0.5) - adaptive_simpson(f, 0.0, 1.0))
    da, db, dm = d2(0.0), d2(1.0), d2(0.5)
    # s-convexity of d2 bounds each half by t^s d2(m) + (1-t)^s d2(end)
    some3 = adaptive_simpson(lambda t: t * t * (2 * t ** s * dm + (1 - t) ** s * (da + db)), 0.0, 1.0) / 16.0
    # the s-convex midpoint bound replaces d2(m)
    dm_bound = 2.0 ** (1.0 - s) * (da + db) / (s + 1.0)
    some4 = adaptive_simpson(lambda t: t * t * (2 * t ** s * dm_bound + (1 - t) ** s * (da + db)), 0.0, 1.0) / 16.0
    return lhs, some3, some4


def c05_some2_chain(seed, tol):
    rows, ok = [], True
    for s in (0.5, 0.75, 1.0):
        rep = bound_some2(FractalPoly.monomial(1.0, s + 2.0), (0.0, 1.0), s)
        oracle = _some2_oracle(s)
        got = (rep.lhs, rep.middle, rep.rhs)
        agree = all(_close(x, y, 1e-8) for x, y in zip(got, oracle))
        ok &= agree and rep.satisfied
        rows.append({"s": s, "sides": list(got), "oracle_agrees": agree, "chain": rep.satisfied})
    rep = bound_some2(FractalPoly.monomial(1.0, 2.0), (0.0, 1.0), 1.0)
    remark = (16.0 / 192.0, 4.0 / 48.0)
    triple = all(_close(v, 1 / 12, 1e-12) for v in (rep.lhs, rep.middle, rep.rhs, *remark))
    triple &= all(_close(v, 1 / 12, 1e-12) for v in rep.extras["some5"])
    return ok and triple, {"chains": rows, "x2_triple": [rep.lhs, rep.middle, rep.rhs]}


def c06_some7_corollary(seed, tol):
    hp = HolderPair(2.0, 2.0)
    f = FractalPoly.monomial(1.0, 2.0)
    some7 = bound_some6(f, (0.0, 1.0), 1.0, hp)
    cor = bound_corollary(f, (0.0, 1.0), 1.0, hp)
    # printed constants at alpha = s = 1, p1 = p2 = 2 and |f''| = 2
    holder = (math.gamma(5.0) / math.gamma(6.0)) ** 0.5
    printed7 = 1 / 16 * (math.gamma(2.0) / math.gamma(3.0)) ** 0.5 * holder * 2 * (4.0 + 4.0) ** 0.5
    bracket = (math.gamma(2.0) ** 2 + math.gamma(3.0)) ** 0.5 + math.gamma(2.0) ** 0.5 * math.gamma(2.0) ** 0.5
    printed_cor = 1 / 16 * math.gamma(2.0) ** 0.5 / math.gamma(3.0) * holder * bracket * 4.0
    ok = (_close(some7.lhs, 1 / 12, 1e-12) and some7.satisfied and cor.satisfied
          and _close(some7.rhs, printed7, 1e-10) and _close(cor.rhs, printed_cor, 1e-10))
    return ok, {"lhs": some7.lhs, "some7": some7.rhs, "some7_printed": printed7,
                "corollary": cor.rhs, "corollary_printed": printed_cor}


def c07_some9(seed, tol):
    hp = HolderPair.from_p2(2.0)
    f = FractalPoly.monomial(1.0, 2.5, 4.0 / 15.0)
    rep = bound_some9(f, (0.0, 1.0), 1.0, hp)
    g = lambda x: 4.0 / 15.0 * x ** 2.5
    lhs_oracle = abs(g(0.5) - adaptive_simpson(g, 0.0, 1.0))
    holder = adaptive_simpson(lambda t: t ** (2 * hp.p1), 0.0, 1.0) ** (1.0 / hp.p1)
    rhs_oracle = 1 / 16 * holder * (math.sqrt(0.25) + math.sqrt(0.75))
    low = bound_some9(FractalPoly.monomial(0.5, 5.0), (0.0, 1.0), 1.0, hp)
    ok = (rep.satisfied and _close(rep.lhs, lhs_oracle, 1e-8) and _close(rep.rhs, rhs_oracle, 1e-8)
          and low.status == "premise-vacuous")
    return ok, {"lhs": rep.lhs, "rhs": rep.rhs, "lhs_oracle": lhs_oracle, "rhs_oracle": rhs_oracle,
                "remark_form_rhs": remark_some9_alpha1(lambda x: x ** 0.5, (0.0, 1.0), 1.0, hp),
                "alpha_below_one_status": low.status}


# ---------------------------------------------------------------------------
# c08: section-two examples


def example1(alpha: float, closed: bool = True):
    P = lambda k, var=0: PolyFn(FractalPoly.monomial(alpha, k), var)
    g = Piecewise(((Guard(1, "<", 1.0), P(3)),
                   (Guard(1, ">=", 1.0), Product((P(1), P(3, 1))))))
    B = Simplex(((0.0, 0.0), (0.0, 3.0), (2.0, 1.0)), closed)
    E = AffineMap(((0.0, 0.0), (0.0, 1.0)), (0.0, 0.0))
    return g, B, E


def example2(alpha: float):
    g = Piecewise(((Guard(0, ">", 0.0), PolyFn(FractalPoly.constant(alpha, 1.0))),
                   (Guard(0, "<=", 0.0), AffinePre(PolyFn(FractalPoly.monomial(alpha, 1.0)), -1.0))))
    E = ComponentwiseMap((PolyFn(FractalPoly.monomial(1.0, 2.0, -1.0), even_power=True),))
    return g, interval(-2.0, 2.0), E


def c08_examples(seed, tol):
    budget = Budget(grid=32, samples=50_000, seed=seed)
    rows, ok, total = [], True, 0
    for name, (g, B, E) in (("example1", example1(0.5)), ("example2", example2(0.5))):
        ecf = check_gECF(ConvexityQuery("gECF", B, 0.5, g, E, budget=budget))
        q = ConvexityQuery("generalized-convex", B, 0.5, g, budget=budget)
        gc = check_generalized_convex(q)
        verified = gc.is_counterexample and verify_witness(gc, q)
        total += ecf.checked
        ok &= ecf.status == "no-counterexample-found" and verified
        rows.append({"name": name, "gECF": ecf.status, "gECF_checked": ecf.checked,
                     "generalized_convex": gc.status, "witness_verified": verified})
    return ok and total >= 100_000, {"examples": rows, "total_checked": total}


# ---------------------------------------------------------------------------
# c09-c10: means and wave


def c09_prop1(seed, tol):
    rep = prop_mean_bound_1(1.0, 2.0, 0.5, 1.0)
    f = lambda x: x ** 0.5
    lhs_oracle = abs(f(1.5) - adaptive_simpson(f, 1.0, 2.0))
    rhs_oracle = 1.0 / 48.0 * 0.25 * (1.0 + 2.0 ** -1.5)
    ok = (rep.satisfied and _close(rep.lhs, lhs_oracle, 1e-6) and _close(rep.rhs, rhs_oracle, 1e-6)
          and _close(rep.lhs, PROP1_GOLDEN[0], 1e-6) and _close(rep.rhs, PROP1_GOLDEN[1], 1e-6))
    return ok, {"lhs": rep.lhs, "rhs": rep.rhs, "lhs_oracle": lhs_oracle, "rhs_oracle": rhs_oracle}


def c10_wave(seed, tol):
    rng = _rng(seed, 10)
    worst = 0.0
    n = 32
    for a, x, t in zip(rng.uniform(0.05, 1.0, n), rng.uniform(0.01, 5.0, n), rng.uniform(0.0, 5.0, n)):
        for aa in (float(a), 1.0):
            lhs, rhs = wave_residual(float(x), float(t), aa)
            got, want = wave_initial_value(float(x), aa)
            worst = max(worst, abs(lhs - 1.0), abs(rhs), abs(got - want))
    return worst <= 1e-12, {"samples": 2 * n, "worst_deviation_from_1_0": worst}


# ---------------------------------------------------------------------------
# c11: closure properties on randomized premise-satisfying instances


def _pbudget(seed):
    return Budget(PROPERTY_BUDGET[0], PROPERTY_BUDGET[1], seed)


def _rand_alpha(rng) -> float:
    return float(rng.choice(ALPHAS))


def _rand_convex_poly(rng, a: float) -> FractalPoly:
    """Nonnegative, nondecreasing and convex on ``x >= 0``: every exponent ``k a`` is at least 1."""
    terms = [(float(rng.uniform(0.0, 1.0)), 0.0)]
    for _ in range(int(rng.integers(1, 3))):
        terms.append((float(rng.uniform(0.1, 2.0)), float(rng.uniform(1.0, 3.0)) / a))
    return FractalPoly(a, tuple(terms))


def _rand_affine(rng):
    """``E(x) = c x + d`` with ``c > 0`` mapping [0, 1] into the nonnegatives."""
    return AffineMap(((float(rng.uniform(0.2, 1.0)),),), (float(rng.uniform(0.0, 0.5)),))


def _instance(rng, seed, name, run) -> dict:
    out = run(rng, seed)
    out["name"] = name
    return out


def _status(c) -> str:
    return c.status


def prop_composition(rng, seed):
    a = _rand_alpha(rng)
    B, E = interval(0.0, 1.0), _rand_affine(rng)
    inner = PolyFn(FractalPoly(1.0, ((float(rng.uniform(0.1, 1.0)), 2.0), (float(rng.uniform(-0.5, 0.5)), 1.0),
                                      (float(rng.uniform(0.5, 1.0)), 0.0))))
    outer = PolyFn(_rand_convex_poly(rng, a))
    b = _pbudget(seed)
    ecf = check_gECF(ConvexityQuery("E-convex-fn", B, a, inner, E, budget=b))
    # the inner range lies in [0.25, 2.5], so the outer premise is certified on [0, 3]
    outer_gc = check_generalized_convex(ConvexityQuery("generalized-convex", interval(0.0, 3.0), a, outer, budget=b))
    comp = check_gECF(ConvexityQuery("gECF", B, a, Compose(outer, inner), E, budget=b))
    premise = not ecf.is_counterexample and not outer_gc.is_counterexample
    return {"alpha": a, "premise": premise, "status": comp.status, "ok": (not premise) or not comp.is_counterexample}


def prop_weighted_sum(rng, seed):
    a = _rand_alpha(rng)
    B, E, b = interval(0.0, 1.0), _rand_affine(rng), _pbudget(seed)
    fns = [PolyFn(_rand_convex_poly(rng, a)) for _ in range(3)]
    premise = all(not check_gECF(ConvexityQuery("gECF", B, a, f, E, budget=b)).is_counterexample for f in fns)
    ks = [float(v) for v in rng.uniform(0.0, 3.0, len(fns))]
    total = WeightedSum(tuple((k ** a, f) for k, f in zip(ks, fns)))
    c = check_gECF(ConvexityQuery("gECF", B, a, total, E, budget=b))
    return {"alpha": a, "premise": premise, "status": c.status, "ok": (not premise) or not c.is_counterexample}


def prop_sup(rng, seed):
    a = _rand_alpha(rng)
    B, E, b = interval(0.0, 1.0), _rand_affine(rng), _pbudget(seed)
    fns = [PolyFn(_rand_convex_poly(rng, a)) for _ in range(3)]
    premise = all(not check_gECF(ConvexityQuery("gECF", B, a, f, E, budget=b)).is_counterexample for f in fns)
    c = check_gECF(ConvexityQuery("gECF", B, a, SupFamily(tuple(fns)), E, budget=b))
    # quasiconvex members: shifted parabolas at alpha = 1
    sq = PolyFn(FractalPoly.monomial(1.0, 2.0), even_power=True)
    shifts = [float(v) for v in rng.uniform(-0.5, 1.5, 3)]
    parabolas = [AffinePre(sq, 1.0, -c0) for c0 in shifts]
    qpremise = all(not check_quasiconvex(ConvexityQuery("gE-quasiconvex", B, 1.0, p, E, budget=b), "E").is_counterexample
                   for p in parabolas)
    qc = check_quasiconvex(ConvexityQuery("gE-quasiconvex", B, 1.0, SupFamily(tuple(parabolas)), E, budget=b), "E")
    premise &= qpremise
    ok = (not premise) or not (c.is_counterexample or qc.is_counterexample)
    return {"alpha": a, "premise": premise, "status": [c.status, qc.status], "ok": ok}


def prop_implication(rng, seed):
    a = _rand_alpha(rng)
    B, E, b = interval(0.0, 1.0), _rand_affine(rng), _pbudget(seed)
    g = PolyFn(_rand_convex_poly(rng, a))
    ecf = check_gECF(ConvexityQuery("gECF", B, a, g, E, budget=b))
    qc = check_quasiconvex(ConvexityQuery("gE-quasiconvex", B, a, g, E, budget=b), "E")
    premise = not ecf.is_counterexample
    return {"alpha": a, "premise": premise, "status": qc.status, "ok": (not premise) or not qc.is_counterexample}


def prop_restriction(rng, seed):
    B, b = interval(0.0, 1.0), _pbudget(seed)
    scale, shift = float(rng.uniform(0.5, 2.0)), float(rng.uniform(-1.0, 1.0))
    E = AffineMap(((scale,),), (shift,))
    centre = float(rng.uniform(shift, shift + scale))
    g = AffinePre(PolyFn(FractalPoly.monomial(1.0, 2.0), even_power=True), 1.0, -centre)
    premise = not check_quasiconvex(ConvexityQuery("gE-quasiconvex", B, 1.0, g, E, budget=b), "E").is_counterexample
    lo, hi = sorted(float(v) for v in rng.uniform(shift, shift + scale, 2))
    if hi - lo < 1e-3:
        lo, hi = shift, shift + scale
    c = check_quasiconvex(ConvexityQuery("generalized-quasiconvex", interval(lo, hi), 1.0, g, budget=b), "plain")
    return {"alpha": 1.0, "premise": premise, "status": c.status, "ok": (not premise) or not c.is_counterexample}


def prop_level_sets(rng, seed, negative: bool):
    a = _rand_alpha(rng)
    B, E, b = interval(0.0, 1.0), _rand_affine(rng), _pbudget(seed)
    if negative:
        centre = float(E.offset[0] + E.matrix[0][0] * rng.uniform(0.3, 0.7))
        sq = PolyFn(FractalPoly.monomial(1.0, 2.0, -1.0), even_power=True)
        g = AffinePre(sq, 1.0, -centre)
    else:
        g = PolyFn(_rand_convex_poly(rng, a))
    qc = check_quasiconvex(ConvexityQuery("gE-quasiconvex", B, a, g, E, budget=b), "E")
    ls = check_level_sets_convex(g, E, B, budget=b)
    return {"alpha": a, "premise": True, "negative": negative, "status": [qc.status, ls.status],
            "ok": qc.is_counterexample == ls.is_counterexample}


def prop_intersection(rng, seed):
    a = _rand_alpha(rng)
    B, b = interval(0.0, 1.0), _pbudget(seed)
    fns = [PolyFn(_rand_convex_poly(rng, a)) for _ in range(2)]
    members = [LiftedRegion(B, EpigraphLift(f, None, 2.0)) for f in fns]
    premise = all(not check_gECF(ConvexityQuery("gECF", B, a, f, budget=b)).is_counterexample for f in fns)
    c = check_intersection_closure(members, None, a, b)
    sup = SupFamily(tuple(fns))
    agree = True
    for x, r in zip(rng.uniform(0.0, 1.0, 64), rng.uniform(0.0, 6.0, 64)):
        p = EAlphaPoint((float(x),), float(r))
        both = all(epigraph_membership(f, None, p, B) for f in fns)
        agree &= both == epigraph_membership(sup, None, p, B)
    return {"alpha": a, "premise": premise, "status": c.status, "sup_epigraph_agrees": agree,
            "ok": agree and ((not premise) or not c.is_counterexample)}


PROPERTIES = (
    ("composition", prop_composition),
    ("weighted-sum", prop_weighted_sum),
    ("sup-family", prop_sup),
    ("gECF-implies-E-quasiconvex", prop_implication),
    ("restriction", prop_restriction),
    ("level-set-equivalence", None),
    ("E-alpha-intersection", prop_intersection),
)


def _property_rows(seed: int) -> list[dict]:
    rows = []
    for idx, (name, run) in enumerate(PROPERTIES):
        rng = _rng(seed, 100 + idx)
        results = []
        for i in range(PROPERTY_INSTANCES):
            if run is None:
                res = prop_level_sets(rng, seed, negative=bool(i % 2))
            else:
                res = run(rng, seed)
            results.append(res)
        used = [r for r in results if r["premise"]]
        rows.append({"property": name, "instances": len(results), "premise_satisfying": len(used),
                     "failures": sum(1 for r in results if not r["ok"]), "results": results})
    return rows


def c11_properties(seed, tol):
    rows = _property_rows(seed)
    again = _property_rows(seed)
    deterministic = json.dumps(rows) == json.dumps(again)
    ok = deterministic and all(r["failures"] == 0 and r["premise_satisfying"] >= 5 for r in rows)
    return ok, {"deterministic": deterministic, "properties": rows}


# ---------------------------------------------------------------------------
# c12: anomaly signature


def c12_anomaly(seed, tol):
    a = 0.5
    f = FractalPoly.monomial(a, 1.0)
    cert = check_generalized_convex(ConvexityQuery("generalized-convex", interval(0.0, 1.0), a, PolyFn(f),
                                                   budget=Budget(seed=seed)))
    eq8 = hh_generalized(f, (0.0, 1.0))
    eq11 = hh_s_generalized(f, (0.0, 1.0), 1.0)
    ok = (cert.status == "no-counterexample-found"
          and not eq8.link("right").satisfied
          and _close(eq8.middle, math.pi / 4.0, 1e-9) and _close(eq8.rhs, math.sqrt(0.5), 1e-12)
          and eq11.link("right").satisfied)
    return ok, {"certificate": cert.status, "eq8_middle": eq8.middle, "eq8_rhs": eq8.rhs,
                "eq8_right_satisfied": eq8.link("right").satisfied,
                "eq11_right_satisfied": eq11.link("right").satisfied}


CRITERIA = (
    Criterion("c01", "gamma accuracy", c01_gamma, 0.05),
    Criterion("c02", "power-rule integral law", c02_power_rule),
    Criterion("c03", "midpoint identity on the constant second-derivative family", c03_lemma, 1.0),
    Criterion("c04", "s-convex Hermite-Hadamard tightness for x^(s alpha)", c04_eq11_tightness, 1.0),
    Criterion("c05", "midpoint bound chain at alpha = 1", c05_some2_chain, 1.0),
    Criterion("c06", "Holder-type bound and corollary constants", c06_some7_corollary),
    Criterion("c07", "quarter-point bound for s-concave second derivatives", c07_some9),
    Criterion("c08", "E-convex function examples", c08_examples, 5.0),
    Criterion("c09", "mean proposition goldens", c09_prop1),
    Criterion("c10", "wave residual", c10_wave),
    Criterion("c11", "closure property suites", c11_properties),
    Criterion("c12", "generalized-convex x^alpha anomaly signature", c12_anomaly),
)


def run_criterion(c: Criterion, seed: int, tol: float) -> dict:
    start = time.perf_counter()
    passed, details = c.check(seed, tol)
    elapsed = time.perf_counter() - start
    if c.limit_s is not None and elapsed > c.limit_s:
        passed = False
        details = dict(details, runtime_limit_exceeded=True)
    return {"id": c.cid, "title": c.title, "passed": bool(passed), "details": details}


def run_suite(seed: int = DEFAULT_SEED, tol: float = 1e-9, only=None) -> dict:
    if not isinstance(seed, int) or seed < 0:
        raise InputError(f"seed must be a nonnegative integer, got {seed!r}")
    if not (isinstance(tol, (int, float)) and math.isfinite(tol) and tol > 0):
        raise InputError(f"tolerance must be a finite positive number, got {tol!r}")
    chosen = [c for c in CRITERIA if only is None or c.cid in only]
    rows = [run_criterion(c, seed, tol) for c in chosen]
    return {"schema": SCHEMA, "seed": seed, "criteria": rows, "passed": all(r["passed"] for r in rows)}
