"""Convexity certification and Hermite-Hadamard bounds for local fractional calculus."""

from .alpha import AlphaCtx, FractalScalar, alpha_pow, gamma, gamma_ratio, hh_constant, rgamma
from .bounds import (HolderPair, IneqReport, Link, bound_corollary, bound_some2, bound_some6,
                     bound_some9, hh_classical, hh_generalized, hh_s_classical, hh_s_generalized,
                     lemma_midpoint_identity, lemma_report, reverse_hh_premise)
from .convexity import (Certificate, ConvexityQuery, check_E_convex_set, check_E_image_subset,
                        check_gECF, check_generalized_convex, check_quasiconvex, check_s_convex,
                        run_query, verify_witness)
from .epigraph import (EAlphaPoint, EpigraphLift, LiftedRegion, check_E_alpha_convex_set,
                       check_idempotent, check_intersection_closure, check_level_sets_convex,
                       epigraph_membership, level_set_membership)
from .errors import (DomainError, FractalConvexError, InputError, NumericalError,
                     UnsupportedExponentError, UnsupportedFamilyError, WitnessError)
from .fpoly import FractalPoly, Interval, antiderivative, d_alpha, evaluate, lf_integral, parse_fpoly
from .functions import (AffineMap, AffinePre, Box, ComponentwiseMap, Compose, Guard, Halfspaces,
                        IdentityMap, Piecewise, PolyFn, Product, Simplex, SupFamily, WeightedSum,
                        apply_emap, eval_fn, interval, region_contains)
from .means import (MeanKind, mean, prop_mean_bound_1, prop_mean_bound_2, wave_residual,
                    wave_solution_eval)
from .sampling import Budget
from .suite import run_suite

__all__ = [name for name in dir() if not name.startswith("_")]
