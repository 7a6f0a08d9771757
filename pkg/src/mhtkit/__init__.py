"""Desk-scale experiments on cancellation in discrete truncated multilinear
Hilbert-type pattern sums: transforms, Gowers norms, dyadic tree analysis and
extremal lower-bound searches."""

from .backend import BACKEND, available_backends
from .bumps import (BumpPair, CertificationError, build_bumps,
                    dyadic_scale_range)
from .dyadic import (DecompositionReport, DyadicInterval, Tree, a_I,
                     a_I_ceiling, bad_intervals, candidate_intervals,
                     epsdel_report, greedy_tree_cover, lemma_law_sum,
                     select_tree_A, tree_members, tree_sum)
from .extremal import (CurvePoint, NormEstimate, alternating_maximize,
                       growth_curve, indicator_search, multiplier_norm_k1)
from .gowers import (GowersNormResult, U2Decomposition, difference_op,
                     gowers_norm_cyclic, gowers_norm_interval, modulation,
                     u2_decompose, von_neumann_check)
from .mht import (SingleScaleWindow, TruncationParams, WeightedBoundReport,
                  dual_form, dyadic_synthesis_residual, kernel_mass,
                  output_support, scale_aggregated_l2_check,
                  single_scale_form, trivial_bound_check, truncated_transform,
                  weighted_von_neumann_check)
from .signals import (CyclicSignal, HolderExponents, IndicatorSet, Signal,
                      lp_norm, maximal_function, min_cardinality_bound_check,
                      pattern_sum)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "available_backends",
    "BumpPair", "CertificationError", "build_bumps", "dyadic_scale_range",
    "DecompositionReport", "DyadicInterval", "Tree", "a_I", "a_I_ceiling",
    "bad_intervals", "candidate_intervals", "epsdel_report",
    "greedy_tree_cover", "lemma_law_sum", "select_tree_A", "tree_members",
    "tree_sum",
    "CurvePoint", "NormEstimate", "alternating_maximize", "growth_curve",
    "indicator_search", "multiplier_norm_k1",
    "GowersNormResult", "U2Decomposition", "difference_op",
    "gowers_norm_cyclic", "gowers_norm_interval", "modulation",
    "u2_decompose", "von_neumann_check",
    "SingleScaleWindow", "TruncationParams", "WeightedBoundReport",
    "dual_form", "dyadic_synthesis_residual", "kernel_mass",
    "output_support", "scale_aggregated_l2_check", "single_scale_form",
    "trivial_bound_check", "truncated_transform",
    "weighted_von_neumann_check",
    "CyclicSignal", "HolderExponents", "IndicatorSet", "Signal", "lp_norm",
    "maximal_function", "min_cardinality_bound_check", "pattern_sum",
    "__version__",
]
