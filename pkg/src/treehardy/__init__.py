"""Causal stationary systems on homogeneous trees and their Hardy space."""
from .errors import (DivergenceError, DomainError, InvalidParameterError, NotInvertibleError,
                     NotPositiveError, NotStationaryCausalError, OutsideDiskWarning,
                     RecursionBreakdownError, TreeHardyError, ValidityRegionError)
from .hardy import (Blaschke, HardySeries, bezout_div, blaschke, h2_inner, h2_norm, kernel,
                    kernel_at_self, linear_factor, point_eval, series_mul)
from .kalgebra import ONE, ZERO, KElement, k2_element
from .schur import (HermitianGram, InterpolationProblem, InterpolationSolution, PSDReport, gram,
                    interpolate, is_psd, schur_kernel)
from .tree import ROOT, FiniteTree, NodeId, build_tree, dist, leq, meet, same_horocycle

__all__ = [
    "Blaschke", "DivergenceError", "DomainError", "FiniteTree", "HardySeries", "HermitianGram",
    "InterpolationProblem", "InterpolationSolution", "InvalidParameterError", "KElement", "NodeId",
    "NotInvertibleError", "NotPositiveError", "NotStationaryCausalError", "ONE", "OutsideDiskWarning",
    "PSDReport", "ROOT", "RecursionBreakdownError", "TreeHardyError", "ValidityRegionError", "ZERO",
    "bezout_div", "blaschke", "build_tree", "dist", "gram", "h2_inner", "h2_norm", "interpolate",
    "is_psd", "k2_element", "kernel", "kernel_at_self", "leq", "linear_factor", "meet", "point_eval",
    "same_horocycle", "schur_kernel", "series_mul",
]
