"""Executable checkers for the interpolated AM-GM / Cauchy-Schwarz norm inequalities."""

from .base import P_MIN, Evaluation, InterpolationParams, Variant, judge
from .classic import (
    evaluate_audenaert,
    evaluate_cs_bhatia_davis,
    evaluate_hs_refined,
    evaluate_kittaneh_interp,
    evaluate_kosaki,
    evaluate_refined_young_hs,
    evaluate_young_ando,
    evaluate_zhao_wu,
    evaluate_zou_jiang,
)
from .extensions import (
    evaluate_cor23,
    evaluate_cor24,
    evaluate_cor33,
    evaluate_cor34,
    evaluate_cor37,
    evaluate_cor39,
    evaluate_exponent_interp,
    evaluate_exponent_interp_psd,
    evaluate_lemma310,
    evaluate_prop311,
    evaluate_remark35,
    evaluate_thm21,
    evaluate_thm36,
    evaluate_thm38,
)
from .registry import REGISTRY, InequalityCase, SamplingSettings, get_case, parse_id, registry_list

__all__ = [name for name in dir() if not name.startswith("_")]
