"""Catalog checkers against hand-derived diagonal/scalar closed forms.

Constants marked ``oracle`` were computed once with 40-digit mpmath
arithmetic outside the package and frozen here.
"""

import math

import numpy as np
import pytest

from aginorm.calculus import ExponentQuad, FunctionPair
from aginorm.calculus import matrix_power as mp
from aginorm.catalog import (
    REGISTRY,
    InterpolationParams,
    Variant,
    evaluate_audenaert,
    evaluate_cor23,
    evaluate_cor24,
    evaluate_cor33,
    evaluate_cor34,
    evaluate_cor37,
    evaluate_cor39,
    evaluate_cs_bhatia_davis,
    evaluate_exponent_interp,
    evaluate_exponent_interp_psd,
    evaluate_hs_refined,
    evaluate_kittaneh_interp,
    evaluate_kosaki,
    evaluate_lemma310,
    evaluate_prop311,
    evaluate_refined_young_hs,
    evaluate_remark35,
    evaluate_thm21,
    evaluate_thm36,
    evaluate_thm38,
    evaluate_young_ando,
    evaluate_zhao_wu,
    evaluate_zou_jiang,
    get_case,
    parse_id,
    registry_list,
)
from aginorm.catalog.base import clamp_nonnegative, judge, refined_weight
from aginorm.errors import InvalidParam, NumericalAnomaly, SingularBase
from aginorm.linalg import sample_ginibre, sample_psd
from aginorm.norms import HS, OP, NormSpec, battery

AP = Variant.AS_PRINTED
A2, B2, I2 = np.diag([1.0, 2.0]), np.diag([3.0, 1.0]), np.eye(2)
HALF = np.array([[math.sqrt(0.5)]])


def assert_sides(ev, lhs, rhs, tol=1e-12):
    assert ev.lhs == pytest.approx(lhs, rel=tol, abs=1e-15)
    assert ev.rhs == pytest.approx(rhs, rel=tol, abs=1e-15)


# ---- parameters and judging --------------------------------------------

@pytest.mark.parametrize("p, r, r0zw", [(0.0, 0.0, 0.0), (0.25, 0.25, 0.5), (0.5, 0.5, 0.0), (0.9, 0.1, 0.2)])
def test_interpolation_params(p, r, r0zw):
    ip = InterpolationParams(p)
    assert ip.r == pytest.approx(r) and ip.r0_zw == pytest.approx(r0zw) and ip.r0_sab == pytest.approx(r)


def test_params_reject_out_of_range():
    with pytest.raises(InvalidParam):
        InterpolationParams(1.5)
    with pytest.raises(InvalidParam):
        evaluate_audenaert(I2, I2, -0.1)
    with pytest.raises(InvalidParam):
        evaluate_zhao_wu(I2, I2, I2, 0.0)
    with pytest.raises(InvalidParam):
        evaluate_thm36(I2, I2, I2, ExponentQuad(0.5, 0.5, 0.5, 0.5), 1e-4)


def test_judge_fields():
    ev = judge(1.0, 3.0)
    assert ev.gap == 2.0 and ev.relative_gap == pytest.approx(2 / 3) and ev.satisfied
    assert not judge(2.0, 1.0).satisfied
    with pytest.raises(NumericalAnomaly):
        judge(float("inf"), 1.0)


def test_clamp_nonnegative():
    assert clamp_nonnegative(-1e-13, 1.0, "x") == 0.0
    with pytest.raises(NumericalAnomaly):
        clamp_nonnegative(-1e-6, 1.0, "x")


def test_refined_weight_factorisation(rng):
    lam, mu = rng.uniform(0, 5, 50), rng.uniform(0, 5, 50)
    for w in (0.1, 0.5, 0.8):
        r = min(w, 1 - w)
        direct = (w * lam + (1 - w) * mu) ** 2 - r ** 2 * (lam - mu) ** 2
        assert np.allclose(refined_weight(w, lam, mu), direct, rtol=1e-12, atol=1e-12)


# ---- classic inequalities ----------------------------------------------

def test_cs_bhatia_davis_examples():
    assert evaluate_cs_bhatia_davis(I2, I2, I2).relative_gap == 0
    zero = evaluate_cs_bhatia_davis(A2, B2, np.zeros((2, 2)))
    assert zero.lhs == 0 and zero.rhs == 0 and zero.satisfied
    # AB* = diag(3, 2), so lhs = 9; rhs = ||diag(1,4)|| ||diag(9,1)|| = 36
    assert_sides(evaluate_cs_bhatia_davis(A2, B2, I2), 9.0, 36.0)


def test_kittaneh_examples():
    assert_sides(evaluate_kittaneh_interp(A2, B2, I2, 0.3), 9.0, 12.286035066475315)  # oracle
    assert evaluate_kittaneh_interp(I2, I2, I2, 0.7).relative_gap == pytest.approx(0, abs=1e-15)


def test_kittaneh_p_symmetry(rng):
    a, b, x = (sample_ginibre(rng, 3) for _ in range(3))
    assert evaluate_kittaneh_interp(a, b, x, 0.2).rhs == pytest.approx(
        evaluate_kittaneh_interp(a, b, x, 0.8).rhs, rel=1e-12)


def test_audenaert_examples(rng):
    a = sample_ginibre(rng, 3)
    assert evaluate_audenaert(a, a, 0.3).relative_gap == pytest.approx(0, abs=1e-12)
    assert_sides(evaluate_audenaert(np.diag([1.0, 0]), np.diag([0, 1.0]), 0.5), 0.0, 0.25)
    assert_sides(evaluate_audenaert(A2, np.diag([1.0, 3.0]), 0.5), 36.0, 42.25)


def test_zou_jiang_examples(rng):
    assert_sides(evaluate_zou_jiang(A2, B2, np.diag([1.0, -2.0]), 0.3), 16.0, 40.92)  # oracle
    a, b = sample_ginibre(rng, 3), sample_ginibre(rng, 3)
    zj, au = evaluate_zou_jiang(a, b, np.eye(3), 0.4), evaluate_audenaert(a, b, 0.4)
    assert_sides(zj, au.lhs, au.rhs)


def test_hs_refined_scalar_counterexample():
    pc = evaluate_hs_refined(HALF, HALF, 1.0, 0.5)
    assert_sides(pc, 0.25, 0.25)
    ap = evaluate_hs_refined(HALF, HALF, 1.0, 0.5, AP)
    assert_sides(ap, 0.25, 0.0625)
    assert not ap.satisfied


def test_hs_refined_trivial(rng):
    a = sample_ginibre(rng, 3)
    assert evaluate_hs_refined(a, a, np.eye(3), 0.5).relative_gap == pytest.approx(0, abs=1e-12)
    for v in Variant:
        ev = evaluate_hs_refined(a, sample_ginibre(rng, 3), np.zeros((3, 3)), 0.3, v)
        assert ev.lhs == 0 and ev.satisfied


def test_kosaki_examples():
    x = np.ones((2, 2))
    a, b = np.diag([1.0, 4.0]), np.diag([9.0, 1.0])
    assert_sides(evaluate_kosaki(a, b, x, 0.5), math.sqrt(50), 8.631338250816034)  # oracle
    for p in (0.0, 1.0):
        assert evaluate_kosaki(a, b, x, p).relative_gap == pytest.approx(0, abs=1e-14)
    assert evaluate_kosaki(I2, I2, x, 0.3).relative_gap == pytest.approx(0, abs=1e-14)


def test_refined_young_examples():
    assert_sides(evaluate_refined_young_hs(4.0, 1.0, 1.0, 0.5), 6.25, 6.25)  # oracle
    a = np.diag([2.0, 3.0])
    ev = evaluate_refined_young_hs(a, a, np.diag([1.0, 5.0]), 0.3)
    assert ev.diagnostics["correction"] == 0
    assert evaluate_refined_young_hs(a, a, np.zeros((2, 2)), 0.3).lhs == 0


def test_zhao_wu_scalars():
    assert_sides(evaluate_zhao_wu(4.0, 1.0, 1.0, 0.25), 3.0625, 3.0625)  # oracle
    ap = evaluate_zhao_wu(4.0, 1.0, 1.0, 0.25, AP)
    assert_sides(ap, 9.0625, 3.0625)
    assert not ap.satisfied


def test_zhao_wu_collapses_at_half(rng):
    a, b = sample_psd(rng, 3, 0.1), sample_psd(rng, 3, 0.1)
    x = sample_ginibre(rng, 3)
    zw, ry = evaluate_zhao_wu(a, b, x, 0.5), evaluate_refined_young_hs(a, b, x, 0.5)
    assert_sides(zw, ry.lhs, ry.rhs, 1e-12)


def test_zhao_wu_commuting_equality():
    a = np.diag([2.0, 3.0])
    assert evaluate_zhao_wu(a, a, np.diag([1.0, -1.0]), 0.3).relative_gap == pytest.approx(0, abs=1e-14)


def test_young_ando_examples(rng):
    a, b = np.diag([1.0, 4.0]), np.diag([4.0, 1.0])
    assert_sides(evaluate_young_ando(a, b, 0.5), 2.0, 2.5)
    assert_sides(evaluate_young_ando(a, b, 0.5, HS), 2 * math.sqrt(2), 2.5 * math.sqrt(2))
    c = sample_psd(rng, 3, 0.1)
    for p in (0.0, 0.4, 1.0):
        assert evaluate_young_ando(c, c, p).relative_gap == pytest.approx(0, abs=1e-12)


# ---- extensions --------------------------------------------------------

def test_thm21_examples(rng):
    sq = FunctionPair.powers(0.5, 0.5)
    assert_sides(evaluate_thm21(2.0, 3.0, 1.0, sq, sq), 36.0, 36.0)
    assert evaluate_thm21(I2, I2, I2, sq, sq).relative_gap == pytest.approx(0, abs=1e-15)
    a, b, x = (sample_ginibre(rng, 3) for _ in range(3))
    c = 10 * np.linalg.norm(a.conj().T @ a, 2)
    clip = evaluate_thm21(a, b, x, FunctionPair.clip_split(c), FunctionPair.powers(0.0, 1.0))
    # with the clip inactive f1 = t and f2 = 1, which is the Cauchy-Schwarz bound
    cs = evaluate_cs_bhatia_davis(a, b, x)
    assert_sides(clip, cs.lhs, cs.rhs, 1e-10)


def test_thm21_rejects_bad_pair():
    with pytest.raises(InvalidParam):
        evaluate_thm21(I2, I2, I2, FunctionPair.powers(0.5, 0.6, 1.0), FunctionPair.powers(0.5, 0.5))


def test_exponent_interp_examples(rng):
    quad = ExponentQuad(2, -1, 0.5, 0.5)
    assert_sides(evaluate_exponent_interp(A2, B2, I2, quad), 9.0, 48.0)  # oracle
    a, b, x = (sample_ginibre(rng, 3) for _ in range(3))
    half = ExponentQuad(0.5, 0.5, 0.5, 0.5)
    ei, cs = evaluate_exponent_interp(a, b, x, half), evaluate_cs_bhatia_davis(a, b, x)
    assert ei.lhs == pytest.approx(cs.lhs, rel=1e-12)
    with pytest.raises(SingularBase):
        evaluate_exponent_interp(np.diag([1.0, 0.0]), B2, I2, quad)


def test_exponent_interp_psd_form(rng):
    a, b = sample_psd(rng, 3, 0.1), sample_psd(rng, 3, 0.1)
    for spec in battery(3):
        assert evaluate_exponent_interp_psd(a, b, sample_ginibre(rng, 3), 0.3, spec).satisfied


def test_cor23_examples(rng):
    sq = FunctionPair.powers(0.5, 0.5)
    assert_sides(evaluate_cor23(2.0, 3.0, sq, sq, 0.25), 36.0, 160.40480434730900)  # oracle
    a, b = sample_ginibre(rng, 3), sample_ginibre(rng, 3)
    c23, au = evaluate_cor23(a, b, sq, sq, 0.5), evaluate_audenaert(a, b, 0.5)
    assert_sides(c23, au.lhs, au.rhs, 1e-10)
    assert evaluate_cor23(I2, I2, sq, sq, 0.3).relative_gap == pytest.approx(0, abs=1e-12)
    with pytest.raises(InvalidParam):
        evaluate_cor23(a, b, FunctionPair.clip_split(1.0), sq, 0.5, HS)
    with pytest.raises(InvalidParam):
        evaluate_cor23(a, b, sq, sq, 0.0)


def test_cor33_matches_cor23(rng):
    a, b = sample_ginibre(rng, 3), sample_ginibre(rng, 3)
    quad = ExponentQuad(0.3, 0.7, 0.6, 0.4)
    c33 = evaluate_cor33(a, b, quad, 0.4, NormSpec.ky_fan(2))
    c23 = evaluate_cor23(a, b, FunctionPair.powers(0.3, 0.7), FunctionPair.powers(0.6, 0.4), 0.4,
                         NormSpec.ky_fan(2))
    assert c33 == c23


def test_cor24_examples(rng):
    fg = FunctionPair.powers(1.5, 0.5)
    assert_sides(evaluate_cor24(A2, B2, fg, 0.3), 9.0, 55.590272530362720)  # oracle
    a = sample_ginibre(rng, 3)
    # A = B is an equality case only for f = g = t; other splits stay slack
    assert evaluate_cor24(a, a, FunctionPair.powers(1.0, 1.0), 0.3).relative_gap == pytest.approx(0, abs=1e-12)
    assert evaluate_cor24(a, a, fg, 0.3).relative_gap > 0
    quad = ExponentQuad(1.5, 0.5, 0.5, 1.5, 2.0)
    assert evaluate_cor34(A2, B2, quad, 0.3) == evaluate_cor24(A2, B2, fg, 0.3)


def test_remark35_examples(rng):
    quad = ExponentQuad(0.5, 0.5, 0.3, 0.7)
    assert_sides(evaluate_remark35(2.0, 3.0, 1.0, quad, 0.25), 36.0, 692.85409969793761, 1e-11)  # oracle
    a, b, x = (sample_ginibre(rng, 3) for _ in range(3))
    p = 0.35
    r35 = evaluate_remark35(a, b, x, ExponentQuad(p, 1 - p, 1 - p, p), p)
    zj = evaluate_zou_jiang(a, b, x, p, HS)
    assert_sides(r35, zj.lhs, zj.rhs, 1e-10)
    assert evaluate_remark35(a, b, np.zeros((3, 3)), quad, 0.3).lhs == 0
    two = evaluate_remark35(a, b, x, ExponentQuad(1.2, 0.8, 0.5, 1.5, 2.0), 0.3)
    assert two.satisfied and len(two.diagnostics) == 4


def test_thm36_examples(rng):
    quad = ExponentQuad(0.5, 0.5, 0.5, 0.5)
    assert_sides(evaluate_thm36(HALF, HALF, 1.0, quad, 0.5), 0.25, 0.25)
    ap = evaluate_thm36(HALF, HALF, 1.0, quad, 0.5, AP)
    assert_sides(ap, 0.25, 0.0625) and not ap.satisfied
    assert evaluate_thm36(I2, I2, I2, ExponentQuad(0.3, 0.7, 0.2, 0.8), 0.4).relative_gap == pytest.approx(0, abs=1e-12)


def test_thm36_stable_terms_match_direct_formula(rng):
    for _ in range(25):
        a, b, x = (sample_ginibre(rng, 3, 1 / math.sqrt(3)) for _ in range(3))
        p = float(rng.uniform(0.2, 0.8))
        quad = ExponentQuad.from_free(float(rng.uniform(0, 1)), float(rng.uniform(0, 1)))
        ga, gb = a.conj().T @ a, b.conj().T @ b
        r = min(p, 1 - p)
        a1, b1 = mp(ga, quad.m / p), mp(gb, quad.s / (1 - p))
        a2, b2 = mp(ga, quad.n / (1 - p)), mp(gb, quad.t / p)
        hs2 = lambda m: np.linalg.norm(m) ** 2
        q1 = hs2(p * a1 @ x + (1 - p) * x @ b1) - r ** 2 * hs2(a1 @ x - x @ b1)
        q2 = hs2((1 - p) * a2 @ x + p * x @ b2) - r ** 2 * hs2(a2 @ x - x @ b2)
        ev = evaluate_thm36(a, b, x, quad, p)
        assert ev.diagnostics["term1"] == pytest.approx(q1, rel=1e-9)
        assert ev.diagnostics["term2"] == pytest.approx(q2, rel=1e-9)
        assert ev.rhs == pytest.approx(math.sqrt(q1 * q2), rel=1e-9)


def test_cor37_is_thm36_substitution(rng):
    a, b, x = (sample_ginibre(rng, 3) for _ in range(3))
    p = 0.3
    assert evaluate_cor37(a, b, x, p) == evaluate_thm36(a, b, x, ExponentQuad(p, 1 - p, 1 - p, p), p)


def test_thm38_scalars():
    assert_sides(evaluate_thm38(2.0, 1.0, 1.0, 0.25), 4.0, 4.0)  # oracle
    ap = evaluate_thm38(2.0, 1.0, 1.0, 0.25, AP)
    assert_sides(ap, 4.0, 0.0)
    assert ap.diagnostics["term1"] == pytest.approx(-4.0) and ap.diagnostics["term2"] == pytest.approx(8.0)


def test_thm38_trivial(rng):
    a = sample_ginibre(rng, 3)
    for p in (0.2, 0.5, 0.7):
        assert evaluate_thm38(a, a, np.eye(3), p).relative_gap == pytest.approx(0, abs=1e-10)
    b = sample_ginibre(rng, 3)
    assert evaluate_cor39(a, b, 0.3) == evaluate_thm38(a, b, np.eye(3), 0.3)


def test_lemma310_scalars():
    assert_sides(evaluate_lemma310(4.0, 1.0, 1.0, 0.3), 3.1073967099940700, 3.61)  # oracle
    ap = evaluate_lemma310(4.0, 1.0, 1.0, 0.3, variant=AP)
    assert_sides(ap, 4.9973967099940700, 3.61) and not ap.satisfied
    for p in (0.0, 1.0):
        assert evaluate_lemma310(4.0, 1.0, 1.0, p).relative_gap == pytest.approx(0, abs=1e-14)


def test_lemma310_equal_norms(rng):
    a = np.diag([2.0, 3.0])
    ev = evaluate_lemma310(a, a, np.diag([1.0, 2.0]), 0.3)
    assert ev.diagnostics["correction"] == 0 and ev.satisfied


def test_prop311_examples(rng):
    assert_sides(evaluate_prop311(A2, B2, I2, 0.3), 9.0, 38.884444190447161)  # oracle
    assert evaluate_prop311(I2, I2, I2, 0.3).relative_gap == pytest.approx(0, abs=1e-14)
    a = np.diag([2.0, 1.0])
    ev = evaluate_prop311(a, a, I2, 0.2)
    assert ev.diagnostics["term1"] == pytest.approx(16.0) and ev.diagnostics["term2"] == pytest.approx(16.0)


# ---- registry ------------------------------------------------------------

SPEC_IDS = {"audenaert", "zou-jiang", "hs-refined", "thm36", "thm38", "lemma310", "prop311", "thm21",
            "exp-interp", "cor23", "cor24", "remark35", "kosaki", "refined-young-hs", "zhao-wu",
            "young-ando", "cs-bhatia-davis", "kittaneh-interp"}


def test_registry_contents():
    ids = [c.id for c in registry_list()]
    assert set(ids) == SPEC_IDS and len(ids) == len(set(ids)) >= 16
    assert set(REGISTRY["hs-refined"].variants) == set(Variant)
    assert registry_list() == registry_list()


def test_parse_id():
    case, variant = parse_id("thm36:as-printed")
    assert case.id == "thm36" and variant is AP
    assert get_case("audenaert").id == "audenaert"
    for bad in ("nope", "audenaert:as-printed", "thm36:typo"):
        with pytest.raises(InvalidParam):
            parse_id(bad)


def test_norm_restrictions():
    inst = {"A": I2, "B": I2, "X": I2, "p": 0.3}
    with pytest.raises(InvalidParam):
        REGISTRY["hs-refined"].run(inst, OP)
    with pytest.raises(InvalidParam):
        REGISTRY["thm21"].run({**inst, "fpair": FunctionPair.powers(.5, .5),
                               "gpair": FunctionPair.powers(.5, .5)}, HS)


@pytest.mark.parametrize("case", registry_list(), ids=lambda c: c.id)
def test_every_case_samples_and_runs(case, rng):
    for n in (1, 3):
        inst = case.sample(rng, n)
        for v in case.variants:
            ev = case.run(inst, None, v)
            assert math.isfinite(ev.lhs) and math.isfinite(ev.rhs)
