"""Checkers for the function-pair and exponent-quad interpolations and their refinements."""

from __future__ import annotations

import math

import numpy as np

from ..calculus import ExponentQuad, FunctionPair, ScalarFunction, Spectral, validate_pair
from ..errors import InvalidParam
from ..norms import OP
from .base import (
    Evaluation,
    NormSpec,
    Variant,
    adjoint,
    check_p,
    check_spec,
    clamp_nonnegative,
    grams,
    hs,
    hs2,
    judge,
    matrices,
    norm,
    psd_pair,
    refined_hs_terms,
)
from .classic import refined_bound

Power = ScalarFunction.power


def _require_pair(pair: FunctionPair, target: float, *spectra: Spectral) -> None:
    if abs(pair.product_power - target) > 1e-12:
        raise InvalidParam(f"function pair {pair} must have product power {target}")
    extra = [s.eigenvalues for s in spectra]
    check = validate_pair(pair, extra=extra)
    if not check.ok:
        raise InvalidParam(f"pair {pair} fails f1*f2 = t^{target:g} at t = {check.worst_point:.6g} "
                           f"(relative error {check.worst_error:.3e})")


def _require_quad(quad: ExponentQuad, target: float) -> None:
    if quad.target != target:
        raise InvalidParam(f"exponent quad must have target {target}, got {quad.target}")


def _general_pairs_need_operator(spec: NormSpec, *pairs: FunctionPair) -> None:
    # The compound-matrix argument needs multiplicative (power) functions.
    if spec != OP and not all(p.is_power for p in pairs):
        raise InvalidParam("non-power function pairs are only supported with the operator norm")


def evaluate_thm21(A, B, X, fpair: FunctionPair, gpair: FunctionPair) -> Evaluation:
    """Operator-norm bound ``||AXB*||^2 <= ||f1(A*A) X g1(B*B)|| ||f2(A*A) X g2(B*B)||``.

    Both pairs must multiply to ``t`` on a log grid and on the spectra of
    ``A*A`` and ``B*B``.
    """
    A, B, X = matrices(A, B, X)
    ga, gb = grams(A, B)
    _require_pair(fpair, 1.0, ga, gb)
    _require_pair(gpair, 1.0, ga, gb)
    lhs = norm(A @ X @ adjoint(B), OP) ** 2
    f1 = norm(ga.apply(fpair.first) @ X @ gb.apply(gpair.first), OP)
    f2 = norm(ga.apply(fpair.second) @ X @ gb.apply(gpair.second), OP)
    return judge(lhs, f1 * f2, factor1=f1, factor2=f2)


def evaluate_exponent_interp(A, B, X, quad: ExponentQuad, spec: NormSpec | None = None) -> Evaluation:
    """``|||AXB*|||^2 <= |||(A*A)^m X (B*B)^s||| |||(A*A)^n X (B*B)^t|||`` with m+n = s+t = 1."""
    A, B, X = matrices(A, B, X)
    spec = check_spec(spec, A.shape[0])
    _require_quad(quad, 1.0)
    ga, gb = grams(A, B)
    lhs = norm(A @ X @ adjoint(B), spec) ** 2
    f1 = norm(ga.power(quad.m) @ X @ gb.power(quad.s), spec)
    f2 = norm(ga.power(quad.n) @ X @ gb.power(quad.t), spec)
    return judge(lhs, f1 * f2, factor1=f1, factor2=f2)


def evaluate_exponent_interp_psd(A, B, X, p: float, spec: NormSpec | None = None) -> Evaluation:
    """PSD special case ``|||A^(1/2) X B^(1/2)|||^2 <= |||A^p X B^(1-p)||| |||A^(1-p) X B^p|||``."""
    A, B, X = matrices(A, B, X)
    spec = check_spec(spec, A.shape[0])
    ip = check_p(p, "closed")
    sa, sb = psd_pair(A, B)
    lhs = norm(sa.power(0.5) @ X @ sb.power(0.5), spec) ** 2
    f1 = norm(sa.power(ip.p) @ X @ sb.power(ip.q), spec)
    f2 = norm(sa.power(ip.q) @ X @ sb.power(ip.p), spec)
    return judge(lhs, f1 * f2, factor1=f1, factor2=f2)


def power_pairs(quad: ExponentQuad) -> tuple[FunctionPair, FunctionPair]:
    """``(t^m, t^n)`` for A and ``(t^s, t^t)`` for B."""
    return (FunctionPair.powers(quad.m, quad.n, quad.target),
            FunctionPair.powers(quad.s, quad.t, quad.target))


def evaluate_cor23(A, B, fpair: FunctionPair, gpair: FunctionPair, p: float,
                   spec: NormSpec | None = None) -> Evaluation:
    """Audenaert-type bound from two function pairs::

        |||AB*|||^2 <= |||p f1(A*A)^(1/p) + (1-p) g1(B*B)^(1/(1-p))|||
                       x |||(1-p) f2(A*A)^(1/(1-p)) + p g2(B*B)^(1/p)|||

    Power pairs give the exponent form valid in every unitarily invariant
    norm; other pairs are restricted to the operator norm.
    """
    A, B = matrices(A, B)
    spec = check_spec(spec, A.shape[0])
    ip = check_p(p, "inner")
    _general_pairs_need_operator(spec, fpair, gpair)
    ga, gb = grams(A, B)
    _require_pair(fpair, 1.0, ga, gb)
    _require_pair(gpair, 1.0, ga, gb)
    lhs = norm(A @ adjoint(B), spec) ** 2
    ep, eq = 1.0 / ip.p, 1.0 / ip.q
    f1 = norm(ip.p * ga.apply(fpair.first.then_power(ep)) + ip.q * gb.apply(gpair.first.then_power(eq)), spec)
    f2 = norm(ip.q * ga.apply(fpair.second.then_power(eq)) + ip.p * gb.apply(gpair.second.then_power(ep)), spec)
    return judge(lhs, f1 * f2, factor1=f1, factor2=f2)


def evaluate_cor33(A, B, quad: ExponentQuad, p: float, spec: NormSpec | None = None) -> Evaluation:
    """Exponent-quad instance of :func:`evaluate_cor23` (m+n = s+t = 1)."""
    _require_quad(quad, 1.0)
    fpair, gpair = power_pairs(quad)
    return evaluate_cor23(A, B, fpair, gpair, p, spec)


def evaluate_cor24(A, B, fg: FunctionPair, p: float, spec: NormSpec | None = None,
                   bpair: FunctionPair | None = None) -> Evaluation:
    """Four-factor bound for ``f g = t^2``::

        |||AB*|||^2 <= (|||p f(A*A) + (1-p) h(B*B)||| |||(1-p) f(A*A) + p h(B*B)|||
                        x |||p g(A*A) + (1-p) k(B*B)||| |||(1-p) g(A*A) + p k(B*B)|||)^(1/2)

    where ``(h, k) = bpair`` defaults to ``(g, f)``.  With power pairs
    ``(t^m, t^n)`` and ``(t^s, t^t)`` this is the exponent form with
    ``m + n = s + t = 2``.
    """
    A, B = matrices(A, B)
    spec = check_spec(spec, A.shape[0])
    ip = check_p(p, "closed")
    bpair = fg.swapped() if bpair is None else bpair
    _general_pairs_need_operator(spec, fg, bpair)
    ga, gb = grams(A, B)
    _require_pair(fg, 2.0, ga, gb)
    _require_pair(bpair, 2.0, ga, gb)
    fa, gaa = ga.apply(fg.first), ga.apply(fg.second)
    hb, kb = gb.apply(bpair.first), gb.apply(bpair.second)
    lhs = norm(A @ adjoint(B), spec) ** 2
    factors = [
        norm(ip.p * fa + ip.q * hb, spec),
        norm(ip.q * fa + ip.p * hb, spec),
        norm(ip.p * gaa + ip.q * kb, spec),
        norm(ip.q * gaa + ip.p * kb, spec),
    ]
    rhs = math.prod(math.sqrt(f) for f in factors)
    return judge(lhs, rhs, **{f"factor{i + 1}": f for i, f in enumerate(factors)})


def evaluate_cor34(A, B, quad: ExponentQuad, p: float, spec: NormSpec | None = None) -> Evaluation:
    """Exponent-quad instance of :func:`evaluate_cor24` (m+n = s+t = 2)."""
    _require_quad(quad, 2.0)
    apair, bpair = power_pairs(quad)
    return evaluate_cor24(A, B, apair, p, spec, bpair=bpair)


def evaluate_remark35(A, B, X, quad: ExponentQuad, p: float) -> Evaluation:
    """Hilbert-Schmidt interpolations with an arbitrary X.

    Target 1::

        ||AXB*||^2 <= ||p (A*A)^(m/p) X + (1-p) X (B*B)^(s/(1-p))||
                      x ||(1-p) (A*A)^(n/(1-p)) X + p X (B*B)^(t/p)||

    Target 2 is the four-factor form with ``(A*A)^m, (B*B)^s`` and
    ``(A*A)^n, (B*B)^t``, each factor to the power 1/2.
    """
    A, B, X = matrices(A, B, X)
    ip = check_p(p, "inner")
    ga, gb = grams(A, B)
    lhs = hs2(A @ X @ adjoint(B))
    if quad.target == 1.0:
        f1 = hs(ip.p * ga.power(quad.m / ip.p) @ X + ip.q * X @ gb.power(quad.s / ip.q))
        f2 = hs(ip.q * ga.power(quad.n / ip.q) @ X + ip.p * X @ gb.power(quad.t / ip.p))
        return judge(lhs, f1 * f2, factor1=f1, factor2=f2)
    if quad.target == 2.0:
        am, an = ga.power(quad.m) @ X, ga.power(quad.n) @ X
        bs, bt = X @ gb.power(quad.s), X @ gb.power(quad.t)
        factors = [
            hs(ip.p * am + ip.q * bs),
            hs(ip.q * am + ip.p * bs),
            hs(ip.p * an + ip.q * bt),
            hs(ip.q * an + ip.p * bt),
        ]
        rhs = math.prod(math.sqrt(f) for f in factors)
        return judge(lhs, rhs, **{f"factor{i + 1}": f for i, f in enumerate(factors)})
    raise InvalidParam(f"exponent quad target must be 1 or 2, got {quad.target}")


def evaluate_thm36(A, B, X, quad: ExponentQuad, p: float, variant=Variant.PROOF_CONSISTENT) -> Evaluation:
    """Refined Hilbert-Schmidt form of the target-1 interpolation.

    ``Q1 = ||pA'X + (1-p)XB'||^2 - r^2 ||A'X - XB'||^2`` with
    ``A' = (A*A)^(m/p)``, ``B' = (B*B)^(s/(1-p))``, and ``Q2`` likewise with
    ``A'' = (A*A)^(n/(1-p))``, ``B'' = (B*B)^(t/p)`` and weights swapped.
    The proof-consistent bound is ``sqrt(Q1 Q2)``; as printed it is ``Q1 Q2``.
    """
    A, B, X = matrices(A, B, X)
    ip = check_p(p, "inner")
    _require_quad(quad, 1.0)
    ga, gb = grams(A, B)
    lhs = hs2(A @ X @ adjoint(B))
    lam1, mu1 = ga.spectrum(Power(quad.m / ip.p)), gb.spectrum(Power(quad.s / ip.q))
    lam2, mu2 = ga.spectrum(Power(quad.n / ip.q)), gb.spectrum(Power(quad.t / ip.p))
    t1 = refined_hs_terms(lam1, ga.vectors, mu1, gb.vectors, X, ip.p)
    t2 = refined_hs_terms(lam2, ga.vectors, mu2, gb.vectors, X, ip.q)
    return refined_bound(lhs, t1, t2, ip.r, variant)


def evaluate_cor37(A, B, X, p: float, variant=Variant.PROOF_CONSISTENT) -> Evaluation:
    """:func:`evaluate_thm36` at ``m = t = p``, ``n = s = 1 - p``."""
    p = float(p)
    return evaluate_thm36(A, B, X, ExponentQuad(p, 1 - p, 1 - p, p), p, variant)


def evaluate_thm38(A, B, X, p: float, variant=Variant.PROOF_CONSISTENT) -> Evaluation:
    """Zhao-Wu refinement pushed through the exponent interpolation (HS norm).

    Factor ``i`` is ``F_i = ||w A*AX + (1-w) XB*B||^2 - r0 ||G - Y_i||^2
    - c_i ||A*AX - XB*B||^2`` with ``G = (A*A)^(1/2) X (B*B)^(1/2)``,
    ``w = p`` for the first factor and ``1 - p`` for the second, and the
    bound is ``sqrt(F1) sqrt(F2)``.  Proof-consistent: ``Y_i = XB*B`` when
    ``w <= 1/2`` else ``A*AX`` and ``c_i = r^2``.  As printed: ``Y_i = A*AX``
    for ``p <= 1/2`` (``XB*B`` otherwise) in both factors, ``c_1 = (1-p)^2``,
    ``c_2 = p^2``.
    """
    A, B, X = matrices(A, B, X)
    ip = check_p(p, "open")
    ga, gb = grams(A, B)
    gax, xgb = ga.matrix @ X, X @ gb.matrix
    geo = ga.power(0.5) @ X @ gb.power(0.5)
    diff = hs2(gax - xgb)
    lhs = hs2(A @ X @ adjoint(B))
    printed = Variant(variant) is Variant.AS_PRINTED
    factors, raw = [], []
    for i, w in enumerate((ip.p, ip.q)):
        mean = hs2(w * gax + (1 - w) * xgb)
        if printed:
            anchor = gax if ip.p <= 0.5 else xgb
            coef = ip.q ** 2 if i == 0 else ip.p ** 2
        else:
            anchor = xgb if w <= 0.5 else gax
            coef = ip.r ** 2
        value = mean - ip.r0_zw * hs2(geo - anchor) - coef * diff
        raw.append(value)
        if printed:
            factors.append(max(value, 0.0))
        else:
            factors.append(clamp_nonnegative(value, mean, f"F{i + 1}"))
    rhs = math.sqrt(factors[0]) * math.sqrt(factors[1])
    return judge(lhs, rhs, term1=raw[0], term2=raw[1], r0=ip.r0_zw)


def evaluate_cor39(A, B, p: float, variant=Variant.PROOF_CONSISTENT) -> Evaluation:
    """:func:`evaluate_thm38` with ``X = I``."""
    A, B = matrices(A, B)
    return evaluate_thm38(A, B, np.eye(A.shape[0]), p, variant)


def evaluate_lemma310(A, B, X, p: float, spec: NormSpec | None = None,
                      variant=Variant.PROOF_CONSISTENT) -> Evaluation:
    """Norm-level refined Young inequality for PSD A, B::

        |||A^p X B^(1-p)|||^2 + w (|||AX||| - |||XB|||)^2 <= (p|||AX||| + (1-p)|||XB|||)^2

    ``w = r0^2`` (proof-consistent) or ``r0`` (as printed), ``r0 = min(p, 1-p)``.
    """
    A, B, X = matrices(A, B, X)
    spec = check_spec(spec, A.shape[0])
    ip = check_p(p, "closed")
    sa, sb = psd_pair(A, B)
    x, y = norm(A @ X, spec), norm(X @ B, spec)
    weight = ip.r0_sab if Variant(variant) is Variant.AS_PRINTED else ip.r0_sab ** 2
    core = norm(sa.power(ip.p) @ X @ sb.power(ip.q), spec) ** 2
    corr = weight * (x - y) ** 2
    return judge(core + corr, (ip.p * x + ip.q * y) ** 2, mean_term=core, correction=corr,
                 norm_ax=x, norm_xb=y)


def evaluate_prop311(A, B, X, p: float, spec: NormSpec | None = None) -> Evaluation:
    """``|||AXB*|||^2 <= sqrt(F1) sqrt(F2)`` with norm-level Young corrections.

    ``F1 = (p a + (1-p) b)^2 - r0^2 (a - b)^2``, ``F2`` with p and 1-p
    swapped, where ``a = |||A*AX|||``, ``b = |||XB*B|||``, ``r0 = min(p, 1-p)``.
    """
    A, B, X = matrices(A, B, X)
    spec = check_spec(spec, A.shape[0])
    ip = check_p(p, "closed")
    a = norm(adjoint(A) @ A @ X, spec)
    b = norm(X @ adjoint(B) @ B, spec)
    corr = ip.r0_sab ** 2 * (a - b) ** 2
    m1, m2 = (ip.p * a + ip.q * b) ** 2, (ip.q * a + ip.p * b) ** 2
    f1 = clamp_nonnegative(m1 - corr, m1, "F1")
    f2 = clamp_nonnegative(m2 - corr, m2, "F2")
    lhs = norm(A @ X @ adjoint(B), spec) ** 2
    return judge(lhs, math.sqrt(f1) * math.sqrt(f2), term1=f1, term2=f2, norm_gax=a, norm_xgb=b)


__all__ = [
    "evaluate_thm21", "evaluate_exponent_interp", "evaluate_exponent_interp_psd",
    "evaluate_cor23", "evaluate_cor33", "evaluate_cor24", "evaluate_cor34",
    "evaluate_remark35", "evaluate_thm36", "evaluate_cor37", "evaluate_thm38",
    "evaluate_cor39", "evaluate_lemma310", "evaluate_prop311",
]
