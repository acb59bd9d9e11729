"""Checkers for the known inequalities the extensions build on.

Every ``evaluate_*`` returns an :class:`Evaluation` whose ``lhs``/``rhs`` are
the two sides exactly as compared; Hilbert-Schmidt-only checkers ignore any
norm argument.
"""

from __future__ import annotations

import math

from .base import (
    Evaluation,
    NormSpec,
    RefinedTerms,
    Variant,
    adjoint,
    check_p,
    check_spec,
    grams,
    hs,
    hs2,
    judge,
    matrices,
    norm,
    psd_pair,
    refined_hs_terms,
)


def evaluate_cs_bhatia_davis(A, B, X, spec: NormSpec | None = None) -> Evaluation:
    """Matrix Cauchy-Schwarz: ``|||AXB*|||^2 <= |||A*AX||| |||XB*B|||``."""
    A, B, X = matrices(A, B, X)
    spec = check_spec(spec, A.shape[0])
    ga, gb = adjoint(A) @ A, adjoint(B) @ B
    lhs = norm(A @ X @ adjoint(B), spec) ** 2
    left, right = norm(ga @ X, spec), norm(X @ gb, spec)
    return judge(lhs, left * right, norm_gax=left, norm_xgb=right)


def evaluate_kittaneh_interp(A, B, X, p: float, spec: NormSpec | None = None) -> Evaluation:
    """``|||AXB*|||^2 <= |||(A*A)^p X (B*B)^(1-p)||| |||(A*A)^(1-p) X (B*B)^p|||``."""
    A, B, X = matrices(A, B, X)
    spec = check_spec(spec, A.shape[0])
    ip = check_p(p, "closed")
    ga, gb = grams(A, B)
    lhs = norm(A @ X @ adjoint(B), spec) ** 2
    f1 = norm(ga.power(ip.p) @ X @ gb.power(ip.q), spec)
    f2 = norm(ga.power(ip.q) @ X @ gb.power(ip.p), spec)
    return judge(lhs, f1 * f2, factor1=f1, factor2=f2)


def evaluate_audenaert(A, B, p: float, spec: NormSpec | None = None) -> Evaluation:
    """``|||AB*|||^2 <= |||pA*A + (1-p)B*B||| |||(1-p)A*A + pB*B|||``."""
    A, B = matrices(A, B)
    spec = check_spec(spec, A.shape[0])
    ip = check_p(p, "closed")
    ga, gb = adjoint(A) @ A, adjoint(B) @ B
    lhs = norm(A @ adjoint(B), spec) ** 2
    f1 = norm(ip.p * ga + ip.q * gb, spec)
    f2 = norm(ip.q * ga + ip.p * gb, spec)
    return judge(lhs, f1 * f2, factor1=f1, factor2=f2)


def evaluate_zou_jiang(A, B, X, p: float, spec: NormSpec | None = None) -> Evaluation:
    """``|||AXB*|||^2 <= |||pA*AX + (1-p)XB*B||| |||(1-p)A*AX + pXB*B|||``."""
    A, B, X = matrices(A, B, X)
    spec = check_spec(spec, A.shape[0])
    ip = check_p(p, "closed")
    gax, xgb = adjoint(A) @ A @ X, X @ adjoint(B) @ B
    lhs = norm(A @ X @ adjoint(B), spec) ** 2
    f1 = norm(ip.p * gax + ip.q * xgb, spec)
    f2 = norm(ip.q * gax + ip.p * xgb, spec)
    return judge(lhs, f1 * f2, factor1=f1, factor2=f2)


def refined_bound(lhs: float, t1: RefinedTerms, t2: RefinedTerms, weight: float,
                  variant) -> Evaluation:
    """Compare ``lhs`` with ``sqrt(P1 P2)`` (proof-consistent) or ``P1 P2`` (as printed)."""
    p1, p2 = t1.value, t2.value
    if Variant(variant) is Variant.AS_PRINTED:
        rhs = p1 * p2
    else:
        rhs = math.sqrt(p1) * math.sqrt(p2)
    return judge(lhs, rhs, term1=p1, term2=p2, correction1=weight ** 2 * t1.diff,
                 correction2=weight ** 2 * t2.diff)


def evaluate_hs_refined(A, B, X, p: float, variant=Variant.PROOF_CONSISTENT) -> Evaluation:
    """Hilbert-Schmidt refinement of the Zou-Jiang bound with ``r = min(p, 1-p)``.

    With ``P1 = ||pA*AX + (1-p)XB*B||^2 - r^2 ||A*AX - XB*B||^2`` and ``P2``
    the mirror image, the proof-consistent form bounds ``||AXB*||^2`` by
    ``sqrt(P1 P2)``; the as-printed form drops the square root.
    """
    A, B, X = matrices(A, B, X)
    ip = check_p(p, "closed")
    ga, gb = grams(A, B)
    lhs = hs2(A @ X @ adjoint(B))
    args = (ga.eigenvalues, ga.vectors, gb.eigenvalues, gb.vectors, X)
    return refined_bound(lhs, refined_hs_terms(*args, ip.p), refined_hs_terms(*args, ip.q),
                         ip.r, variant)


def evaluate_kosaki(A, B, X, p: float) -> Evaluation:
    """``||A^p X B^(1-p)||_2 <= ||pAX + (1-p)XB||_2`` for PSD A, B."""
    A, B, X = matrices(A, B, X)
    ip = check_p(p, "closed")
    sa, sb = psd_pair(A, B)
    lhs = hs(sa.power(ip.p) @ X @ sb.power(ip.q))
    return judge(lhs, hs(ip.p * A @ X + ip.q * X @ B))


def evaluate_refined_young_hs(A, B, X, p: float) -> Evaluation:
    """``||A^p X B^(1-p)||_2^2 + r^2 ||AX - XB||_2^2 <= ||pAX + (1-p)XB||_2^2``."""
    A, B, X = matrices(A, B, X)
    ip = check_p(p, "closed")
    sa, sb = psd_pair(A, B)
    ax, xb = A @ X, X @ B
    core = hs2(sa.power(ip.p) @ X @ sb.power(ip.q))
    corr = ip.r ** 2 * hs2(ax - xb)
    return judge(core + corr, hs2(ip.p * ax + ip.q * xb), mean_term=core, correction=corr)


def zhao_wu_terms(sa, sb, X, ip, variant):
    """Correction terms of the Zhao-Wu refinement at weight ``p`` on A.

    Returns ``(geo_term, diff_term, diff_coefficient)`` where ``geo_term`` is
    ``||A^(1/2) X B^(1/2) - Y||_2^2``.  In the proof-consistent form
    ``Y = XB`` for ``p <= 1/2`` and ``Y = AX`` otherwise, with coefficient
    ``r^2`` on ``||AX - XB||_2^2``.  The as-printed form pairs ``Y = AX``
    with ``(1-p)^2`` for ``p <= 1/2`` and ``Y = XB`` with ``p^2`` otherwise.
    """
    A, B = sa.matrix, sb.matrix
    ax, xb = A @ X, X @ B
    geo = sa.power(0.5) @ X @ sb.power(0.5)
    low = ip.p <= 0.5
    if Variant(variant) is Variant.AS_PRINTED:
        anchor = ax if low else xb
        coef = ip.q ** 2 if low else ip.p ** 2
    else:
        anchor = xb if low else ax
        coef = ip.r ** 2
    return hs2(geo - anchor), hs2(ax - xb), coef


def evaluate_zhao_wu(A, B, X, p: float, variant=Variant.PROOF_CONSISTENT) -> Evaluation:
    """Zhao-Wu refinement for PSD A, B and ``0 < p < 1``::

        ||A^p X B^(1-p)||^2 + r0 ||A^(1/2) X B^(1/2) - Y||^2 + c ||AX - XB||^2
            <= ||pAX + (1-p)XB||^2

    with ``r0 = min(2r, 1-2r)``; see :func:`zhao_wu_terms` for ``Y`` and ``c``.
    """
    A, B, X = matrices(A, B, X)
    ip = check_p(p, "open")
    sa, sb = psd_pair(A, B)
    geo, diff, coef = zhao_wu_terms(sa, sb, X, ip, variant)
    core = hs2(sa.power(ip.p) @ X @ sb.power(ip.q))
    lhs = core + ip.r0_zw * geo + coef * diff
    rhs = hs2(ip.p * A @ X + ip.q * X @ B)
    return judge(lhs, rhs, mean_term=core, geo_term=geo, diff_term=diff, r0=ip.r0_zw)


def evaluate_young_ando(A, B, p: float, spec: NormSpec | None = None) -> Evaluation:
    """Matrix Young inequality ``|||A^p B^(1-p)||| <= |||pA + (1-p)B|||`` for PSD A, B."""
    A, B = matrices(A, B)
    spec = check_spec(spec, A.shape[0])
    ip = check_p(p, "closed")
    sa, sb = psd_pair(A, B)
    lhs = norm(sa.power(ip.p) @ sb.power(ip.q), spec)
    return judge(lhs, norm(ip.p * A + ip.q * B, spec))
