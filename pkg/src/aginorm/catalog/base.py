"""Shared evaluation record, parameter derivation and helpers for checkers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..calculus import Spectral
from ..errors import InvalidParam, NumericalAnomaly
from ..linalg import adjoint, as_matrix, gram, same_dim
from ..norms import HS, OP, NormSpec, within_tolerance
from ..norms import norm as _norm

P_MIN = 1e-3
NEGATIVE_BAND = 1e-12


class Variant(str, Enum):
    PROOF_CONSISTENT = "proof-consistent"
    AS_PRINTED = "as-printed"


@dataclass(frozen=True)
class InterpolationParams:
    """``p`` with the derived weights used by the refined inequalities.

    ``r = min(p, 1-p)``; ``r0_zw = min(2r, 1-2r)`` weights the geometric-mean
    correction of the Zhao-Wu family; ``r0_sab = min(p, 1-p)`` is the weight
    of the norm-level refined Young inequality.
    """

    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0 or math.isnan(self.p):
            raise InvalidParam(f"p must lie in [0, 1], got {self.p}")

    @property
    def q(self) -> float:
        return 1.0 - self.p

    @property
    def r(self) -> float:
        return min(self.p, 1.0 - self.p)

    @property
    def r0_zw(self) -> float:
        r = self.r
        return min(2 * r, 1 - 2 * r)

    @property
    def r0_sab(self) -> float:
        return min(self.p, 1.0 - self.p)


@dataclass(frozen=True)
class Evaluation:
    lhs: float
    rhs: float
    gap: float
    relative_gap: float
    satisfied: bool
    diagnostics: dict = field(default_factory=dict, compare=False)


def judge(lhs: float, rhs: float, **diagnostics) -> Evaluation:
    lhs, rhs = float(lhs), float(rhs)
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        raise NumericalAnomaly(f"non-finite sides: lhs={lhs}, rhs={rhs}")
    gap = rhs - lhs
    diag = {k: float(v) for k, v in diagnostics.items()}
    return Evaluation(lhs, rhs, gap, gap / max(1.0, rhs), within_tolerance(lhs, rhs), diag)


def check_p(p: float, domain: str) -> InterpolationParams:
    """Validate ``p`` against ``closed`` [0,1], ``open`` (0,1) or ``inner`` [1e-3, 1-1e-3]."""
    p = float(p)
    if domain == "closed":
        ok = 0.0 <= p <= 1.0
    elif domain == "open":
        ok = 0.0 < p < 1.0
    elif domain == "inner":
        ok = P_MIN <= p <= 1.0 - P_MIN
    else:
        raise ValueError(domain)
    if not ok:
        raise InvalidParam(f"p = {p} outside the {domain} admissible interval")
    return InterpolationParams(p)


def clamp_nonnegative(value: float, scale: float, name: str) -> float:
    """Clamp roundoff-level negatives to zero; larger negatives are anomalies.

    ``scale`` is the magnitude of the terms whose difference produced
    ``value``; the band is ``1e-12 * max(1, scale)``.
    """
    if value >= 0:
        return value
    if value >= -NEGATIVE_BAND * max(1.0, scale):
        return 0.0
    raise NumericalAnomaly(f"{name} = {value:.6e} is negative beyond roundoff")


def norm(m: np.ndarray, spec: NormSpec) -> float:
    """Norm of an intermediate matrix; overflowed entries are a NumericalAnomaly."""
    if not np.all(np.isfinite(m)):
        raise NumericalAnomaly("intermediate matrix overflowed")
    return _norm(m, spec)


def hs(m: np.ndarray) -> float:
    return norm(m, HS)


def hs2(m: np.ndarray) -> float:
    x = hs(m)
    return x * x


def refined_weight(w: float, lam: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """``(w lam + (1-w) mu)^2 - r^2 (lam - mu)^2`` with ``r = min(w, 1-w)``, factored.

    For ``w <= 1/2`` this equals ``mu (2w lam + (1-2w) mu)``, otherwise
    ``lam ((2w-1) lam + 2(1-w) mu)``; both are products of non-negative
    terms for ``lam, mu >= 0``, so no cancellation occurs.
    """
    if w <= 0.5:
        return mu * (2 * w * lam + (1 - 2 * w) * mu)
    return lam * ((2 * w - 1) * lam + 2 * (1 - w) * mu)


@dataclass(frozen=True)
class RefinedTerms:
    mean: float
    diff: float
    value: float


def refined_hs_terms(lam: np.ndarray, va: np.ndarray, mu: np.ndarray, vb: np.ndarray,
                     X: np.ndarray, w: float) -> RefinedTerms:
    """HS quantities for ``P = ||w L X + (1-w) X M||^2 - r^2 ||L X - X M||^2``.

    ``L = va diag(lam) va*`` and ``M = vb diag(mu) vb*`` are PSD.  In their
    eigenbases ``Y = va* X vb`` every HS norm is a weighted sum of
    ``|y_ij|^2``, which lets ``value`` be summed from the factored weight of
    :func:`refined_weight` instead of as a difference of two large numbers.
    """
    y2 = np.abs(adjoint(va) @ X @ vb) ** 2
    L, M = lam[:, None], mu[None, :]
    with np.errstate(over="ignore", invalid="ignore"):
        mean = float(np.sum(y2 * (w * L + (1 - w) * M) ** 2))
        diff = float(np.sum(y2 * (L - M) ** 2))
        value = float(np.sum(y2 * refined_weight(w, L, M)))
    if not all(map(math.isfinite, (mean, diff, value))):
        raise NumericalAnomaly("refined Hilbert-Schmidt term overflowed")
    return RefinedTerms(mean, diff, value)


def matrices(*mats):
    out = [as_matrix(m) for m in mats]
    same_dim(*out)
    return out


def check_spec(spec: NormSpec | None, n: int, default: NormSpec = OP) -> NormSpec:
    spec = default if spec is None else spec
    spec.check_dim(n)
    return spec


def grams(a: np.ndarray, b: np.ndarray) -> tuple[Spectral, Spectral]:
    return Spectral(gram(a)), Spectral(gram(b))


def psd_pair(a: np.ndarray, b: np.ndarray) -> tuple[Spectral, Spectral]:
    """Spectral handles for inputs that must themselves be PSD."""
    return Spectral(a), Spectral(b)


__all__ = [
    "P_MIN", "Variant", "InterpolationParams", "Evaluation", "judge", "check_p",
    "clamp_nonnegative", "hs", "hs2", "matrices", "check_spec", "grams", "psd_pair",
    "adjoint", "norm", "HS", "OP", "NormSpec", "refined_weight",
    "RefinedTerms", "refined_hs_terms",
]
