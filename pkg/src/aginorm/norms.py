"""Unitarily invariant norms as symmetric gauge functions of singular values."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceFailure, InvalidSpec
from .linalg import as_matrix, same_dim

# Global comparison policy, shared with the inequality catalog.
TOL_ABS = 1e-12
TOL_REL = 1e-9

OPERATOR = "op"
KYFAN = "kyfan"
SCHATTEN = "schatten"
HILBERT_SCHMIDT = "hs"


def within_tolerance(lhs: float, rhs: float) -> bool:
    """``lhs <= rhs + 1e-12 + 1e-9 * max(1, rhs)``."""
    return lhs <= rhs + TOL_ABS + TOL_REL * max(1.0, rhs)


@dataclass(frozen=True)
class NormSpec:
    """Selects one unitarily invariant norm.

    ``kind`` is one of ``"op"``, ``"kyfan"``, ``"schatten"``, ``"hs"``;
    ``param`` holds ``k`` for Ky Fan and ``p`` for Schatten.
    """

    kind: str
    param: float | None = None

    def __post_init__(self):
        if self.kind in (OPERATOR, HILBERT_SCHMIDT):
            if self.param is not None:
                raise InvalidSpec(f"{self.kind} takes no parameter")
        elif self.kind == KYFAN:
            k = self.param
            if k is None or int(k) != k or k < 1:
                raise InvalidSpec(f"Ky Fan order must be a positive integer, got {k!r}")
            object.__setattr__(self, "param", int(k))
        elif self.kind == SCHATTEN:
            p = self.param
            if p is None or not np.isfinite(p) or p < 1:
                raise InvalidSpec(f"Schatten exponent must be >= 1, got {p!r}")
            object.__setattr__(self, "param", float(p))
        else:
            raise InvalidSpec(f"unknown norm kind {self.kind!r}")

    @classmethod
    def operator(cls) -> "NormSpec":
        return cls(OPERATOR)

    @classmethod
    def ky_fan(cls, k: int) -> "NormSpec":
        return cls(KYFAN, k)

    @classmethod
    def schatten(cls, p: float) -> "NormSpec":
        return cls(SCHATTEN, p)

    @classmethod
    def hilbert_schmidt(cls) -> "NormSpec":
        return cls(HILBERT_SCHMIDT)

    @classmethod
    def parse(cls, text: str) -> "NormSpec":
        """Parse ``op``, ``hs``, ``kyfan:k`` or ``schatten:p``."""
        text = text.strip().lower()
        if text in (OPERATOR, HILBERT_SCHMIDT):
            return cls(text)
        head, sep, tail = text.partition(":")
        if not sep or head not in (KYFAN, SCHATTEN):
            raise InvalidSpec(f"cannot parse norm spec {text!r}")
        try:
            value = float(tail)
        except ValueError:
            raise InvalidSpec(f"bad parameter in norm spec {text!r}") from None
        return cls(head, value)

    def __str__(self) -> str:
        if self.kind == KYFAN:
            return f"kyfan:{self.param}"
        if self.kind == SCHATTEN:
            return f"schatten:{self.param:g}"
        return self.kind

    def check_dim(self, n: int) -> None:
        if self.kind == KYFAN and self.param > n:
            raise InvalidSpec(f"Ky Fan order {self.param} exceeds dimension {n}")


OP = NormSpec.operator()
HS = NormSpec.hilbert_schmidt()


def battery(n: int) -> list[NormSpec]:
    """Operator, every Ky Fan k-norm, Schatten 1/2/3 and Hilbert-Schmidt for dimension n."""
    specs = [OP]
    specs += [NormSpec.ky_fan(k) for k in range(1, n + 1)]
    specs += [NormSpec.schatten(p) for p in (1, 2, 3)]
    specs.append(HS)
    return specs


def singular_values(a) -> np.ndarray:
    """Singular values in decreasing order, multiplicities counted."""
    a = as_matrix(a)
    try:
        s = np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return s


def norm_from_singular_values(s: np.ndarray, spec: NormSpec) -> float:
    """Evaluate ``spec`` on a descending singular-value vector.

    Returns ``numpy.float64`` so that squaring a huge norm overflows to inf
    instead of raising.
    """
    if spec.kind == OPERATOR:
        return np.float64(s[0])
    spec.check_dim(len(s))
    if spec.kind == KYFAN:
        return np.float64(np.sum(s[: spec.param]))
    p = 2.0 if spec.kind == HILBERT_SCHMIDT else spec.param
    top = s[0]
    if top == 0.0 or not np.isfinite(top):
        return np.float64(top)
    # Scaling by s_1 keeps s^p from overflowing for large p.
    return np.float64(top * np.sum((s / top) ** p) ** (1.0 / p))


def norm(a, spec: NormSpec = OP) -> float:
    return norm_from_singular_values(singular_values(a), spec)


class Dominance(NamedTuple):
    dominated: bool
    failing_k: int | None


def fan_dominates(a, b) -> Dominance:
    """Test ``||A||_(k) <= ||B||_(k)`` for every Ky Fan order k.

    By the Fan dominance theorem this is equivalent to ``|||A||| <= |||B|||``
    for every unitarily invariant norm.  The returned ``failing_k`` is the
    smallest violating order, or None.
    """
    a, b = as_matrix(a), as_matrix(b)
    same_dim(a, b)
    ka = np.cumsum(singular_values(a))
    kb = np.cumsum(singular_values(b))
    for k, (x, y) in enumerate(zip(ka, kb), start=1):
        if not within_tolerance(float(x), float(y)):
            return Dominance(False, k)
    return Dominance(True, None)
