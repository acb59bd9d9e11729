"""Spectral functional calculus for Hermitian PSD matrices and function pairs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .errors import (
    EmptyGrid,
    InvalidParam,
    NegativeSpectrum,
    NumericalAnomaly,
    NotHermitian,
    SingularBase,
)
from .linalg import adjoint, as_matrix, hermitian_eig, is_hermitian

CLAMP_BAND = 1e-10
PD_GATE = 1e-8
PAIR_TOL = 1e-9
QUAD_TOL = 1e-12

DEFAULT_GRID = np.logspace(-6, 6, 61)


@dataclass(frozen=True)
class ScalarFunction:
    """A scalar map on [0, inf) applied to matrices through their spectrum.

    Built-in kinds: ``pow`` (t ** alpha), ``clip`` (min(t, c)),
    ``clipc`` (max(1, t / c)).  ``custom`` wraps an arbitrary vectorised
    evaluator.  Powers with negative exponent are defined only on (0, inf).
    """

    kind: str
    param: float = 0.0
    label: str = ""
    evaluator: Callable[[np.ndarray], np.ndarray] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind in ("clip", "clipc") and not self.param > 0:
            raise InvalidParam(f"{self.kind} threshold must be positive, got {self.param}")
        if self.kind == "custom" and self.evaluator is None:
            raise InvalidParam("custom function needs an evaluator")
        if self.kind not in ("pow", "clip", "clipc", "custom"):
            raise InvalidParam(f"unknown function kind {self.kind!r}")

    @classmethod
    def power(cls, alpha: float) -> "ScalarFunction":
        return cls("pow", float(alpha))

    @classmethod
    def clip(cls, c: float) -> "ScalarFunction":
        return cls("clip", float(c))

    @classmethod
    def clip_complement(cls, c: float) -> "ScalarFunction":
        return cls("clipc", float(c))

    @classmethod
    def custom(cls, label: str, evaluator: Callable[[np.ndarray], np.ndarray],
               requires_pd: bool = False) -> "ScalarFunction":
        return cls("custom", 1.0 if requires_pd else 0.0, label, evaluator)

    @classmethod
    def parse(cls, text: str) -> "ScalarFunction":
        head, sep, tail = text.strip().lower().partition(":")
        if not sep or head not in ("pow", "clip", "clipc"):
            raise InvalidParam(f"cannot parse function {text!r}")
        try:
            return cls(head, float(tail))
        except ValueError:
            raise InvalidParam(f"bad parameter in function {text!r}") from None

    @property
    def is_power(self) -> bool:
        return self.kind == "pow"

    @property
    def requires_pd(self) -> bool:
        if self.kind == "pow":
            return self.param < 0
        if self.kind == "custom":
            return bool(self.param)
        return False

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "pow":
            if self.param == 0:
                return np.ones_like(t)
            with np.errstate(over="ignore"):
                return np.power(t, self.param)
        if self.kind == "clip":
            return np.minimum(t, self.param)
        if self.kind == "clipc":
            return np.maximum(1.0, t / self.param)
        return np.asarray(self.evaluator(t), dtype=float)

    def then_power(self, e: float) -> "ScalarFunction":
        """The function ``t -> self(t) ** e``."""
        if self.kind == "pow":
            return ScalarFunction.power(self.param * e)
        inner = self
        return ScalarFunction.custom(f"({inner})^{e:g}", lambda t: _power(inner(t), e),
                                     requires_pd=inner.requires_pd or e < 0)

    def __str__(self) -> str:
        if self.kind == "custom":
            return self.label or "custom"
        return f"{self.kind}:{self.param:g}"


@dataclass(frozen=True)
class FunctionPair:
    """``(first, second)`` intended to satisfy ``first(t) * second(t) = t ** product_power``."""

    first: ScalarFunction
    second: ScalarFunction
    product_power: float = 1.0

    @classmethod
    def powers(cls, a: float, b: float, product_power: float | None = None) -> "FunctionPair":
        target = a + b if product_power is None else product_power
        return cls(ScalarFunction.power(a), ScalarFunction.power(b), target)

    @classmethod
    def clip_split(cls, c: float) -> "FunctionPair":
        """``min(t, c) * max(1, t / c) = t``."""
        return cls(ScalarFunction.clip(c), ScalarFunction.clip_complement(c), 1.0)

    @classmethod
    def parse(cls, text: str, product_power: float = 1.0) -> "FunctionPair":
        left, sep, right = text.partition(",")
        if not sep:
            raise InvalidParam(f"function pair needs two comma-separated functions: {text!r}")
        return cls(ScalarFunction.parse(left), ScalarFunction.parse(right), product_power)

    @property
    def is_power(self) -> bool:
        return self.first.is_power and self.second.is_power

    @property
    def requires_pd(self) -> bool:
        return self.first.requires_pd or self.second.requires_pd

    def swapped(self) -> "FunctionPair":
        return FunctionPair(self.second, self.first, self.product_power)

    def __str__(self) -> str:
        return f"{self.first},{self.second}"


@dataclass(frozen=True)
class ExponentQuad:
    """Real exponents with ``m + n = s + t = target``."""

    m: float
    n: float
    s: float
    t: float
    target: float = 1.0

    def __post_init__(self):
        if abs(self.m + self.n - self.target) > QUAD_TOL or abs(self.s + self.t - self.target) > QUAD_TOL:
            raise InvalidParam(
                f"exponents ({self.m}, {self.n}, {self.s}, {self.t}) do not sum pairwise to {self.target}")

    @classmethod
    def from_free(cls, m: float, s: float, target: float = 1.0) -> "ExponentQuad":
        return cls(m, target - m, s, target - s, target)

    @property
    def requires_pd(self) -> bool:
        return min(self.m, self.n, self.s, self.t) < 0

    def as_list(self) -> list[float]:
        return [self.m, self.n, self.s, self.t]


def _power(x, e):
    with np.errstate(over="ignore", divide="ignore"):
        return np.power(x, e)


class PairCheck(NamedTuple):
    ok: bool
    worst_point: float
    worst_error: float


def validate_pair(pair: FunctionPair, grid=None, extra=()) -> PairCheck:
    """Check ``first(t) * second(t) = t ** product_power`` pointwise.

    The default grid is 61 log-spaced points on [1e-6, 1e6]; ``extra`` adds
    points such as the spectra of the matrices under test.  Zero is dropped
    when either function needs a positive argument.  The error at each point
    is ``|f1 f2 - t^q| / max(1, t^q)`` and must not exceed 1e-9.
    """
    pts = DEFAULT_GRID if grid is None else np.asarray(grid, dtype=float).ravel()
    extra = np.asarray(extra, dtype=float).ravel()
    pts = np.concatenate([pts, extra])
    if np.any(pts < 0):
        raise InvalidParam("validation grid must be non-negative")
    if pair.requires_pd:
        pts = pts[pts > 0]
    if pts.size == 0:
        raise EmptyGrid("no grid points to validate on")
    with np.errstate(over="ignore", invalid="ignore"):
        target = np.power(pts, pair.product_power)
        err = np.abs(pair.first(pts) * pair.second(pts) - target) / np.maximum(1.0, target)
    err = np.where(np.isfinite(err), err, np.inf)
    i = int(np.argmax(err))
    return PairCheck(bool(err[i] <= PAIR_TOL), float(pts[i]), float(err[i]))


def psd_spectrum(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (clamped into [0, inf)) and eigenvectors of a PSD matrix.

    Eigenvalues in ``[-1e-10 * ||A||, 0)`` are treated as zero; anything more
    negative raises :class:`NegativeSpectrum`.
    """
    a = as_matrix(a)
    if not is_hermitian(a):
        raise NotHermitian("functional calculus needs a Hermitian argument")
    eig = hermitian_eig(a)
    w = eig.eigenvalues
    opnorm = float(np.max(np.abs(w)))
    if w[0] < -CLAMP_BAND * opnorm:
        raise NegativeSpectrum(f"eigenvalue {w[0]:.3e} below clamp band")
    return np.maximum(w, 0.0), eig.vectors


def apply_function(a, f: ScalarFunction) -> np.ndarray:
    """``V diag(f(lambda)) V*`` for the eigendecomposition of a PSD matrix."""
    w, v = psd_spectrum(a)
    if f.requires_pd:
        gate = PD_GATE * max(1.0, float(w[-1]))
        if w[0] < gate:
            raise SingularBase(f"smallest eigenvalue {w[0]:.3e} below positive-definiteness gate {gate:.3e}")
    fw = f(w)
    return (v * fw) @ adjoint(v)


def matrix_power(a, alpha: float) -> np.ndarray:
    """Real power of a PSD matrix; alpha = 1 returns the input, alpha = 0 the identity."""
    if alpha == 1:
        a = as_matrix(a)
        psd_spectrum(a)
        return a.copy()
    if alpha == 0:
        a = as_matrix(a)
        psd_spectrum(a)
        return np.eye(a.shape[0], dtype=np.complex128)
    return apply_function(a, ScalarFunction.power(alpha))


class Spectral:
    """Cached eigendecomposition of one PSD matrix for repeated function application."""

    def __init__(self, a):
        self.matrix = as_matrix(a)
        self.eigenvalues, self.vectors = psd_spectrum(self.matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def spectrum(self, f: ScalarFunction) -> np.ndarray:
        """``f`` applied to the (clamped) eigenvalues, with the PD gate enforced."""
        w = self.eigenvalues
        if f.requires_pd:
            gate = PD_GATE * max(1.0, float(w[-1]))
            if w[0] < gate:
                raise SingularBase(f"smallest eigenvalue {w[0]:.3e} below positive-definiteness gate {gate:.3e}")
        with np.errstate(over="ignore", invalid="ignore"):
            fw = f(w)
        if not np.all(np.isfinite(fw)):
            raise NumericalAnomaly(f"{f} is not finite on the spectrum")
        return fw

    def apply(self, f: ScalarFunction) -> np.ndarray:
        v = self.vectors
        with np.errstate(over="ignore", invalid="ignore"):
            out = (v * self.spectrum(f)) @ adjoint(v)
        if not np.all(np.isfinite(out)):
            raise NumericalAnomaly(f"{f} of matrix overflowed")
        return out

    def power(self, alpha: float) -> np.ndarray:
        if alpha == 1:
            return self.matrix
        if alpha == 0:
            return np.eye(self.dim, dtype=np.complex128)
        return self.apply(ScalarFunction.power(alpha))
