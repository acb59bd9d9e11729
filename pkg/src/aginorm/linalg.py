"""Dense complex matrix substrate: validation, Hermitian eigensolver, SVD, sampling.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128`` and shape
``(n, n)``.  The decompositions delegate to LAPACK through ``numpy.linalg``
and then verify the residual contracts, raising
:class:`~aginorm.errors.ConvergenceFailure` when LAPACK returns something
that does not reconstruct the input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, InvalidMatrix, NotHermitian

MAX_DIM = 32

HERMITIAN_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-11
ORTHONORMAL_TOL = 1e-12


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite square complex128 array.

    Python scalars and 0-d arrays become ``1 x 1`` matrices.
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise InvalidMatrix(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidMatrix("matrix has non-finite entries")
    return m


def same_dim(*mats: np.ndarray) -> int:
    n = mats[0].shape[0]
    for m in mats[1:]:
        if m.shape[0] != n:
            raise DimensionMismatch(f"dimensions differ: {n} vs {m.shape[0]}")
    return n


def adjoint(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def hs_entrywise(a: np.ndarray) -> float:
    """Frobenius norm from the entries, sqrt(sum |a_ij|^2)."""
    return float(np.sqrt(np.sum(np.abs(a) ** 2)))


def hermitian_defect(a: np.ndarray) -> float:
    return hs_entrywise(a - adjoint(a))


def is_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return hermitian_defect(a) <= tol * max(1.0, hs_entrywise(a))


@dataclass(frozen=True)
class HermitianEigen:
    """Eigenvalues ascending; ``vectors[:, j]`` pairs with ``eigenvalues[j]``."""

    eigenvalues: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.vectors
        return (v * self.eigenvalues) @ adjoint(v)


@dataclass(frozen=True)
class Svd:
    """``A = left @ diag(singular_values) @ right^*`` with descending values."""

    singular_values: np.ndarray
    left: np.ndarray
    right: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.singular_values) @ adjoint(self.right)


def hermitian_eig(a) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix.

    Raises
    ------
    NotHermitian
        If ``||A - A*||_HS > 1e-10 * max(1, ||A||_HS)``.
    ConvergenceFailure
        If LAPACK fails or the result misses the reconstruction or
        orthonormality tolerance.
    """
    a = as_matrix(a)
    scale = max(1.0, hs_entrywise(a))
    if hermitian_defect(a) > HERMITIAN_TOL * scale:
        raise NotHermitian(f"||A - A*||_HS = {hermitian_defect(a):.3e}")
    h = 0.5 * (a + adjoint(a))
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    eig = HermitianEigen(w, v)
    n = a.shape[0]
    residual = hs_entrywise(eig.reconstruct() - a)
    if residual > RECONSTRUCTION_TOL * scale:
        raise ConvergenceFailure("eigen reconstruction residual too large", residual)
    ortho = hs_entrywise(adjoint(v) @ v - np.eye(n))
    if ortho > ORTHONORMAL_TOL * n:
        raise ConvergenceFailure("eigenvectors not orthonormal", ortho)
    return eig


def svd(a) -> Svd:
    a = as_matrix(a)
    try:
        u, s, vh = np.linalg.svd(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    result = Svd(s, u, adjoint(vh))
    residual = hs_entrywise(result.reconstruct() - a)
    if residual > RECONSTRUCTION_TOL * max(1.0, hs_entrywise(a)):
        raise ConvergenceFailure("SVD reconstruction residual too large", residual)
    return result


def gram(a) -> np.ndarray:
    """Return ``A* A`` (the square of ``|A|``)."""
    a = as_matrix(a)
    return adjoint(a) @ a


# --- sampling --------------------------------------------------------------


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator for a 64-bit seed."""
    return np.random.default_rng(int(seed) & 0xFFFFFFFFFFFFFFFF)


def trial_seed(seed: int, index: int) -> int:
    """Per-trial stream seed: ``seed XOR index``, independent of execution order."""
    return (int(seed) ^ int(index)) & 0xFFFFFFFFFFFFFFFF


def sample_ginibre(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    """n x n matrix of i.i.d. complex Gaussians with ``E|z|^2 = scale^2``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    sigma = scale / np.sqrt(2.0)
    re = rng.standard_normal((n, n))
    im = rng.standard_normal((n, n))
    return (sigma * re + 1j * sigma * im).astype(np.complex128)


def sample_psd(rng: np.random.Generator, n: int, min_eig: float = 0.0, scale: float = 1.0) -> np.ndarray:
    """Hermitian ``G* G + min_eig I`` for a Ginibre ``G``; spectrum is >= min_eig."""
    if min_eig < 0:
        raise ValueError("min_eig must be non-negative")
    g = sample_ginibre(rng, n, scale)
    x = adjoint(g) @ g
    x = 0.5 * (x + adjoint(x))
    return x + min_eig * np.eye(n)


def sample_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar unitary: QR of a Ginibre sample with the phases of diag(R) removed."""
    q, r = np.linalg.qr(sample_ginibre(rng, n))
    d = np.diagonal(r)
    phases = np.where(np.abs(d) > 0, d / np.where(d == 0, 1, np.abs(d)), 1.0)
    return q * phases
