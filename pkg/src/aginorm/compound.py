"""Compound matrices (antisymmetric tensor powers) built from k x k minors."""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from .errors import BadOrder, SizeCap
from .linalg import as_matrix

SIZE_CAP = 512


def enumerate_q(k: int, n: int) -> list[tuple[int, ...]]:
    """Strictly increasing k-tuples from 1..n in lexicographic order (1-based)."""
    if not 1 <= k <= n:
        raise BadOrder(f"need 1 <= k <= n, got k={k}, n={n}")
    return list(combinations(range(1, n + 1), k))


def compound(a, k: int) -> np.ndarray:
    """The k-th compound ``C(n,k) x C(n,k)`` matrix of ``a``.

    Entry ``(I, J)`` is the determinant of the submatrix with rows ``I`` and
    columns ``J``; rows and columns follow :func:`enumerate_q` order.
    """
    a = as_matrix(a)
    n = a.shape[0]
    if not 1 <= k <= n:
        raise BadOrder(f"need 1 <= k <= n, got k={k}, n={n}")
    size = comb(n, k)
    if size > SIZE_CAP:
        raise SizeCap(f"C({n},{k}) = {size} exceeds cap {SIZE_CAP}")
    idx = np.array(list(combinations(range(n), k)), dtype=np.intp)
    # blocks[I, J] = a[idx[I]][:, idx[J]]
    blocks = a[idx[:, None, :, None], idx[None, :, None, :]]
    return np.linalg.det(blocks)


def singular_value_products(s: np.ndarray, k: int) -> np.ndarray:
    """Products ``s_i1 ... s_ik`` over Q_{k,n}, sorted descending."""
    s = np.asarray(s, dtype=float)
    prods = [float(np.prod(s[list(c)])) for c in combinations(range(len(s)), k)]
    return np.sort(np.array(prods))[::-1]


def lemma_residuals(a, b, k: int) -> dict[str, float]:
    """Relative residuals of the compound-matrix identities for one pair (A, B).

    ``multiplicative``: C_k(AB) vs C_k(A) C_k(B); ``adjoint``: C_k(A*) vs
    C_k(A)*; ``inverse``: C_k(A^-1) vs C_k(A)^-1; ``singular_values``: the
    spectrum of C_k(A) vs the k-fold products; ``largest``: s_1(C_k(A)) vs
    s_1 ... s_k.  Each is normalised by ``max(1, scale)`` of the compared
    quantities.  ``a`` must be invertible for the inverse check.
    """
    a, b = as_matrix(a), as_matrix(b)
    ca, cb = compound(a, k), compound(b, k)

    def rel(x, y, scale):
        return float(np.linalg.norm(x - y)) / max(1.0, scale)

    hs_a = float(np.linalg.norm(ca))
    s = np.linalg.svd(a, compute_uv=False)
    sk = np.linalg.svd(ca, compute_uv=False)
    prods = singular_value_products(s, k)
    inv_ca = np.linalg.inv(ca)
    top = float(np.prod(s[:k]))
    return {
        "multiplicative": rel(compound(a @ b, k), ca @ cb, hs_a * float(np.linalg.norm(cb))),
        "adjoint": rel(compound(a.conj().T, k), ca.conj().T, hs_a),
        "inverse": rel(compound(np.linalg.inv(a), k), inv_ca, float(np.linalg.norm(inv_ca))),
        "singular_values": rel(sk, prods, float(prods[0])),
        "largest": abs(float(sk[0]) - top) / max(1.0, top),
    }
