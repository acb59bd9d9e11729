import itertools
from math import comb

import numpy as np
import pytest

from aginorm.compound import SIZE_CAP, compound, enumerate_q, lemma_residuals, singular_value_products
from aginorm.errors import BadOrder, SizeCap
from aginorm.linalg import sample_ginibre


def leibniz_det(m):
    """Permutation-expansion determinant, independent of LU."""
    k = len(m)
    total = 0j
    for perm in itertools.permutations(range(k)):
        inversions = sum(1 for i in range(k) for j in range(i + 1, k) if perm[i] > perm[j])
        term = complex((-1) ** inversions)
        for i, j in enumerate(perm):
            term *= m[i][j]
        total += term
    return total


def brute_compound(a, k):
    rows = list(itertools.combinations(range(len(a)), k))
    return np.array([[leibniz_det([[a[i][j] for j in J] for i in I]) for J in rows] for I in rows])


def test_enumerate_q_examples():
    assert enumerate_q(2, 3) == [(1, 2), (1, 3), (2, 3)]
    assert enumerate_q(1, 4) == [(1,), (2,), (3,), (4,)]
    assert enumerate_q(3, 3) == [(1, 2, 3)]
    q = enumerate_q(3, 6)
    assert len(q) == comb(6, 3) == len(set(q)) and q == sorted(q)


@pytest.mark.parametrize("k, n", [(0, 3), (4, 3)])
def test_bad_order(k, n):
    with pytest.raises(BadOrder):
        enumerate_q(k, n)
    with pytest.raises(BadOrder):
        compound(np.eye(n), k)


def test_size_cap():
    assert comb(12, 6) > SIZE_CAP
    with pytest.raises(SizeCap):
        compound(np.eye(12), 6)


def test_compound_examples():
    assert np.allclose(compound(np.diag([1.0, 2.0, 3.0]), 2), np.diag([2.0, 3.0, 6.0]))
    assert np.allclose(compound([[1, 2], [3, 4]], 2), [[-2.0]])
    assert np.allclose(compound(np.eye(5), 3), np.eye(10))


def test_against_leibniz_oracle(rng):
    for n in range(1, 6):
        for k in range(1, min(n, 3) + 1):
            a = sample_ginibre(rng, n)
            assert np.allclose(compound(a, k), brute_compound(a.tolist(), k), atol=1e-12)


def test_singular_value_products():
    assert np.allclose(singular_value_products(np.array([3.0, 2.0, 1.0]), 2), [6, 3, 2])


def test_lemma_residuals_small(rng):
    for _ in range(20):
        n = int(rng.integers(1, 7))
        k = int(rng.integers(1, min(n, 3) + 1))
        res = lemma_residuals(sample_ginibre(rng, n), sample_ginibre(rng, n), k)
        assert max(res.values()) <= 1e-10
