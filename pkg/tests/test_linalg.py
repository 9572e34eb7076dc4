import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confbetti.linalg import (
    DimensionMismatch,
    NotAComplex,
    SparseRationalMatrix,
    block_matrix,
    homology_dim,
    hstack,
    nullity,
    rank,
    vstack,
)
from confbetti.operators import ker_deltaDelta_dims, operator_matrix


def dense_rank(rows):
    """Plain Gauss-Jordan over Fractions, used as an independent check."""
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((j for j in range(r, len(m)) if m[j][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for j in range(len(m)):
            if j != r and m[j][c]:
                f = m[j][c] / m[r][c]
                m[j] = [a - f * b for a, b in zip(m[j], m[r])]
        r += 1
    return r


def test_rank_examples():
    assert rank(SparseRationalMatrix.zero(3, 3)) == 0
    assert rank(SparseRationalMatrix.from_dense([[1, 2], [2, 4]])) == 1
    assert rank(SparseRationalMatrix.identity(4)) == 4
    assert rank(SparseRationalMatrix.zero(0, 5)) == 0


def test_rank_of_deltaDelta_block():
    m = operator_matrix(1, ["delta", "Delta"], 4)
    assert rank(m) == dense_rank(m.to_dense())
    assert m.cols - rank(m) == ker_deltaDelta_dims(1, 4)[4]


matrices = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3),
                                min_size=c, max_size=c),
                       min_size=r, max_size=r)))


@settings(max_examples=200)
@given(matrices)
def test_rank_agrees_with_dense_elimination(rows):
    m = SparseRationalMatrix.from_dense(rows)
    r = rank(m)
    assert r == dense_rank(rows)
    assert r == rank(m.transpose())
    assert r <= min(m.rows, m.cols)
    assert nullity(m) == m.cols - r


def test_low_rank_products():
    rng = random.Random(7)
    for _ in range(20):
        a = SparseRationalMatrix.from_dense([[rng.randint(-2, 2) for _ in range(3)] for _ in range(8)])
        b = SparseRationalMatrix.from_dense([[rng.randint(-2, 2) for _ in range(9)] for _ in range(3)])
        assert rank(a @ b) == dense_rank((a @ b).to_dense()) <= 3


def test_homology_dim_examples():
    z = SparseRationalMatrix.zero
    assert homology_dim(z(0, 5), z(5, 0)) == 5
    assert homology_dim(SparseRationalMatrix.identity(3), z(3, 0)) == 0
    with pytest.raises(DimensionMismatch):
        homology_dim(z(2, 3), z(4, 1))
    one = SparseRationalMatrix.from_dense([[1]])
    with pytest.raises(NotAComplex, match="not a complex"):
        homology_dim(one, one)


def test_homology_invariant_under_permutation():
    d_out = SparseRationalMatrix.from_dense([[1, -1, 0], [0, 1, -1]])
    d_in = SparseRationalMatrix.from_dense([[1], [1], [1]])
    h = homology_dim(d_out, d_in)
    perm = [2, 0, 1]
    p_out = SparseRationalMatrix.from_dense([[r[j] for j in perm] for r in d_out.to_dense()])
    p_in = SparseRationalMatrix.from_dense([d_in.to_dense()[j] for j in perm])
    assert homology_dim(p_out, p_in) == h == 0


def test_matrix_validation_and_stacking():
    with pytest.raises(ValueError):
        SparseRationalMatrix(2, 2, ((0, 0, Fraction(1)), (0, 0, Fraction(2))))
    with pytest.raises(IndexError):
        SparseRationalMatrix.from_dict(1, 1, {(1, 0): 1})
    a = SparseRationalMatrix.identity(2)
    assert vstack([a, a]).shape == (4, 2)
    assert hstack([a, a]).shape == (2, 4)
    b = block_matrix([[a, None], [None, a]])
    assert b.to_dense() == SparseRationalMatrix.identity(4).to_dense()
    assert SparseRationalMatrix.from_dict(2, 2, {(0, 1): 0}).nnz == 0
