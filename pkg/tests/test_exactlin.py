from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from productlocc.certify import assemble_constraints
from productlocc.construct import build_bipartite
from productlocc.exactlin import (
    HermitianBasis,
    RationalMatrix,
    is_proportional,
    nullspace,
    positive_definite_exact,
    rank_exact,
    rank_float,
    rref,
)

from oracles import hermitian_basis_matrices


def test_nullspace_examples():
    assert nullspace(RationalMatrix.identity(3)) == []
    assert nullspace(RationalMatrix.from_rows([[1, -1]])) == [(1, 1)]


def test_nullspace_of_no_rows():
    m = RationalMatrix.from_rows([], cols=3)
    assert len(nullspace(m)) == 3 and rank_exact(m) == 0


def test_rank_examples():
    assert rank_exact(RationalMatrix.zeros(2, 3)) == 0
    assert rank_exact(RationalMatrix.identity(4)) == 4
    assert rank_float(RationalMatrix.identity(4), 1e-8) == 4
    assert rank_float(RationalMatrix.from_rows([[1, -1]]), 1e-8) == 1
    assert rank_float(RationalMatrix.zeros(2, 3)) == 0
    with pytest.raises(ValueError):
        rank_float(RationalMatrix.identity(2), 0)


def test_bipartite_4_4_party_one_kernel_is_identity():
    mat = assemble_constraints(build_bipartite(4, 4), 1)
    kernel = nullspace(mat)
    assert len(kernel) == 1
    assert is_proportional(kernel[0], HermitianBasis(4).identity_vector())
    assert rank_float(mat, 1e-8) == rank_exact(mat) == 15


def test_rref_uses_first_nonzero_pivot():
    m = RationalMatrix.from_rows([[0, 2, 4], [3, 0, 3], [0, 1, 2]])
    reduced, pivots = rref(m)
    assert pivots == [0, 1]
    assert reduced == [[1, 0, 1], [0, 1, 2]]


def test_rational_entries():
    m = RationalMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [1, Fraction(2, 3)]])
    assert rank_exact(m) == 1
    (v,) = nullspace(m)
    assert m.apply(v) == (0, 0)


matrices = st.integers(1, 6).flatmap(
    lambda c: st.lists(
        st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=0, max_size=7
    ).map(lambda rows: (rows, c))
)


@given(matrices)
@settings(max_examples=200)
def test_nullspace_properties_against_sympy(data):
    rows, cols = data
    m = RationalMatrix.from_rows(rows, cols)
    kernel = nullspace(m)
    assert rank_exact(m) + len(kernel) == cols
    for v in kernel:
        assert all(x == 0 for x in m.apply(v))
    if rows:
        s = sympy.Matrix(rows)
        assert rank_exact(m) == s.rank()
        assert rank_float(m, 1e-8) == s.rank()
        assert [list(r) for r in rref(m)[0]] == [
            list(s.rref()[0].row(i)) for i in range(s.rank())
        ]


@given(matrices, st.randoms(use_true_random=False))
def test_rref_invariant_under_row_permutation(data, rnd):
    rows, cols = data
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    a = RationalMatrix.from_rows(rows, cols)
    b = RationalMatrix.from_rows(shuffled, cols)
    assert rref(a) == rref(b)
    assert nullspace(a) == nullspace(b)


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_hermitian_basis_matches_explicit_matrices(d):
    basis = HermitianBasis(d)
    assert len(basis) == len(basis.elements) == d * d
    explicit = hermitian_basis_matrices(d)
    for k, ref in enumerate(explicit):
        vec = [0] * (d * d)
        vec[k] = 1
        re, im = basis.to_matrix(vec)
        assert [[float(x) for x in r] for r in re] == ref.real.tolist()
        assert [[float(x) for x in r] for r in im] == ref.imag.tolist()
        assert basis.from_matrix(re, im) == tuple(vec)
    flat = [m.flatten() for m in explicit]
    import numpy as np

    stacked = np.array([np.concatenate([f.real, f.imag]) for f in flat])
    assert np.linalg.matrix_rank(stacked) == d * d


def test_hermitian_identity_vector():
    assert HermitianBasis(2).identity_vector() == (1, 1, 0, 0)


@given(
    st.lists(st.integers(-3, 3), min_size=3, max_size=3),
    st.lists(st.integers(-3, 3), min_size=3, max_size=3),
    st.lists(st.integers(-3, 3), min_size=9, max_size=9),
)
def test_expectation_row_matches_matrix_product(bra, ket, params):
    basis = HermitianBasis(3)
    re_row, im_row = basis.expectation_row(bra, ket)
    re, im = basis.to_matrix(params)
    val_re = sum(bra[i] * re[i][j] * ket[j] for i in range(3) for j in range(3))
    val_im = sum(bra[i] * im[i][j] * ket[j] for i in range(3) for j in range(3))
    assert sum(a * x for a, x in zip(re_row, params)) == val_re
    assert sum(a * x for a, x in zip(im_row, params)) == val_im


def test_positive_definite_exact():
    assert positive_definite_exact([[2, 0], [0, 1]], [[0, 0], [0, 0]])
    assert not positive_definite_exact([[1, 2], [2, 1]], [[0, 0], [0, 0]])
    # [[1, i], [-i, 1]] is singular
    assert not positive_definite_exact([[1, 0], [0, 1]], [[0, 1], [-1, 0]])
    assert positive_definite_exact([[2, 0], [0, 2]], [[0, 1], [-1, 0]])


def test_is_proportional():
    assert is_proportional((2, 2, 0), (1, 1, 0))
    assert not is_proportional((1, 2, 0), (1, 1, 0))
    assert not is_proportional((0, 0, 0), (1, 1, 0))
