import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ncyorders import exactla as la
from strategies import int_matrices, random_unimodular, symmetric_matrices


def is_diagonal_chain(D):
    m, n = len(D), len(D[0])
    if any(D[i][j] for i in range(m) for j in range(n) if i != j):
        return False
    d = [D[i][i] for i in range(min(m, n))]
    if any(x < 0 for x in d):
        return False
    nz = [x for x in d if x]
    if d[: len(nz)] != nz:
        return False
    return all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))


def test_snf_examples():
    assert la.smith_normal_form([[2, 0], [0, 3]]).diagonal == [1, 6]
    assert la.smith_normal_form([[2, 0], [0, 4]]).diagonal == [2, 4]
    assert la.smith_normal_form([[-2, 3, 0], [3, -2, 1], [0, 1, -2]]).diagonal == [1, 1, 12]


def test_snf_zero_and_rectangular():
    r = la.smith_normal_form([[0, 0, 0], [0, 0, 0]])
    assert r.diagonal == [0, 0] and r.invariant_factors == []
    r = la.smith_normal_form([[4, 6, 8]])
    assert r.diagonal == [2]


def test_snf_matches_sympy():
    from sympy.matrices.normalforms import smith_normal_form as sym_snf
    M = [[6, 4, 2], [2, 8, 4], [4, 2, 10]]
    ours = la.smith_normal_form(M).diagonal
    theirs = [abs(int(x)) for x in sym_snf(sympy.Matrix(M), domain=sympy.ZZ).diagonal()]
    assert ours == theirs


@settings(max_examples=200)
@given(int_matrices())
def test_snf_reconstruction(M):
    r = la.smith_normal_form(M)
    assert la.mat_mul(la.mat_mul(r.U, M), r.V) == r.D
    assert la.is_unimodular(r.U) and la.is_unimodular(r.V)
    assert is_diagonal_chain(r.D)


@settings(max_examples=200)
@given(int_matrices())
def test_hnf_reconstruction(M):
    H, U = la.hermite_normal_form(M)
    assert la.mat_mul(U, M) == H
    assert la.is_unimodular(U)
    r = 0
    for row in H:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            continue
        c = nz[0]
        assert row[c] > 0
        assert all(0 <= H[i][c] < row[c] for i in range(r))
        r += 1
    assert all(not any(row) for row in H[r:])


@settings(max_examples=100)
@given(int_matrices(max_dim=5), st.randoms(use_true_random=False))
def test_snf_invariant_under_unimodular_change(M, rnd):
    m, n = len(M), len(M[0])
    A, B = random_unimodular(m, rnd), random_unimodular(n, rnd)
    assert la.smith_normal_form(la.mat_mul(la.mat_mul(A, M), B)).diagonal == la.smith_normal_form(M).diagonal


def test_hnf_example():
    H, U = la.hermite_normal_form([[2, 4], [1, 3]])
    assert H == [[1, 1], [0, 2]]
    assert la.mat_mul(U, [[2, 4], [1, 3]]) == H


@settings(max_examples=100)
@given(int_matrices(max_dim=5))
def test_integer_kernel_saturated(M):
    K = la.integer_kernel(M, len(M[0]))
    for v in K:
        assert not any(la.mat_vec(M, v))
    # rank-nullity against sympy
    assert len(K) == len(M[0]) - sympy.Matrix(M).rank()
    if K:
        assert all(d == 1 for d in la.smith_normal_form(K).diagonal)


def test_integer_kernel_example():
    assert la.integer_kernel([[1, 1, 1]]) == [[1, 0, -1], [0, 1, -1]]


@settings(max_examples=100)
@given(int_matrices(max_dim=4), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_solve_integral(M, x):
    n = len(M[0])
    x = x[:n]
    b = la.mat_vec(M, x)
    y = la.solve_integral(M, b, n)
    assert y is not None and la.mat_vec(M, y) == b


def test_solve_integral_none():
    assert la.solve_integral([[2, 0], [0, 2]], [1, 0]) is None


@settings(max_examples=100)
@given(symmetric_matrices())
def test_signature_matches_eigenvalues(G):
    ev = np.linalg.eigvalsh(np.array(G, dtype=float))
    pos, neg, null = la.signature(G)
    assert pos == int((ev > 1e-9).sum()) and neg == int((ev < -1e-9).sum())
    assert pos + neg + null == len(G)


@settings(max_examples=100)
@given(symmetric_matrices(), st.randoms(use_true_random=False))
def test_signature_congruence_invariant(G, rnd):
    P = random_unimodular(len(G), rnd)
    H = la.mat_mul(la.mat_mul(la.transpose(P), G), P)
    assert la.signature(H) == la.signature(G)


def test_signature_hyperbolic_block():
    assert la.signature([[0, 1], [1, 0]]) == (1, 1, 0)
    assert la.signature([[0, 0], [0, 0]]) == (0, 0, 2)


def test_signature_rejects_asymmetric():
    with pytest.raises(la.NotSymmetric):
        la.signature([[0, 1], [2, 0]])


@settings(max_examples=100)
@given(int_matrices(max_dim=5).filter(lambda M: len(M) == len(M[0])))
def test_det_against_sympy(M):
    assert la.det(M) == int(sympy.Matrix(M).det())


def test_rational_inverse():
    M = [[2, 1], [1, 1]]
    inv = la.rational_inverse(M)
    assert inv == [[Fraction(1), Fraction(-1)], [Fraction(-1), Fraction(2)]]
    with pytest.raises(ZeroDivisionError):
        la.rational_inverse([[1, 2], [2, 4]])


def test_big_integers_exact():
    M = [[10 ** 30, 0], [0, 3 * 10 ** 30]]
    assert la.smith_normal_form(M).diagonal == [10 ** 30, 3 * 10 ** 30]
