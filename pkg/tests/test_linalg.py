"""Exact linear algebra: congruence reduction and Hermitian signatures."""

import random
from fractions import Fraction

import pytest

from crjets import GaussianRational, I
from crjets.errors import PreconditionError, SingularJacobianError
from crjets.linalg import (
    hermitian_signature,
    identity_matrix,
    invert_matrix,
    matmul,
    rank,
    solve_linear,
    symmetric_diagonalize,
    transpose,
)


def frac_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def herm(rows):
    return [[GaussianRational(*x) if isinstance(x, tuple) else GaussianRational(x) for x in row] for row in rows]


def test_congruence_reduces_random_symmetric_matrices():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(1, 4)
        h = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                v = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                h[i][j] = h[j][i] = v
        p, d = symmetric_diagonalize(h)
        left = matmul(matmul(transpose(p), h), p)
        for i in range(n):
            for j in range(n):
                assert left[i][j] == (d[i] if i == j else 0)
        assert rank(p) == n


def test_congruence_needs_the_shear():
    # zero diagonal forces the column-addition fallback
    h = frac_matrix([[0, 1], [1, 0]])
    p, d = symmetric_diagonalize(h)
    signs = sorted(1 if v > 0 else -1 if v < 0 else 0 for v in d)
    assert signs == [-1, 1]


def test_hermitian_signature_cases():
    assert hermitian_signature(herm([[2]])) == (1, 0, 0)
    assert hermitian_signature(herm([[1, 0], [0, -1]])) == (1, 1, 0)
    assert hermitian_signature(herm([[0, 0], [0, 0]])) == (0, 0, 2)
    assert hermitian_signature(herm([[1, 1], [1, 1]])) == (1, 0, 1)
    # [[0, i], [-i, 0]] has eigenvalues +-1
    m = [[GaussianRational(0), I], [-I, GaussianRational(0)]]
    assert hermitian_signature(m) == (1, 1, 0)


def test_hermitian_signature_rejects_non_hermitian():
    with pytest.raises(PreconditionError):
        hermitian_signature(herm([[0, 1], [0, 0]]))


def test_solve_and_invert():
    m = herm([[2, 1], [1, 1]])
    inv = invert_matrix(m)
    assert matmul(m, inv) == identity_matrix(2, GaussianRational(1))
    x = solve_linear(m, [GaussianRational(3), GaussianRational(2)])
    assert [sum((a * b for a, b in zip(row, x)), GaussianRational(0)) for row in m] == [
        GaussianRational(3),
        GaussianRational(2),
    ]
    with pytest.raises(SingularJacobianError):
        invert_matrix(herm([[1, 1], [1, 1]]))


def test_rank():
    assert rank(herm([[1, 2], [2, 4]])) == 1
    assert rank(herm([[1, 0], [0, 1]])) == 2
    assert rank(herm([[0]])) == 0
