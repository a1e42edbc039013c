"""Smith normal form, exact Gaussian elimination, rational cone membership."""
from __future__ import annotations

import random

import pytest

from superroots import QQ, ScalarField
from superroots.errors import ParameterizedInput
from superroots.linalg import (
    cone_membership,
    imat_det,
    imat_identity,
    imat_mul,
    smat,
    smat_det,
    smat_inverse,
    smat_kernel,
    smat_mul,
    smat_rank,
    smat_solve,
    smat_vec,
    smith_normal_form,
)


def _check_snf(M):
    U, D, V = smith_normal_form(M)
    assert imat_mul(imat_mul(U, D), V) == tuple(tuple(r) for r in M)
    assert abs(imat_det(U)) == 1 and abs(imat_det(V)) == 1
    m, n = len(M), len(M[0])
    diag = [D[i][i] for i in range(min(m, n))]
    assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    assert all(d >= 0 for d in diag)
    nonzero = [d for d in diag if d]
    assert diag[: len(nonzero)] == nonzero
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    return diag


def test_snf_basic_example():
    assert _check_snf([[2, 0], [0, 0]]) == [2, 0]


def test_snf_known_invariant_factors():
    assert _check_snf([[2, 4, 4], [-6, 6, 12], [10, 4, 16]]) == [2, 2, 156]
    assert _check_snf([[4, 0, 0], [0, 6, 0], [0, 0, 2]]) == [2, 2, 12]
    assert _check_snf([[1, 0], [0, 1]]) == [1, 1]
    assert _check_snf([[0, 0], [0, 0]]) == [0, 0]
    assert _check_snf([[3, 1], [1, 3]]) == [1, 8]
    # rectangular
    assert _check_snf([[2, 4, 6]]) == [2]
    assert _check_snf([[2], [4], [6]]) == [2]


def test_snf_randomized():
    random.seed(20240811)
    for _ in range(200):
        m, n = random.randint(1, 4), random.randint(1, 4)
        _check_snf([[random.randint(-9, 9) for _ in range(n)]
                    for _ in range(m)])


def test_imat_det():
    assert imat_det([[2, -1], [-1, 2]]) == 3
    assert imat_det([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0
    assert imat_det(imat_identity(5)) == 1
    random.seed(3)
    for _ in range(50):
        n = random.randint(1, 4)
        M = [[random.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        # compare against cofactor expansion
        def cof(rows):
            if len(rows) == 1:
                return rows[0][0]
            return sum((-1) ** j * rows[0][j]
                       * cof([r[:j] + r[j + 1:] for r in rows[1:]])
                       for j in range(len(rows)))
        assert imat_det(M) == cof([list(r) for r in M])


def test_cone_membership_examples():
    gens = [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert cone_membership(gens, (2, 2, 2)) == (1, 1, 1)
    assert cone_membership(gens, (1, 0, 0)) is None
    assert cone_membership(gens, (0, 0, 0)) == (0, 0, 0)
    res = cone_membership([(1, 0), (0, 1), (1, 1)], (3, 2))
    assert res is not None
    assert all(c >= 0 for c in res)
    assert cone_membership([(2,)], (1,)) == (0.5,)
    assert cone_membership([(-1, 1)], (1, -1)) is None
    assert cone_membership([], (1,)) is None


def test_cone_membership_randomized():
    random.seed(99)
    for _ in range(100):
        dim, n = random.randint(1, 4), random.randint(1, 5)
        gens = [tuple(random.randint(-3, 3) for _ in range(dim))
                for _ in range(n)]
        coeffs = [random.randint(0, 4) for _ in range(n)]
        target = tuple(sum(c * g[i] for c, g in zip(coeffs, gens))
                       for i in range(dim))
        assert cone_membership(gens, target) is not None


def test_cone_membership_rejects_parameters():
    F = ScalarField(param="t")
    with pytest.raises(ParameterizedInput):
        cone_membership([(F.parameter(), F.one())], (1, 1))
    # rational Scalars are fine
    assert cone_membership([(F.one(), F.zero())], (2, 0)) == (2,)


def test_scalar_matrix_ops():
    A = smat(QQ, [[2, -1], [-2, 2]])
    assert smat_det(A) == QQ.scalar(2)
    Ainv = smat_inverse(A)
    assert smat_mul(A, Ainv) == smat(QQ, [[1, 0], [0, 1]])
    assert smat_inverse(smat(QQ, [[1, 2], [2, 4]])) is None

    K = smat(QQ, [[1, 2, 3], [2, 4, 6]])
    assert smat_rank(K) == 1
    kern = smat_kernel(K)
    assert len(kern) == 2
    for v in kern:
        assert all(x.is_zero for x in smat_vec(K, v))

    x = smat_solve(smat(QQ, [[2, 1], [1, 3]]), [QQ.scalar(5), QQ.scalar(5)])
    assert x == (QQ.scalar(2), QQ.scalar(1))
    assert smat_solve(smat(QQ, [[1, 1], [1, 1]]),
                      [QQ.scalar(0), QQ.scalar(1)]) is None


def test_scalar_matrix_with_parameter():
    F = ScalarField(param="t")
    t = F.parameter()
    A = smat(F, [[t, 1], [1, t]])
    assert smat_det(A) == t * t - 1
    Ainv = smat_inverse(A)
    assert smat_mul(A, Ainv) == smat(F, [[1, 0], [0, 1]])
