import numpy as np
import pytest

from gainrank.algebra.qlinalg import (QMatrix, block_diagonal, complex_adjoint, left_row_rank_eliminate, rank,
                                     rank_via_adjoint)
from gainrank.algebra.quat import Quaternion, ONE, ZERO, I, J, K
from gainrank.graphs import generators
from gainrank.utils.consts import RankMethod, Tower

METHODS = [RankMethod.ELIMINATION, RankMethod.ADJOINT, RankMethod.BOTH]


def identity(n):
    return QMatrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])


@pytest.mark.parametrize('method', METHODS)
def test_identity_and_zero(method):
    assert rank(identity(3), method).rank == 3
    assert rank(QMatrix.zeros(3, 2), method).rank == 0
    assert rank(QMatrix([], cols=0), method).rank == 0


@pytest.mark.parametrize('method', METHODS)
def test_left_multiple_row(method):
    # second row is j times the first from the left
    assert rank(QMatrix([[ONE, I], [J, J * I]]), method).rank == 1


@pytest.mark.parametrize('method', METHODS)
def test_right_multiple_row_is_independent(method):
    # [j, k] = [1, i] * j is a right multiple only
    assert rank(QMatrix([[ONE, I], [J, K]]), method).rank == 2


@pytest.mark.parametrize('method', METHODS)
def test_float_tower(method):
    a = QMatrix([[ONE, I], [J, K]]).to_float()
    assert a.tower == Tower.FLOAT
    assert rank(a, method).rank == 2
    nearly = QMatrix([[Quaternion.approx(1), Quaternion.approx(1)],
                      [Quaternion.approx(1), Quaternion.approx(1 + 1e-12)]])
    assert rank(nearly, method, tol=1e-9).rank == 1


def test_both_methods_report():
    report = rank(QMatrix([[ONE, I], [J, K]]), RankMethod.BOTH)
    assert report.agrees
    assert report.ranks == {RankMethod.ELIMINATION: 2, RankMethod.ADJOINT: 2}
    assert report.to_dict()['ranks'] == {'elim': 2, 'adjoint': 2}
    assert report.tolerance is None


def test_elimination_agrees_with_adjoint_on_random_matrices():
    rng = np.random.default_rng(11)
    for _ in range(30):
        rows, cols = (int(x) for x in rng.integers(1, 7, size=2))
        a = QMatrix(generators.random_matrix(rows, cols, rng))
        assert rank(a, RankMethod.BOTH).agrees


def test_hermitian_ranks_agree():
    rng = np.random.default_rng(5)
    for n in range(1, 7):
        a = QMatrix(generators.random_hermitian(n, rng))
        assert a.is_hermitian()
        assert rank(a, RankMethod.BOTH).agrees


def test_block_diagonal_adds_ranks():
    a = QMatrix([[ONE, I], [J, J * I]])
    b = identity(2)
    assert block_diagonal(a, b).shape == (4, 4)
    assert rank(block_diagonal(a, b)).rank == 3


def test_complex_adjoint_shape():
    a = QMatrix([[ONE, I, J]])
    exact = complex_adjoint(a)
    assert len(exact) == 2 and len(exact[0]) == 6
    approx = complex_adjoint(a.to_float())
    assert approx.shape == (2, 6)
    assert approx[1, 3] == 1


def test_delete_and_conjugate_transpose():
    a = QMatrix([[ZERO, I, J], [-I, ZERO, K], [-J, -K, ZERO]])
    assert a.is_hermitian()
    assert a.has_zero_diagonal()
    assert a.delete(1) == QMatrix([[ZERO, J], [-J, ZERO]])
    assert a.conjugate_transpose() == a


def test_single_method_reports():
    left_multiple = QMatrix([[ONE, I], [J, J * I]])
    elim = left_row_rank_eliminate(left_multiple)
    adjoint = rank_via_adjoint(left_multiple)
    assert (elim.rank, elim.method, elim.tolerance) == (1, RankMethod.ELIMINATION, None)
    assert (adjoint.rank, adjoint.method, adjoint.tolerance) == (1, RankMethod.ADJOINT, None)

    approx = left_multiple.to_float()
    assert left_row_rank_eliminate(approx, 1e-9).tolerance == 1e-9
    assert rank_via_adjoint(approx, 1e-9).rank == 1
