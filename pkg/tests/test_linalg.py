from fractions import Fraction

import pytest

import oracles
from khalg.linalg import Ring, SparseMatrix, is_prime, rank_over_field, smith_normal_form, solve_over_field


def test_ring_parse():
    assert Ring.parse("q") == Ring.QQ()
    assert Ring.parse("int") == Ring.ZZ()
    assert Ring.parse("zp:5") == Ring.GF(5)
    for bad in ("zp:4", "zp:x", "r"):
        with pytest.raises(ValueError):
            Ring.parse(bad)
    assert str(Ring.GF(7)) == "zp:7" and str(Ring.QQ()) == "q" and str(Ring.ZZ()) == "int"


def test_is_prime():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_sparse_matrix_invariants():
    m = SparseMatrix(2, 2, {(0, 0): 0, (1, 1): 3})
    assert m.entries == {(1, 1): 3}
    with pytest.raises(IndexError):
        SparseMatrix(1, 1, {(1, 0): 1})
    assert SparseMatrix(2, 2, {(0, 0): 6}, Ring.GF(3)).is_zero()


def test_rank_examples():
    assert rank_over_field(SparseMatrix(3, 4), Ring.QQ()) == 0
    m = SparseMatrix.from_dense([[2, 4], [1, 2]])
    assert rank_over_field(m, Ring.QQ()) == 1
    m = SparseMatrix.from_dense([[2, 0], [0, 3]])
    assert rank_over_field(m, Ring.GF(2)) == 1
    assert rank_over_field(m, Ring.GF(5)) == 2


def test_rank_rational_entries():
    m = SparseMatrix(2, 2, {(0, 0): Fraction(1, 2), (0, 1): Fraction(1, 3), (1, 0): 3, (1, 1): 2}, Ring.QQ())
    assert rank_over_field(m, Ring.QQ()) == 1


def test_rank_against_sympy():
    dense = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0], [1, 3, 4, 4]]
    assert rank_over_field(SparseMatrix.from_dense(dense), Ring.QQ()) == oracles.sympy_rank(dense)


def test_snf_examples():
    assert smith_normal_form(SparseMatrix.from_dense([[2, 0], [0, 3]])).elementary_divisors == (1, 6)
    ident = smith_normal_form(SparseMatrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert ident.elementary_divisors == (1, 1, 1) and ident.torsion == ()
    z = smith_normal_form(SparseMatrix(3, 2))
    assert z.rank == 0


def test_snf_against_minors():
    dense = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    assert list(smith_normal_form(SparseMatrix.from_dense(dense)).elementary_divisors) == \
        oracles.determinantal_divisors(dense)


def test_solve():
    m = SparseMatrix.from_dense([[1, 1], [0, 2], [1, 3]])
    sol = solve_over_field(m, {0: 1, 1: 2, 2: 3}, Ring.QQ())
    assert sol == {1: 1}
    assert solve_over_field(m, {0: 1, 1: 0, 2: 0}, Ring.QQ()) is None
    # x + y = 2, 2y = 2, x + 3y = 1 over GF(3)
    sol = solve_over_field(m, {0: 2, 1: 2, 2: 1}, Ring.GF(3))
    assert sol == {0: 1, 1: 1}
    assert solve_over_field(m, {0: 1, 1: 1, 2: 0}, Ring.GF(3)) is None
    with pytest.raises(ValueError):
        solve_over_field(m, {}, Ring.ZZ())


def test_matmul_and_add():
    a = SparseMatrix.from_dense([[1, 2], [3, 4]])
    b = SparseMatrix.from_dense([[0, 1], [1, 0]])
    assert (a @ b).to_dense() == [[2, 1], [4, 3]]
    assert (a + b).to_dense() == [[1, 3], [4, 4]]
    with pytest.raises(ValueError):
        a @ SparseMatrix(3, 1)
