import random
from fractions import Fraction

import numpy as np
import pytest

from rncsplit import linalg
from rncsplit.fields import FieldSpec, RATIONALS

GF = FieldSpec(32003)


def rand_matrix(rnd, field, m, n, lo=-9, hi=9):
    return [[field.from_int(rnd.randrange(lo, hi + 1)) for _ in range(n)] for _ in range(m)]


@pytest.mark.parametrize("field", [RATIONALS, GF])
def test_rank_and_nullspace_known(field):
    one = field.one
    two = field.from_int(2)
    A = [[one, two], [two, field.from_int(4)]]
    assert linalg.rank(A, field) == 1
    ns = linalg.nullspace(A, field)
    assert len(ns) == 1
    x = ns[0]
    assert field.is_zero(field.add(field.mul(A[0][0], x[0]), field.mul(A[0][1], x[1])))


@pytest.mark.parametrize("field", [RATIONALS, GF])
def test_nullspace_annihilates_random(field):
    rnd = random.Random(17)
    for _ in range(25):
        m, n = rnd.randrange(1, 6), rnd.randrange(1, 7)
        A = rand_matrix(rnd, field, m, n)
        ns = linalg.nullspace(A, field)
        assert len(ns) == n - linalg.rank(A, field)
        for v in ns:
            for row in A:
                acc = field.zero
                for a, x in zip(row, v):
                    acc = field.add(acc, field.mul(a, x))
                assert field.is_zero(acc)


def test_rank_agrees_between_fields():
    rnd = random.Random(23)
    for _ in range(20):
        m, n = rnd.randrange(1, 6), rnd.randrange(1, 6)
        ints = [[rnd.randrange(-5, 6) for _ in range(n)] for _ in range(m)]
        rq = linalg.rank([[Fraction(x) for x in row] for row in ints], RATIONALS)
        rp = linalg.rank([[x % GF.p for x in row] for row in ints], GF)
        # entries are tiny compared to the prime, so no accidental rank drop
        assert rq == rp


@pytest.mark.parametrize("field", [RATIONALS, GF])
def test_solve(field):
    A = [[field.one, field.one], [field.one, field.neg(field.one)]]
    b = [field.from_int(3), field.from_int(1)]
    x = linalg.solve(A, b, field)
    assert x is not None
    assert field.add(x[0], x[1]) == field.from_int(3)
    # inconsistent system
    A2 = [[field.one, field.zero], [field.one, field.zero]]
    assert linalg.solve(A2, [field.one, field.from_int(2)], field) is None


@pytest.mark.parametrize("field", [RATIONALS, GF])
def test_det(field):
    A = [[field.from_int(2), field.from_int(1)], [field.from_int(7), field.from_int(4)]]
    assert linalg.det(A, field) == field.from_int(1)
    B = [[field.one, field.one], [field.one, field.one]]
    assert field.is_zero(linalg.det(B, field))
    # permutation sign
    P = [[field.zero, field.one], [field.one, field.zero]]
    assert linalg.det(P, field) == field.neg(field.one)


@pytest.mark.parametrize("field", [RATIONALS, GF])
def test_rowspace_incremental(field):
    rs = linalg.RowSpace(field, 3)
    v1 = [field.one, field.zero, field.one]
    v2 = [field.zero, field.one, field.zero]
    assert rs.insert(v1) is not None
    assert rs.insert(v2) is not None
    assert rs.dim == 2
    summed = [field.one, field.one, field.one]
    assert rs.insert(summed) is None  # dependent
    assert rs.contains(summed)
    assert not rs.contains([field.one, field.zero, field.zero])


def test_numpy_input_accepted():
    A = np.array([[1, 2, 3], [2, 4, 6]], dtype=np.int64)
    assert linalg.rank(A, GF, 3) == 1
    assert len(linalg.nullspace(A, GF, 3)) == 2


def test_empty_matrices():
    assert linalg.rank([], RATIONALS, 0) == 0
    assert linalg.nullspace([], RATIONALS, 3) == [
        [Fraction(1), Fraction(0), Fraction(0)],
        [Fraction(0), Fraction(1), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(1)],
    ]
