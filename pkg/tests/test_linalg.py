import random
from fractions import Fraction

import numpy as np
import pytest

from quivermod import QQ, PrimeField
from quivermod.fields import FieldError
from quivermod import linalg


def test_prime_field_validation():
    with pytest.raises(FieldError):
        PrimeField(4)
    with pytest.raises(FieldError):
        PrimeField(2**31 + 11)
    assert PrimeField(7).coerce(Fraction(1, 3)) == 5  # 3*5 = 15 = 1 mod 7


def test_rational_parsing():
    assert QQ.coerce("1/2") == Fraction(1, 2)
    a = QQ.array([["1/2", 1], ["-3", "0"]])
    assert a[0, 0] == Fraction(1, 2)


@pytest.mark.parametrize("field", [QQ, PrimeField(5)])
def test_rref_rank_nullspace(field):
    a = field.array([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert linalg.rank(field, a) == 2
    for v in linalg.nullspace(field, a):
        prod = linalg.matmul(field, a, v.reshape(-1, 1))
        assert linalg.is_zero(field, prod)
    assert len(linalg.nullspace(field, a)) == 1


@pytest.mark.parametrize("field", [QQ, PrimeField(7)])
def test_det_and_inv(field):
    a = field.array([[1, 2], [3, 5]])
    d = linalg.det(field, a)
    assert not field.scalar_is_zero(d)
    inv_a = linalg.inv(field, a)
    assert linalg.equal(field, linalg.matmul(field, a, inv_a), field.identity(2))
    singular = field.array([[1, 2], [2, 4]])
    assert field.scalar_is_zero(linalg.det(field, singular))
    with pytest.raises(ZeroDivisionError):
        linalg.inv(field, singular)


def test_det_rational_exact():
    a = QQ.array([["1/2", "1/3"], ["1/4", "1/5"]])
    assert linalg.det(QQ, a) == Fraction(1, 10) - Fraction(1, 12)


def test_det_matches_fraction_free_crosscheck():
    rng = random.Random(11)
    f = PrimeField(13)
    for _ in range(20):
        n = rng.randint(1, 4)
        a = f.array([[rng.randrange(13) for _ in range(n)] for _ in range(n)])
        # Bareiss fraction-free elimination over the integers as oracle
        m = [[int(x) for x in row] for row in a]
        sign, prev = 1, 1
        ok = True
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    ok = False
                    break
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        expected = 0 if not ok else sign * m[n - 1][n - 1]
        assert linalg.det(f, a) == expected % 13


def test_zero_dimensional_shapes():
    f = PrimeField(3)
    empty = f.zeros(0, 2)
    tall = f.array([[1], [2]])
    prod = linalg.matmul(f, empty, tall)
    assert prod.shape == (0, 1)
    assert linalg.rank(f, empty) == 0
    assert linalg.det(f, f.zeros(0, 0)) == f.one


def test_block_diag():
    f = QQ
    a = f.array([[1]])
    b = f.array([[2, 3]])
    d = linalg.block_diag(f, [a, b])
    assert d.shape == (2, 3)
    assert d[0, 0] == 1 and d[1, 1] == 2 and d[1, 2] == 3 and d[0, 1] == 0
