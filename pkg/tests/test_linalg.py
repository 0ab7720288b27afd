import random
from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from isoper.linalg import RationalMatrix, rank, rank_kernel, solve


def test_examples():
    r, ker = rank_kernel(RationalMatrix.identity(3))
    assert r == 3 and ker == []
    r, ker = rank_kernel(RationalMatrix.zeros(2, 3))
    assert r == 0 and len(ker) == 3
    r, ker = rank_kernel(RationalMatrix([[1, 2], [2, 4]]))
    assert r == 1 and len(ker) == 1
    v = ker[0]
    assert v[0] / v[1] == Fraction(2, -1)


entries = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_against_sympy(m, n, data):
    rows = [[data.draw(entries) for _ in range(n)] for _ in range(m)]
    M = RationalMatrix(rows)
    r, ker = rank_kernel(M)
    assert r == sympy.Matrix(rows).rank()
    assert r + len(ker) == n
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)


def test_solve():
    rng = random.Random(0)
    for _ in range(20):
        rows = [[Fraction(rng.randint(-3, 3)) for _ in range(4)] for _ in range(3)]
        x = [Fraction(rng.randint(-2, 2)) for _ in range(4)]
        b = [sum(a * c for a, c in zip(row, x)) for row in rows]
        y = solve(RationalMatrix(rows), b)
        assert [sum(a * c for a, c in zip(row, y)) for row in rows] == b
    assert solve(RationalMatrix([[1, 1], [1, 1]]), [1, 2]) is None
    assert rank(RationalMatrix([[0, 0], [0, 3]])) == 1
