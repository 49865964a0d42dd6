from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from ncchains import exact

small = st.integers(min_value=-4, max_value=4)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 4).flatmap(square))
def test_det_and_rank_match_sympy(rows):
    m = sympy.Matrix(rows)
    assert exact.det(rows) == m.det()
    assert exact.rank(rows) == m.rank()


@given(st.integers(1, 4).flatmap(square))
def test_inverse_matches_sympy(rows):
    m = sympy.Matrix(rows)
    if m.det() == 0:
        return
    inv = exact.inverse(rows)
    expected = m.inv()
    assert all(Fraction(inv[i][j]) == Fraction(str(expected[i, j])) for i in range(m.rows) for j in range(m.cols))
    assert exact.matmul(rows, inv) == exact.identity(len(rows))


@given(st.integers(1, 4).flatmap(square), st.lists(small, min_size=4, max_size=4))
def test_solve_agrees_with_product(rows, rhs):
    n = len(rows)
    b = rhs[:n]
    x = exact.solve(rows, b)
    if x is None:
        # inconsistent: the augmented matrix has larger rank
        aug = [list(r) + [v] for r, v in zip(rows, b)]
        assert exact.rank(aug) > exact.rank(rows)
    else:
        assert exact.matvec(rows, x) == tuple(Fraction(v) for v in b)


@given(st.integers(1, 4).flatmap(square))
def test_nullspace_dimension(rows):
    basis = exact.nullspace(rows)
    assert len(basis) == len(rows[0]) - exact.rank(rows)
    for v in basis:
        assert all(x == 0 for x in exact.matvec(rows, v))


def test_primitive_integer_and_proportional():
    assert exact.primitive_integer([Fraction(1, 2), 1, Fraction(3, 2)]) == (1, 2, 3)
    assert exact.proportional((2, 4), (1, 2)) == 2
    assert exact.proportional((1, 0), (0, 1)) is None


def test_normalize_turns_integral_fractions_into_ints():
    assert type(exact.normalize(Fraction(4, 2))) is int
    assert exact.normalize(Fraction(1, 2)) == Fraction(1, 2)
