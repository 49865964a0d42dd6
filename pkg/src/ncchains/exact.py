"""Small exact linear algebra over the rationals.

Matrices are tuples of row tuples holding ``int`` or ``Fraction`` entries.
Everything here is deliberately naive: the matrices in this package are at
most about 10 x 10, and exactness matters far more than speed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple, ...]
Vector = tuple


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matvec(a: Matrix, v: Sequence) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vecmat(v: Sequence, a: Matrix) -> Vector:
    return tuple(sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0])))


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def scale(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def outer(u: Sequence, v: Sequence) -> Matrix:
    return tuple(tuple(x * y for y in v) for x in u)


def normalize(x):
    """Turn integral Fractions back into ints so hashing and printing are stable."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def normalize_matrix(a: Matrix) -> Matrix:
    return tuple(tuple(normalize(x) for x in row) for row in a)


def normalize_vector(v: Sequence) -> Vector:
    return tuple(normalize(x) for x in v)


def _echelon(a: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [[Fraction(x) for x in row] for row in a]
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Sequence[Sequence]) -> int:
    return len(_echelon(a)[1])


def det(a: Sequence[Sequence]):
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return normalize(result)


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    red, pivots = _echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return normalize_matrix(tuple(tuple(row[n:]) for row in red))


def nullspace(a: Sequence[Sequence]) -> list[Vector]:
    """A basis of {x : a x = 0}, one vector per free column."""
    if not a:
        return []
    red, pivots = _echelon(a)
    cols = len(a[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * cols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(normalize_vector(x))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """Some solution of a x = b, or None when the system is inconsistent."""
    cols = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = _echelon(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for row, p in zip(red, pivots):
        x[p] = row[cols]
    return normalize_vector(x)


def primitive_integer(v: Sequence) -> Vector:
    """Scale a rational vector to the primitive integer vector with the same direction."""
    from math import gcd, lcm

    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def proportional(u: Sequence, v: Sequence) -> Fraction | None:
    """The scalar s with u = s v, or None if there is none (v must be nonzero)."""
    s = None
    for x, y in zip(u, v):
        if y == 0:
            if x != 0:
                return None
            continue
        r = Fraction(x) / Fraction(y)
        if s is None:
            s = r
        elif s != r:
            return None
    return s
