"""Cartan matrices, real roots, the forms K and E_c, and Coxeter elements.

Vectors in V are integer tuples in the simple-root basis.  Matrices act on
column vectors, so ``matvec(M, v)`` is the image of ``v`` and the matrix of
a product ``s_i s_j`` is ``S_i @ S_j`` (apply ``s_j`` first).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import exact
from .exact import Matrix, Vector


class CartanError(ValueError):
    pass


FINITE, AFFINE, OTHER = "finite", "affine", "other"


def _symmetrizer(a: Matrix) -> tuple:
    """Positive rationals d with d_i a_ij = d_j a_ji, smallest entry 1 per component."""
    n = len(a)
    d: list = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if a[i][j] == 0 or i == j:
                    continue
                want = d[i] * a[i][j] / a[j][i]
                if d[j] is None:
                    d[j] = want
                    comp.append(j)
                    queue.append(j)
                elif d[j] != want:
                    raise CartanError("matrix is not symmetrizable")
        low = min(d[i] for i in comp)
        for i in comp:
            d[i] /= low
    return tuple(d)


@dataclass(frozen=True)
class CartanMatrix:
    a: Matrix
    d: tuple

    def __init__(self, a: Sequence[Sequence[int]], d: Sequence | None = None):
        a = exact.as_matrix([[int(x) for x in row] for row in a])
        n = len(a)
        if any(len(row) != n for row in a):
            raise CartanError("Cartan matrix must be square")
        for i in range(n):
            if a[i][i] != 2:
                raise CartanError(f"diagonal entry a[{i}][{i}] is not 2")
            for j in range(n):
                if i != j and a[i][j] > 0:
                    raise CartanError(f"off-diagonal entry a[{i}][{j}] is positive")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise CartanError(f"a[{i}][{j}] and a[{j}][{i}] must vanish together")
        if d is None:
            d = _symmetrizer(a)
        else:
            d = tuple(Fraction(x) for x in d)
            if len(d) != n or any(x <= 0 for x in d):
                raise CartanError("symmetrizer must have n positive entries")
            for i in range(n):
                for j in range(n):
                    if d[i] * a[i][j] != d[j] * a[j][i]:
                        raise CartanError("d does not symmetrize the matrix")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "d", d)

    @property
    def n(self) -> int:
        return len(self.a)

    @cached_property
    def symmetrized(self) -> Matrix:
        """K(α_i, α_j) = d_i a_ij."""
        return exact.normalize_matrix(
            tuple(tuple(self.d[i] * self.a[i][j] for j in range(self.n)) for i in range(self.n))
        )


def _positive_definite(m: Matrix) -> bool:
    return all(exact.det([row[:k] for row in m[:k]]) > 0 for k in range(1, len(m) + 1))


def _delete(m: Matrix, i: int) -> Matrix:
    return tuple(tuple(x for j, x in enumerate(row) if j != i) for k, row in enumerate(m) if k != i)


def classify(cartan: CartanMatrix) -> str:
    k = cartan.symmetrized
    if _positive_definite(k):
        return FINITE
    # a singular form whose corank-one principal pieces are all positive
    # definite is automatically positive semidefinite (eigenvalue interlacing)
    if exact.det(k) == 0 and all(_positive_definite(_delete(k, i)) for i in range(cartan.n)):
        return AFFINE
    return OTHER


class RootDatum:
    """A Cartan matrix together with a defining word for a Coxeter element.

    ``cox_word`` lists 0-based simple indices; ``c = s_{w[0]} s_{w[1]} ...``.
    """

    def __init__(self, cartan: CartanMatrix, cox_word: Sequence[int] | None = None, name: str = ""):
        n = cartan.n
        word = tuple(range(n)) if cox_word is None else tuple(int(i) for i in cox_word)
        if sorted(word) != list(range(n)):
            raise CartanError(f"Coxeter word must be a permutation of the {n} simple indices")
        self.cartan = cartan
        self.cox_word = word
        self.name = name or f"rank{n}"
        self.n = n

    def __repr__(self) -> str:
        return f"RootDatum({self.name!r}, cox_word={tuple(i + 1 for i in self.cox_word)})"

    # -- basic data ------------------------------------------------------

    @cached_property
    def type_tag(self) -> str:
        return classify(self.cartan)

    @property
    def is_affine(self) -> bool:
        return self.type_tag == AFFINE

    @property
    def is_finite(self) -> bool:
        return self.type_tag == FINITE

    @cached_property
    def K(self) -> Matrix:
        return self.cartan.symmetrized

    @cached_property
    def delta(self) -> Vector | None:
        if not self.is_affine:
            return None
        (v,) = exact.nullspace(self.K)
        v = exact.primitive_integer(v)
        return v if sum(v) > 0 else tuple(-x for x in v)

    @cached_property
    def position(self) -> dict:
        return {i: k for k, i in enumerate(self.cox_word)}

    def _euler_table(self, inverse: bool) -> Matrix:
        # E(α_i∨, α_j) is a_ij when s_i follows s_j, 1 on the diagonal, 0 when
        # s_i precedes s_j; the inverse Coxeter element reverses the word
        n, a, pos = self.n, self.cartan.a, self.position
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                if i == j:
                    row.append(1)
                else:
                    follows = pos[i] > pos[j]
                    row.append(a[i][j] if follows != inverse else 0)
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def Ec(self) -> Matrix:
        """E_c(α_i, α_j) as a matrix: d_i times the coroot table."""
        t = self._euler_table(False)
        return exact.normalize_matrix(tuple(tuple(self.cartan.d[i] * x for x in row) for i, row in enumerate(t)))

    @cached_property
    def Ec_inverse(self) -> Matrix:
        t = self._euler_table(True)
        return exact.normalize_matrix(tuple(tuple(self.cartan.d[i] * x for x in row) for i, row in enumerate(t)))

    # -- forms -----------------------------------------------------------

    def form(self, x: Sequence, y: Sequence):
        """K(x, y) for vectors in the simple-root basis."""
        return exact.normalize(exact.dot(x, exact.matvec(self.K, y)))

    def euler(self, x: Sequence, y: Sequence, inverse: bool = False):
        """E_c(x, y), or E_{c^{-1}}(x, y) when ``inverse``."""
        m = self.Ec_inverse if inverse else self.Ec
        return exact.normalize(exact.dot(x, exact.matvec(m, y)))

    def coroot(self, beta: Sequence) -> Vector:
        kk = self.form(beta, beta)
        if kk == 0:
            raise CartanError(f"{tuple(beta)} is not a real root (K(β,β) = 0)")
        return exact.normalize_vector(Fraction(2 * x) / kk for x in beta)

    def coroot_pairing(self, beta: Sequence, x: Sequence):
        """K(β∨, x)."""
        return exact.normalize(exact.dot(self.coroot(beta), exact.matvec(self.K, x)))

    # -- reflections -----------------------------------------------------

    @cached_property
    def simple_reflections(self) -> tuple:
        n, a = self.n, self.cartan.a
        mats = []
        for i in range(n):
            # column j is s_i(α_j) = α_j - a_ij α_i
            mats.append(tuple(
                tuple((1 if k == j else 0) - (a[i][j] if k == i else 0) for j in range(n))
                for k in range(n)
            ))
        return tuple(mats)

    def simple_reflection(self, i: int) -> Matrix:
        return self.simple_reflections[i]

    def reflect(self, beta: Sequence, x: Sequence) -> Vector:
        """t_β(x) = x - K(β∨, x) β."""
        c = self.coroot_pairing(beta, x)
        return exact.normalize_vector(xi - c * bi for xi, bi in zip(x, beta))

    def reflection_of_root(self, beta: Sequence) -> Matrix:
        cols = [self.reflect(beta, tuple(1 if k == j else 0 for k in range(self.n))) for j in range(self.n)]
        return exact.transpose(tuple(cols))

    def simple_reflect(self, i: int, x: Sequence) -> Vector:
        a = self.cartan.a
        c = sum(a[i][j] * x[j] for j in range(self.n))
        return tuple(x[k] - (c if k == i else 0) for k in range(self.n))

    @cached_property
    def c_matrix(self) -> Matrix:
        m = exact.identity(self.n)
        for i in self.cox_word:
            m = exact.matmul(m, self.simple_reflections[i])
        return m

    @cached_property
    def c_inverse_matrix(self) -> Matrix:
        m = exact.identity(self.n)
        for i in reversed(self.cox_word):
            m = exact.matmul(m, self.simple_reflections[i])
        return m

    def apply_c(self, v: Sequence, power: int = 1) -> Vector:
        m = self.c_matrix if power >= 0 else self.c_inverse_matrix
        for _ in range(abs(power)):
            v = exact.matvec(m, v)
        return tuple(v)

    # -- roots -----------------------------------------------------------

    def positive_real_roots_bounded(self, bound: Sequence[int] | None = None) -> list[Vector]:
        """Positive real roots with every coordinate at most ``bound``.

        Every positive non-simple real root is reached from a simple root by
        height-increasing simple reflections through roots below it, so the
        closure inside the box is complete.
        """
        if self.type_tag == OTHER:
            raise CartanError("root enumeration needs a finite or affine datum")
        if bound is None:
            if not self.is_finite:
                raise CartanError("affine root enumeration needs a bound")
        n = self.n
        simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        inside = (lambda v: True) if bound is None else (lambda v: all(x <= b for x, b in zip(v, bound)))
        found = {v for v in simple if inside(v)}
        queue = deque(found)
        while queue:
            v = queue.popleft()
            for i in range(n):
                w = self.simple_reflect(i, v)
                if w[i] > v[i] and inside(w) and w not in found:
                    found.add(w)
                    queue.append(w)
        return sorted(found, key=lambda v: (sum(v), v))

    @cached_property
    def positive_roots(self) -> tuple:
        if not self.is_finite:
            raise CartanError("the full positive root set is finite only in finite type")
        return tuple(self.positive_real_roots_bounded())

    def is_horizontal(self, beta: Sequence) -> bool:
        if not self.is_affine:
            raise CartanError("horizontality needs an affine datum")
        return self.euler(self.delta, beta, inverse=True) == 0

    def is_root(self, v: Sequence) -> bool:
        """Membership among real roots for finite type (up to sign)."""
        v = tuple(v)
        if all(x <= 0 for x in v):
            v = tuple(-x for x in v)
        return v in set(self.positive_roots)


def positive_representative(v: Sequence) -> Vector:
    """The positive one of ±v (for reflections, which do not see the sign)."""
    v = tuple(v)
    return tuple(-x for x in v) if all(x <= 0 for x in v) else v
