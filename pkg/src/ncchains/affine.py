"""Affine type: horizontal roots, factored translations and the factorable
chain system C_c^F.

Group elements act on the dual space V*, with coordinates x_j = <x, α_j>.
A Weyl element with V-matrix M acts by M^{-T}; a translation by μ acts by
x -> x + <x, δ> μ, i.e. by the matrix I + μ δ^T.

Letters are named ``("t", root)`` for a horizontal reflection and
``("f", xi_root)`` for the factored translation matched with a root of Ξ.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import lcm
from typing import Sequence

from . import exact
from .chain_system import (
    ChainSystem,
    binary_relation,
    build_poset,
    check_axioms,
    is_garside,
    shuffle,
    two_letter_prefixes,
)
from .exact import Matrix, Vector
from .letters import letter_key, word_key
from .poset import LabeledPoset
from .report import Report
from .roots import CartanError, RootDatum, positive_representative


class McSulError(RuntimeError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class GroupElement:
    """An invertible exact matrix acting on V*."""

    matrix: Matrix

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(exact.normalize_matrix(exact.matmul(self.matrix, other.matrix)))

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(exact.identity(n))

    @classmethod
    def from_weyl(cls, v_matrix: Matrix) -> "GroupElement":
        return cls(exact.transpose(exact.inverse(v_matrix)))

    @classmethod
    def translation(cls, mu: Sequence, delta: Sequence) -> "GroupElement":
        n = len(delta)
        return cls(exact.normalize_matrix(exact.add(exact.identity(n), exact.outer(mu, delta))))

    def inverse(self) -> "GroupElement":
        return GroupElement(exact.inverse(self.matrix))

    def translation_vector(self, delta: Sequence) -> Vector | None:
        """μ if this is x -> x + <x, δ> μ with <μ, δ> = 0, else None."""
        n = len(delta)
        diff = exact.sub(self.matrix, exact.identity(n))
        j = next(i for i, x in enumerate(delta) if x != 0)
        mu = tuple(Fraction(row[j]) / delta[j] for row in diff)
        if exact.outer(mu, delta) != tuple(tuple(Fraction(x) for x in row) for row in diff):
            return None
        if exact.dot(mu, delta) != 0:
            return None
        return exact.normalize_vector(mu)


def t_letter(root: Sequence[int]) -> tuple:
    return ("t", tuple(root))


def f_letter(xi_root: Sequence[int]) -> tuple:
    return ("f", tuple(xi_root))


def is_f(letter) -> bool:
    return letter[0] == "f"


# -- horizontal data ---------------------------------------------------------


def _require_affine(datum: RootDatum) -> None:
    if not datum.is_affine:
        raise CartanError(f"{datum.name} is not of affine type")


TH_RULES = ("below_delta", "nonfull")


def compute_TH(datum: RootDatum, rule: str = "below_delta") -> list[Vector]:
    """Positive horizontal real roots below δ.

    ``rule="nonfull"`` additionally drops roots of full support; the two rules
    agree unless some quasi-simple root has full support (e.g. D~4 with the
    linear orientation, or any orientation of F~4).
    """
    _require_affine(datum)
    if rule not in TH_RULES:
        raise ValueError(f"unknown rule {rule!r}")
    roots = datum.positive_real_roots_bounded(datum.delta)
    out = [b for b in roots if datum.is_horizontal(b)]
    if rule == "nonfull":
        out = [b for b in out if 0 in b]
    return out


@dataclass(frozen=True)
class HorizontalData:
    th_roots: tuple
    xi: tuple
    cycles: tuple  # cycles[i] = (β, c(β), c²(β), ...)
    segment: dict  # (β, k) -> β + c(β) + ... + c^{k-1}(β)
    segment_of: dict  # root -> (β, k)
    component_of: dict  # root (T_H or Ξ) -> component index

    @property
    def m(self) -> int:
        return len(self.cycles)

    @property
    def ranks(self) -> tuple:
        return tuple(len(c) for c in self.cycles)

    def r(self, beta) -> int:
        return len(self.cycles[self.component_of[tuple(beta)]])

    def c_power(self, beta, k: int):
        """c^k(β) for β in Ξ, read off the cycle."""
        cyc = self.cycles[self.component_of[beta]]
        return cyc[(cyc.index(beta) + k) % len(cyc)]

    def roots_of(self, i: int) -> list:
        return [b for b in self.th_roots if self.component_of[b] == i]


def _composites(datum: RootDatum, th: Sequence) -> set:
    """T_H roots of the form γ + c(γ) + ... + c^{k-1}(γ) with k >= 2."""
    thset = set(th)
    out = set()
    for g in th:
        total, term = g, g
        for _ in range(len(th)):
            term = tuple(datum.apply_c(term))
            if term not in thset:
                break
            total = tuple(x + y for x, y in zip(total, term))
            if total not in thset:
                break
            out.add(total)
    return out


def compute_xi(datum: RootDatum, rule: str = "below_delta") -> HorizontalData:
    th = compute_TH(datum, rule)
    thset = set(th)
    composite = _composites(datum, th)
    xi = [b for b in th if b not in composite]
    xiset = set(xi)
    image = {}
    for b in xi:
        cb = tuple(datum.apply_c(b))
        if cb not in xiset:
            raise McSulError("c does not permute the non-composite horizontal roots", (b, cb))
        image[b] = cb
    cycles = []
    seen = set()
    for b in sorted(xi):
        if b in seen:
            continue
        cyc = [b]
        seen.add(b)
        while image[cyc[-1]] != b:
            nxt = image[cyc[-1]]
            if nxt in seen:
                raise McSulError("c-orbit on Ξ is not a cycle", cyc)
            cyc.append(nxt)
            seen.add(nxt)
        cycles.append(tuple(cyc))
    cycles.sort(key=lambda cyc: (len(cyc), cyc[0]))
    m = len(cycles)
    if len(xi) != datum.n - 2 + m:
        raise McSulError(f"|Ξ| = {len(xi)} but n - 2 + m = {datum.n - 2 + m}", xi)
    segment, segment_of, component_of = {}, {}, {}
    for i, cyc in enumerate(cycles):
        r = len(cyc)
        for j, b in enumerate(cyc):
            component_of[b] = i
            total = (0,) * datum.n
            for k in range(1, r):
                total = tuple(x + y for x, y in zip(total, cyc[(j + k - 1) % r]))
                if total not in thset:
                    raise McSulError("segment of Ξ roots is not a horizontal root", (b, k, total))
                if total in segment_of:
                    raise McSulError("two segments give the same root", total)
                segment[(b, k)] = total
                segment_of[total] = (b, k)
                component_of[total] = i
    if set(segment_of) != thset:
        raise McSulError("some horizontal roots are not segments", sorted(thset - set(segment_of)))
    return HorizontalData(tuple(sorted(th)), tuple(sorted(xi)), tuple(cycles), segment, segment_of, component_of)


# -- translations -------------------------------------------------------------


@dataclass(frozen=True)
class Translation:
    mu: Vector  # translation vector in V* coordinates
    element: GroupElement
    hword: tuple  # reduced T-word (roots) for w^{-1} c, grouped by component
    parts: tuple  # parts[i] = component-i subword of hword


def _path_words(datum: RootDatum, roots: Sequence, length: int) -> list[tuple]:
    """Sequences with consecutive roots non-orthogonal and all others orthogonal."""
    out = []

    def grow(w):
        if len(w) == length:
            out.append(w)
            return
        for b in roots:
            if b in w:
                continue
            if w and datum.form(w[-1], b) == 0:
                continue
            if any(datum.form(a, b) != 0 for a in w[:-1]):
                continue
            grow(w + (b,))

    grow(())
    return out


def _weyl_product(datum: RootDatum, word: Sequence) -> Matrix:
    m = exact.identity(datum.n)
    for b in word:
        m = exact.matmul(m, datum.reflection_of_root(b))
    return m


def _coroot_directions(datum: RootDatum) -> list[Vector]:
    """K(β, ·) for the positive real roots below δ, one per line through 0."""
    return [exact.matvec(datum.K, b) for b in datum.positive_real_roots_bounded(datum.delta)]


def translations_in_interval(datum: RootDatum, hd: HorizontalData | None = None) -> list[Translation]:
    hd = hd or compute_xi(datum)
    delta = datum.delta
    per_component = []
    for i, cyc in enumerate(hd.cycles):
        words = _path_words(datum, hd.roots_of(i), len(cyc) - 1)
        distinct = {}
        for w in sorted(words):
            mat = _weyl_product(datum, w)
            if mat not in distinct:
                # reflections are involutions, so the reversed word inverts
                distinct[mat] = (w, _weyl_product(datum, w[::-1]))
        per_component.append(sorted(((m, inv, w) for m, (w, inv) in distinct.items()), key=lambda x: x[2]))
    directions = _coroot_directions(datum)
    c = datum.c_matrix
    n = datum.n
    k = next(i for i, x in enumerate(delta) if x != 0)
    found = {}
    for combo in product(*per_component):
        v_inv = exact.identity(n)
        for _, inv, _ in reversed(combo):
            v_inv = exact.matmul(v_inv, inv)
        w_v = exact.matmul(c, v_inv)
        # on V a translation reads v -> v - <μ, v> δ, so w - I has rank one along δ
        diff = [[w_v[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
        if not any(diff[k]):
            continue
        if any(diff[i][j] * delta[k] != diff[k][j] * delta[i] for i in range(n) for j in range(n)):
            continue
        mu = exact.normalize_vector(Fraction(-diff[k][j], delta[k]) for j in range(n))
        if mu in found or not any(exact.proportional(mu, d) is not None for d in directions):
            continue
        parts = tuple(word for _, _, word in combo)
        found[mu] = Translation(mu, GroupElement.translation(mu, delta), sum(parts, ()), parts)
    return [found[mu] for mu in sorted(found)]


@dataclass(frozen=True)
class FactoredTranslation:
    component: int
    mu: Vector
    element: GroupElement


class _Decomposition:
    """E_0 = U_0 ⊕ U_1 ⊕ ... ⊕ U_m, realised on V through x -> K(x, ·)."""

    def __init__(self, datum: RootDatum, hd: HorizontalData):
        self.datum = datum
        n = datum.n
        self.bases = [list(cyc[:-1]) for cyc in hd.cycles]
        flat = [b for basis in self.bases for b in basis]
        # u_0: K-orthogonal to every component, independent of δ
        eqs = [exact.matvec(datum.K, b) for b in flat]
        null = exact.nullspace(eqs) if eqs else [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
        u0 = next((u for u in null if exact.rank([u, datum.delta]) == 2), None)
        if u0 is None:
            raise McSulError("no axis direction orthogonal to the components")
        self.u0 = u0
        cols = flat + [u0, datum.delta]
        if exact.rank(cols) != n:
            raise McSulError("component spans, axis and δ do not span V")
        self.columns = exact.transpose(tuple(tuple(c) for c in cols))

    def split(self, mu: Sequence) -> tuple[list, Vector]:
        """(λ_1..λ_m, λ_0) with μ = Σ λ_i + λ_0."""
        datum = self.datum
        x = exact.solve(datum.K, mu)
        if x is None:
            raise McSulError("translation vector is not in the image of K", mu)
        coeffs = exact.solve(self.columns, x)
        if coeffs is None:
            raise McSulError("decomposition of the translation vector is singular", mu)
        parts, pos = [], 0
        for basis in self.bases:
            xi = [0] * datum.n
            for b in basis:
                xi = [s + coeffs[pos] * bb for s, bb in zip(xi, b)]
                pos += 1
            parts.append(exact.normalize_vector(exact.matvec(datum.K, xi)))
        x0 = [coeffs[pos] * u for u in self.u0]
        return parts, exact.normalize_vector(exact.matvec(datum.K, x0))


def _check_q(q: Sequence, m: int) -> tuple:
    q = tuple(Fraction(x) for x in q)
    if len(q) != m or sum(q) != 1 or any(x <= 0 for x in q):
        raise McSulError(f"q must be {m} positive rationals summing to 1", q)
    return q


def factor_translation(datum: RootDatum, hd: HorizontalData, t: Translation, q: Sequence) -> list[FactoredTranslation]:
    q = _check_q(q, hd.m)
    parts, lam0 = _Decomposition(datum, hd).split(t.mu)
    out = []
    for i, lam in enumerate(parts):
        mu = exact.normalize_vector(a + q[i] * b for a, b in zip(lam, lam0))
        out.append(FactoredTranslation(i, mu, GroupElement.translation(mu, datum.delta)))
    return out


# -- the component groups ------------------------------------------------------


class ComponentGroup:
    """The subgroup generated by one component's letters, in reduced form.

    Every letter g satisfies g - I = B C P with P(x) = (<x, e_1>, ..., <x, e_r>)
    for the component's Ξ roots e_j and B a basis of U_i ⊕ U_0, so g is stored
    as the r x r matrix C and products use C + C' + C Q C' with Q = P B.
    """

    def __init__(self, datum: RootDatum, hd: HorizontalData, dec: _Decomposition, i: int):
        self.datum = datum
        self.index = i
        self.e = list(hd.cycles[i])
        self.r = len(self.e)
        basis = [exact.matvec(datum.K, b) for b in dec.bases[i]] + [exact.matvec(datum.K, dec.u0)]
        self.B = exact.transpose(tuple(basis))  # n x r, columns in V*
        self.P = tuple(tuple(b) for b in self.e)  # r x n
        self.Q = exact.normalize_matrix(exact.matmul(self.P, self.B))
        # C = B_S^{-1} (g - I)_{S,T} P_T^{-1} for invertible minors B_S, P_T, so once
        # the letters fix the denominator of g - I, den * C is an integer matrix
        rows = exact._echelon(exact.transpose(self.B))[1]
        cols = exact._echelon(self.P)[1]
        self._minors = [exact.inverse(tuple(self.B[j] for j in rows)),
                        exact.inverse(tuple(tuple(row[j] for j in cols) for row in self.P))]
        self.set_denominator(1)
        self.zero = tuple((0,) * self.r for _ in range(self.r))

    def set_denominator(self, full_den: int) -> None:
        """Fix the integer scale from a common denominator of every full matrix."""
        self.den = full_den
        for m in self._minors:
            for x in (x for row in m for x in row):
                self.den = lcm(self.den, Fraction(x).denominator)
        q = [[Fraction(x) for x in row] for row in self.Q]
        self._qden = 1
        for x in (x for row in q for x in row):
            self._qden = lcm(self._qden, x.denominator)
        self._qint = tuple(tuple(int(x * self._qden) for x in row) for row in q)
        self._div = self.den * self._qden

    def _store(self, c: Matrix) -> Matrix:
        out = []
        for row in c:
            vals = [Fraction(x) * self.den for x in row]
            if any(v.denominator != 1 for v in vals):
                raise McSulError("group element leaves the expected lattice", c)
            out.append(tuple(int(v) for v in vals))
        return tuple(out)

    def _load(self, a: Matrix) -> Matrix:
        return exact.normalize_matrix(tuple(tuple(Fraction(x, self.den) for x in row) for row in a))

    def _coords(self, functional: Sequence) -> Vector:
        y = exact.solve(self.B, functional)
        if y is None or exact.matvec(self.B, y) != tuple(Fraction(x) for x in functional):
            raise McSulError("letter does not act inside its component", functional)
        return y

    def _in_e_basis(self, root: Sequence) -> Vector:
        y = exact.solve(exact.transpose(self.P), root)
        if y is None:
            raise McSulError("root is not in the span of its component", root)
        return y

    def _reflection_coords(self, beta: Sequence) -> Matrix:
        kappa = exact.matvec(self.datum.K, self.datum.coroot(beta))
        return exact.scale(-1, exact.outer(self._coords(kappa), self._in_e_basis(beta)))

    def _translation_coords(self, mu: Sequence) -> Matrix:
        return exact.outer(self._coords(mu), (1,) * self.r)

    def calibrate(self, betas: Sequence, mus: Sequence) -> None:
        """Choose the integer scale from the letters' full matrices."""
        coords = [self._reflection_coords(b) for b in betas] + [self._translation_coords(m) for m in mus]
        full = [exact.matmul(exact.matmul(self.B, c), self.P) for c in coords]
        self.set_denominator(lcm(1, *(Fraction(x).denominator for m in full for row in m for x in row)))

    def reflection(self, beta: Sequence) -> Matrix:
        return self._store(self._reflection_coords(beta))

    def translation(self, mu: Sequence) -> Matrix:
        return self._store(self._translation_coords(mu))

    def premultiply(self, b: Matrix) -> Matrix:
        """Q b in integer form, cached by callers that multiply by the same b repeatedly."""
        r = range(self.r)
        return tuple(tuple(sum(self._qint[i][k] * b[k][j] for k in r) for j in r) for i in r)

    def mul(self, a: Matrix, b: Matrix, qb: Matrix | None = None) -> Matrix:
        qb = self.premultiply(b) if qb is None else qb
        r = range(self.r)
        out = []
        for i in r:
            ai = a[i]
            row = []
            for j in r:
                q, rem = divmod(sum(ai[k] * qb[k][j] for k in r), self._div)
                if rem:
                    raise McSulError("group element leaves the expected lattice", (a, b))
                row.append(ai[j] + b[i][j] + q)
            out.append(tuple(row))
        return tuple(out)

    def inverse(self, a: Matrix) -> Matrix:
        c = self._load(a)
        m = exact.inverse(exact.add(exact.identity(self.r), exact.matmul(c, self.Q)))
        return self._store(exact.scale(-1, exact.matmul(m, c)))

    def full_matrix(self, a: Matrix) -> Matrix:
        n = self.datum.n
        return exact.normalize_matrix(exact.add(exact.identity(n), exact.matmul(exact.matmul(self.B, self._load(a)), self.P)))


@dataclass
class Interval:
    """[1, c_i] inside one component group, with integer-scaled weights."""

    component: int
    letters: dict  # key -> reduced matrix
    weights: dict  # key -> scaled weight
    top: Matrix
    total: int
    fwd: dict
    bwd: dict
    members: frozenset
    group: ComponentGroup

    def contains(self, u) -> bool:
        return u in self.members

    def prefix_compatible(self, a, b) -> bool:
        """Whether the two-letter word ab starts a reduced word for c_i."""
        g = self.group
        ua = self.letters[a]
        uab = g.mul(ua, self.letters[b])
        wa, wb = self.weights[a], self.weights[b]
        return (
            ua in self.members
            and uab in self.members
            and self.fwd.get(ua) == wa
            and self.fwd.get(uab) == wa + wb
            and uab != g.zero
        )

    def covers(self) -> list[tuple]:
        g = self.group
        out = []
        for u in sorted(self.members, key=letter_key):
            for key in sorted(self.letters, key=letter_key):
                v = g.mul(u, self.letters[key])
                if v in self.members and self.fwd[v] == self.fwd[u] + self.weights[key]:
                    out.append((u, v, key))
        return out


def _weighted_search(group: ComponentGroup, start: Matrix, steps: dict, weights: dict, total: int, right: bool = True) -> dict:
    """Least scaled weight of a word reaching each element from ``start``."""
    cached = {key: group.premultiply(mat) for key, mat in steps.items()}
    dist = {start: 0}
    buckets = defaultdict(list)
    buckets[0].append(start)
    for level in range(total + 1):
        for u in buckets.pop(level, []):
            if dist[u] != level:
                continue
            for key, mat in steps.items():
                nd = level + weights[key]
                if nd > total:
                    continue
                v = group.mul(u, mat, cached[key]) if right else group.mul(mat, u)
                if v not in dist or dist[v] > nd:
                    dist[v] = nd
                    buckets[nd].append(v)
    return dist


def build_interval(group: ComponentGroup, letters: dict, weights: dict, top: Matrix, total: int, limit: int) -> Interval:
    fwd = _weighted_search(group, group.zero, letters, weights, total)
    if len(fwd) > limit:
        raise McSulError(f"interval search exceeded {limit} elements", len(fwd))
    if fwd.get(top) != total:
        raise McSulError("c_i is not reached with the expected weight", fwd.get(top))
    inverses = {k: group.inverse(m) for k, m in letters.items()}
    bwd = _weighted_search(group, top, inverses, weights, total)
    members = frozenset(u for u, d in fwd.items() if u in bwd and d + bwd[u] == total)
    return Interval(group.index, dict(letters), dict(weights), top, total, fwd, bwd, members, group)


# -- the whole structure -----------------------------------------------------------


def default_q(m: int) -> tuple:
    return tuple(Fraction(1, m) for _ in range(m))


class McSul:
    """Horizontal data, translations, factored translations and intervals for one datum."""

    def __init__(self, datum: RootDatum, q: Sequence | None = None, limit: int = 200_000):
        _require_affine(datum)
        self.datum = datum
        self.hd = compute_xi(datum)
        m = self.hd.m
        if m < 1:
            raise McSulError("no non-homogeneous components")
        self.q = _check_q(q if q is not None else default_q(m), m)
        self.limit = limit
        self.translations = translations_in_interval(datum, self.hd)
        if not self.translations:
            raise McSulError("no translations found in the interval")
        self.decomposition = _Decomposition(datum, self.hd)
        self.factorizations = [factor_translation(datum, self.hd, t, self.q) for t in self.translations]
        self.groups = [ComponentGroup(datum, self.hd, self.decomposition, i) for i in range(m)]
        self._build_factors()
        self._build_intervals()
        self._match_factors()

    # -- construction steps ---------------------------------------------

    def _build_factors(self) -> None:
        per: list[dict] = [dict() for _ in range(self.hd.m)]
        for fs in self.factorizations:
            for f in fs:
                per[f.component].setdefault(f.mu, f)
        self.factors_by_component = [[d[mu] for mu in sorted(d)] for d in per]

    def _build_intervals(self) -> None:
        hd, m = self.hd, self.hd.m
        self.c_parts = []
        self.intervals = []
        for i, g in enumerate(self.groups):
            g.calibrate(hd.roots_of(i), [f.mu for f in self.factors_by_component[i]])
            letters, weights = self._component_letters(i)
            # c_i = f_i v_i for any translation; every choice must agree
            tops = set()
            for t, fs in zip(self.translations, self.factorizations):
                u = g.translation(fs[i].mu)
                for b in t.parts[i]:
                    u = g.mul(u, g.reflection(b))
                tops.add(u)
            if len(tops) != 1:
                raise McSulError(f"component {i}: c_i depends on the translation", len(tops))
            top = tops.pop()
            self.c_parts.append(top)
            total = m * (len(hd.cycles[i]) - 1) + 2
            self.intervals.append(build_interval(g, letters, weights, top, total, self.limit))

    def _component_letters(self, i: int) -> tuple[dict, dict]:
        g, m = self.groups[i], self.hd.m
        letters, weights = {}, {}
        for b in self.hd.roots_of(i):
            letters[("t", b)] = g.reflection(b)
            weights[("t", b)] = m
        for j, f in enumerate(self.factors_by_component[i]):
            letters[("f?", j)] = g.translation(f.mu)
            weights[("f?", j)] = 2
        return letters, weights

    def _match_factors(self) -> None:
        """f_β is the unique factor f with t_β f not a prefix and f t_β a prefix."""
        self.f_of = {}
        self.name_of_key = []
        for i, cyc in enumerate(self.hd.cycles):
            iv = self.intervals[i]
            keys = [("f?", j) for j in range(len(self.factors_by_component[i]))]
            names = {}
            for beta in cyc:
                t = ("t", beta)
                cands = [k for k in keys if iv.prefix_compatible(k, t) and not iv.prefix_compatible(t, k)]
                if len(cands) != 1:
                    raise McSulError("factored translation for a Ξ root is not unique", (beta, len(cands)))
                if cands[0] in names:
                    raise McSulError("two Ξ roots share a factored translation", (beta, names[cands[0]]))
                names[cands[0]] = ("f", beta)
                self.f_of[beta] = self.factors_by_component[i][cands[0][1]]
            if len(names) != len(keys):
                raise McSulError("factored translations and Ξ roots are not in bijection", (len(names), len(keys)))
            rename = {k: k if k[0] == "t" else names[k] for k in iv.letters}
            iv.letters = {rename[k]: v for k, v in iv.letters.items()}
            iv.weights = {rename[k]: v for k, v in iv.weights.items()}

    # -- letters -----------------------------------------------------------

    @property
    def m(self) -> int:
        return self.hd.m

    def t_name(self, beta, k: int = 1) -> tuple:
        return ("t", self.hd.segment[(beta, k)])

    def f_name(self, beta) -> tuple:
        return ("f", beta)

    @cached_property
    def alphabet(self) -> list:
        out = [("t", b) for b in self.hd.th_roots] + [("f", b) for b in self.hd.xi]
        return sorted(out, key=letter_key)

    def component_of_letter(self, letter) -> int:
        return self.hd.component_of[letter[1]]

    def weight(self, letter) -> Fraction:
        return Fraction(2, self.m) if is_f(letter) else Fraction(1)

    def element(self, letter) -> GroupElement:
        if is_f(letter):
            return self.f_of[letter[1]].element
        return GroupElement(exact.transpose(self.datum.reflection_of_root(letter[1])))

    # -- posets and chain systems ---------------------------------------

    def factorable_interval(self, i: int) -> LabeledPoset:
        iv = self.intervals[i]
        covers = iv.covers()
        below = defaultdict(list)
        for lo, hi, key in covers:
            below[hi].append((lo, key))
        # name each element by its shortlex-least word from the bottom
        name = {iv.group.zero: ()}
        for u in sorted(iv.members, key=lambda u: iv.fwd[u]):
            if u == iv.group.zero:
                continue
            name[u] = min((name[lo] + (key,) for lo, key in below[u]), key=word_key)
        return LabeledPoset(name.values(), [(name[lo], name[hi], key) for lo, hi, key in covers])

    def component_system(self, i: int) -> ChainSystem:
        return ChainSystem(self.factorable_interval(i).maximal_chains())

    def build_CcF(self, bound: int = 200_000) -> ChainSystem:
        from math import factorial

        lengths = [len(c) for c in self.hd.cycles]
        systems = [self.component_system(i) for i in range(self.m)]
        count = factorial(sum(lengths))
        for L, s in zip(lengths, systems):
            count = count // factorial(L) * len(s)
        if count > bound:
            raise McSulError(f"C_c^F would have {count} words (bound {bound})", count)
        out = systems[0]
        for s in systems[1:]:
            out = shuffle(out, s)
        return out

    def prefix_compatible(self, a, b) -> bool:
        """Two-letter prefix test for C_c^F, decided in the factorable intervals."""
        i, j = self.component_of_letter(a), self.component_of_letter(b)
        if i != j:
            return True
        return self.intervals[i].prefix_compatible(a, b)

    def mcsul_relation(self) -> frozenset:
        """The closed-form relation on T_H ∪ F; reflection pairs use interval membership."""
        hd = self.hd
        pairs = set()
        for a in self.alphabet:
            for b in self.alphabet:
                i, j = self.component_of_letter(a), self.component_of_letter(b)
                if i != j:
                    pairs.add((a, b))
                    continue
                if is_f(a) and is_f(b):
                    continue
                if is_f(a) or is_f(b):
                    gamma = a[1] if is_f(a) else b[1]
                    beta, k = hd.segment_of[b[1] if is_f(a) else a[1]]
                    if is_f(a):
                        blocked = {hd.c_power(beta, s) for s in range(1, k + 1)}
                    else:
                        blocked = {hd.c_power(beta, s) for s in range(0, k)}
                    if gamma not in blocked:
                        pairs.add((a, b))
                    continue
                if self.intervals[i].prefix_compatible(a, b):
                    pairs.add((a, b))
        return frozenset(pairs)

    # -- verification -------------------------------------------------------

    def verify_good_bij(self) -> Report:
        hd = self.hd
        rep = Report(f"good-bijection {self.datum.name}", self.metadata())
        mismatches = []
        cases = 0
        for i, cyc in enumerate(hd.cycles):
            iv = self.intervals[i]
            r = len(cyc)
            for beta in cyc:
                for gamma in cyc:
                    for k in range(1, r):
                        t, f = self.t_name(beta, k), self.f_name(gamma)
                        before = gamma not in {hd.c_power(beta, s) for s in range(1, k + 1)}
                        after = gamma not in {hd.c_power(beta, s) for s in range(0, k)}
                        got_before = iv.prefix_compatible(f, t)
                        got_after = iv.prefix_compatible(t, f)
                        cases += 1
                        if got_before != before or got_after != after:
                            mismatches.append({
                                "beta": beta, "gamma": gamma, "k": k,
                                "f_then_t": [got_before, before], "t_then_f": [got_after, after],
                            })
        rep.metadata["cases"] = cases
        rep.add("closed-form conditions match interval membership", not mismatches, mismatches[:5])
        bad = []
        for beta in hd.xi:
            f = self.element(self.f_name(beta))
            t = self.element(("t", beta))
            if f * t == t * f:
                bad.append(beta)
            if self.component_of_letter(self.f_name(beta)) != hd.component_of[beta]:
                bad.append(beta)
        rep.add("f_β lies in β's component and does not commute with t_β", not bad, bad)
        return rep

    def metadata(self) -> dict:
        hd = self.hd
        return {
            "type": self.datum.name,
            "n": self.datum.n,
            "m": hd.m,
            "delta": self.datum.delta,
            "cycle_lengths": hd.ranks,
            "xi_size": len(hd.xi),
            "th_size": len(hd.th_roots),
            "f_size": sum(len(fs) for fs in self.factors_by_component),
            "translations": len(self.translations),
            "q": self.q,
        }

    def verify_structure(self, ccf: ChainSystem | None = None) -> Report:
        datum, hd, m, n = self.datum, self.hd, self.m, self.datum.n
        rep = Report(f"mcsul {datum.name}", self.metadata())
        rep.add("|Ξ| = n - 2 + m", len(hd.xi) == n - 2 + m, len(hd.xi))
        rep.add("|T_H| = Σ r(r-1)", len(hd.th_roots) == sum(r * (r - 1) for r in hd.ranks), len(hd.th_roots))
        rep.add("|F| = |Ξ|", sum(len(fs) for fs in self.factors_by_component) == len(hd.xi))
        bad = [b for b in hd.xi if hd.c_power(b, hd.r(b)) != b or tuple(datum.apply_c(b, hd.r(b))) != b]
        rep.add("c^r fixes every Ξ root", not bad, bad)
        bad = [b for b in hd.th_roots if datum.euler(datum.delta, b, inverse=True) != 0]
        rep.add("T_H roots pair to zero with δ", not bad, bad)

        c_star = GroupElement.from_weyl(datum.c_matrix)
        bad = []
        for t in self.translations:
            v = GroupElement.identity(n)
            for b in t.hword:
                v = v * GroupElement(exact.transpose(datum.reflection_of_root(b)))
            if t.element * v != c_star:
                bad.append(t.mu)
        rep.add("w · Π(hword) = c for every translation", not bad, bad[:3])
        bad = [t.mu for t, fs in zip(self.translations, self.factorizations) if len(fs) != m]
        rep.add("each translation has m factors", not bad, bad)
        bad = []
        for t, fs in zip(self.translations, self.factorizations):
            prod_ = GroupElement.identity(n)
            for f in fs:
                prod_ = prod_ * f.element
            if prod_ != t.element:
                bad.append(t.mu)
            for f in fs:
                for g in fs:
                    if f.element * g.element != g.element * f.element:
                        bad.append((t.mu, "commute"))
        rep.add("Π f_i = w and the factors commute", not bad, bad[:3])
        bad = []
        for i, g in enumerate(self.groups):
            for t in self.translations:
                # the reduced representation must agree with the full V* action
                u = g.translation(self.factorizations[self.translations.index(t)][i].mu)
                full = g.full_matrix(u)
                if full != self.factorizations[self.translations.index(t)][i].element.matrix:
                    bad.append((i, t.mu))
        rep.add("reduced component coordinates reproduce the V* action", not bad, bad[:3])

        for i, iv in enumerate(self.intervals):
            poset = self.factorable_interval(i)
            r = len(hd.cycles[i])
            ok, witness = poset.is_lattice()
            rep.add(f"component {i}: interval is a lattice", ok, witness)
            heights = {sum((self.weight(a) for a in w), Fraction(0)) for w in poset.maximal_chains()}
            rep.add(f"component {i}: weighted height (r-1) + 2/m", heights == {Fraction(r - 1) + Fraction(2, m)}, heights)

        ccf = ccf if ccf is not None else self.build_CcF()
        rep.metadata["CcF_size"] = len(ccf)
        factor_sets = {frozenset(f.mu for f in fs) for fs in self.factorizations}
        bad = []
        for w in ccf.sorted_words():
            fs = [a for a in w if is_f(a)]
            ts = [a for a in w if not is_f(a)]
            if len(ts) != n - 2 or len(fs) != m:
                bad.append(("letter counts", w))
            elif frozenset(self.f_of[a[1]].mu for a in fs) not in factor_sets:
                bad.append(("F-letters are not the factors of one translation", w))
            elif sum((self.weight(a) for a in w), Fraction(0)) != n:
                bad.append(("weighted length", w))
            if bad:
                break
        rep.add("every C_c^F word: n-2 reflections, m factors of one translation, weight n", not bad, bad)
        rep.add("C_c^F passes the chain-system axioms", check_axioms(ccf).ok)
        rel = self.mcsul_relation()
        prefixes = two_letter_prefixes(ccf)
        rep.add("relation equals the two-letter prefixes of C_c^F", rel == prefixes,
                sorted(rel ^ prefixes, key=letter_key)[:4])
        rep.add("ordered pairs in words equal the two-letter prefixes", binary_relation(ccf) == prefixes)
        same_ff = [p for p in rel if is_f(p[0]) and is_f(p[1]) and self.component_of_letter(p[0]) == self.component_of_letter(p[1])]
        rep.add("no same-component F-F pairs", not same_ff, same_ff[:3])
        return rep

    def garside_report(self, ccf: ChainSystem | None = None) -> Report:
        ccf = ccf if ccf is not None else self.build_CcF()
        g = is_garside(ccf, self.weight)
        rep = Report(f"garside CcF {self.datum.name}", {"words": len(ccf)})
        rep.extend(g.checks)
        return rep


# -- bounded Hurwitz search for reflection pairs -----------------------------------


def bounded_pair_search(datum: RootDatum, pairs: Sequence[tuple], depth: int = 4, limit: int = 200_000) -> dict:
    """For each pair of roots, True if it occurs consecutively in some word within
    ``depth`` Hurwitz moves of the defining word, else None (unknown)."""
    from .finite_nc import defining_word, hurwitz_neighbors

    wanted = {tuple(p) for p in pairs}
    start = defining_word(datum)
    seen = {start}
    frontier = [start]
    hits = set()
    for _ in range(depth + 1):
        nxt = []
        for w in frontier:
            # consecutive letters of a reduced word multiply to something below c
            for i in range(len(w) - 1):
                if (w[i], w[i + 1]) in wanted:
                    hits.add((w[i], w[i + 1]))
            for v in hurwitz_neighbors(datum, w):
                if v not in seen and len(seen) < limit:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
        if hits == wanted:
            break
    return {p: (True if p in hits else None) for p in wanted}
