"""Finite Weyl groups: absolute order, Hurwitz orbits and noncrossing lattices.

Reflections are named by their positive roots, so a T-word is a tuple of
root tuples and the Hurwitz action works on roots directly.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from . import exact
from .chain_system import (
    ChainSystem,
    build_poset,
    check_axioms,
    is_balanced,
    maximal_B_sequences,
)
from .exact import Matrix
from .poset import LabeledPoset
from .report import Report
from .roots import CartanError, RootDatum, positive_representative


class OrbitTooLarge(RuntimeError):
    def __init__(self, limit: int, partial: int):
        super().__init__(f"Hurwitz orbit exceeds {limit} words (stopped at {partial})")
        self.partial = partial


def _require_finite(datum: RootDatum) -> None:
    if not datum.is_finite:
        raise CartanError(f"{datum.name} is not of finite type; affine absolute order is not decided here")


def reflection_length(datum: RootDatum, w: Matrix) -> int:
    """n minus the dimension of the fixed space (valid in finite type)."""
    _require_finite(datum)
    return exact.rank(exact.sub(w, exact.identity(datum.n)))


def absolute_leq(datum: RootDatum, u: Matrix, w: Matrix) -> bool:
    lu = reflection_length(datum, u)
    rest = exact.matmul(exact.inverse(u), w)
    return lu + reflection_length(datum, rest) == reflection_length(datum, w)


def defining_word(datum: RootDatum) -> tuple:
    n = datum.n
    return tuple(tuple(1 if k == i else 0 for k in range(n)) for i in datum.cox_word)


def word_product(datum: RootDatum, word: Sequence[Sequence[int]]) -> Matrix:
    m = exact.identity(datum.n)
    for beta in word:
        m = exact.matmul(m, datum.reflection_of_root(beta))
    return m


def hurwitz_neighbors(datum: RootDatum, word: tuple):
    for i in range(len(word) - 1):
        a, b = word[i], word[i + 1]
        # sigma_i: (a, b) -> (a b a, a); its inverse: (a, b) -> (b, b a b)
        yield word[:i] + (positive_representative(datum.reflect(a, b)), a) + word[i + 2:]
        yield word[:i] + (b, positive_representative(datum.reflect(b, a))) + word[i + 2:]


def hurwitz_orbit(datum: RootDatum, word: Sequence | None = None, limit: int = 1_000_000) -> ChainSystem:
    """Breadth-first closure of a T-word under the braid moves."""
    start = tuple(tuple(r) for r in (word if word is not None else defining_word(datum)))
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for v in hurwitz_neighbors(datum, w):
            if v not in seen:
                seen.add(v)
                if len(seen) > limit:
                    raise OrbitTooLarge(limit, len(seen))
                queue.append(v)
    return ChainSystem(seen)


def coxeter_system(datum: RootDatum, rank_cap: int = 6) -> ChainSystem:
    """C_c: reduced T-words for the Coxeter element."""
    _require_finite(datum)
    if datum.n > rank_cap:
        raise CartanError(f"rank {datum.n} exceeds the cap {rank_cap}")
    return hurwitz_orbit(datum)


def nc_lattice(datum: RootDatum, rank_cap: int = 6) -> LabeledPoset:
    return build_poset(coxeter_system(datum, rank_cap))


def prefix_products(datum: RootDatum, poset: LabeledPoset) -> dict:
    """Element id (a representative prefix) -> its product in W."""
    return {p: word_product(datum, p) for p in poset.elements}


def reflections_below_c(datum: RootDatum) -> list:
    c = datum.c_matrix
    return [beta for beta in datum.positive_roots if absolute_leq(datum, datum.reflection_of_root(beta), c)]


def compatibility_relation(datum: RootDatum) -> frozenset:
    """{(t, t') : 1 < t t' <= c} on the reflections below c."""
    c = datum.c_matrix
    below = reflections_below_c(datum)
    mats = {b: datum.reflection_of_root(b) for b in below}
    pairs = set()
    for a in below:
        for b in below:
            if a == b:
                continue
            if absolute_leq(datum, exact.matmul(mats[a], mats[b]), c):
                pairs.add((a, b))
    return frozenset(pairs)


def triangular_bases(datum: RootDatum) -> ChainSystem:
    """Words of positive roots, E_{c^{-1}}-triangular and a Z-basis of the root lattice."""
    roots = datum.positive_roots
    n = datum.n
    out = []
    stack: list = [()]
    while stack:
        w = stack.pop()
        if len(w) == n:
            if abs(exact.det(w)) == 1:
                out.append(w)
            continue
        for g in roots:
            # the new root comes last, so it must pair to zero with every earlier one
            if all(datum.euler(g, h, inverse=True) == 0 for h in w):
                stack.append(w + (g,))
    return ChainSystem(out)


def verify_word_criteria(datum: RootDatum, rank_cap: int = 6) -> Report:
    _require_finite(datum)
    rep = Report(f"word-criteria {datum.name}", {"type": datum.name, "n": datum.n})
    orbit = coxeter_system(datum, rank_cap)
    rep.metadata["orbit_size"] = len(orbit)
    c = datum.c_matrix
    bad = next((w for w in orbit.sorted_words() if word_product(datum, w) != c), None)
    rep.add("every orbit word multiplies to c", bad is None, bad)
    bad = next((w for w in orbit.sorted_words() if len(w) != datum.n), None)
    rep.add("every orbit word has length n", bad is None, bad)

    relation = compatibility_relation(datum)
    alphabet = reflections_below_c(datum)
    pairwise = maximal_B_sequences(relation, alphabet)
    rep.metadata["reflections_below_c"] = len(alphabet)
    rep.add(
        "maximal pairwise-compatible sequences equal the Hurwitz orbit",
        pairwise.words == orbit.words,
        sorted(pairwise.words ^ orbit.words)[:3],
    )
    tri = triangular_bases(datum)
    rep.add(
        "E-triangular Z-bases equal the Hurwitz orbit",
        tri.words == orbit.words,
        sorted(tri.words ^ orbit.words)[:3],
    )
    defining = defining_word(datum)
    rep.add("defining word is an E-triangular Z-basis", defining in tri.words, defining)
    rep.add("orbit passes the chain-system axioms", check_axioms(orbit).ok)
    rep.add("orbit is balanced", is_balanced(orbit))
    return rep
