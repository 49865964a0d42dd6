"""Tube letters, Hom/Ext vanishing and regular para-exceptional sequences.

A tube is a cyclically ordered tuple of quasi-simple labels (β, c(β), ...).
The letter ``("R", β, k)`` stands for the indecomposable of quasi-length k
with quasi-top β; its quasi-socle is c^{k-1}(β) and τ moves every label one
step along the cycle.  Letters with k = r are the F-letters.
"""

from __future__ import annotations

from typing import Sequence

from .chain_system import (
    ChainSystem,
    build_poset,
    check_axioms,
    maximal_B_sequences,
    shuffle,
    two_letter_prefixes,
)
from .letters import letter_key
from .poset import LabeledPoset, find_isomorphism, labeled_product
from .report import Report


class TubeSystem:
    """Several tubes, each a cyclically ordered tuple of hashable labels."""

    def __init__(self, cycles: Sequence[Sequence]):
        self.cycles = tuple(tuple(c) for c in cycles)
        self.tube_of = {}
        self.position = {}
        for t, cyc in enumerate(self.cycles):
            if not cyc:
                raise ValueError("empty tube")
            for i, b in enumerate(cyc):
                if b in self.tube_of:
                    raise ValueError(f"label {b!r} appears in two tubes")
                self.tube_of[b] = t
                self.position[b] = i

    @classmethod
    def abstract(cls, rank: int) -> "TubeSystem":
        if rank < 1:
            raise ValueError("tube rank must be positive")
        return cls([tuple(range(rank))])

    def rank(self, beta) -> int:
        return len(self.cycles[self.tube_of[beta]])

    def shift(self, beta, steps: int = 1):
        cyc = self.cycles[self.tube_of[beta]]
        return cyc[(self.position[beta] + steps) % len(cyc)]

    def tau(self, letter) -> tuple:
        _, beta, k = letter
        return ("R", self.shift(beta), k)

    def is_exceptional(self, letter) -> bool:
        return letter[2] < self.rank(letter[1])

    def is_F(self, letter) -> bool:
        return letter[2] == self.rank(letter[1])

    def letters(self, tube: int | None = None) -> list:
        """Every brick: quasi-length 1..r in each tube."""
        tubes = range(len(self.cycles)) if tube is None else [tube]
        out = [("R", b, k) for t in tubes for b in self.cycles[t] for k in range(1, len(self.cycles[t]) + 1)]
        return sorted(out, key=letter_key)

    # -- Hom / Ext --------------------------------------------------------

    def hom_nonzero(self, x, y) -> bool:
        """A quotient of x (same quasi-top) matches a submodule of y (same quasi-socle)."""
        _, b, k = x
        _, g, l = y
        if self.tube_of[b] != self.tube_of[g]:
            return False
        return any(b == self.shift(g, l - j) for j in range(1, min(k, l) + 1))

    def ext_nonzero(self, x, y) -> bool:
        # Ext^1(X, Y) is dual to Hom(Y, τX)
        if self.tube_of[x[1]] != self.tube_of[y[1]]:
            return False
        return self.hom_nonzero(y, self.tau(x))

    def orthogonal(self, x, y) -> bool:
        """Hom(x, y) = 0 = Ext^1(x, y)."""
        return not self.hom_nonzero(x, y) and not self.ext_nonzero(x, y)

    # -- sequences ----------------------------------------------------------

    def relation(self, tube: int | None = None) -> frozenset:
        """(X, Y) is a two-term brick sequence: nothing maps back from Y to X."""
        letters = self.letters(tube)
        return frozenset((x, y) for x in letters for y in letters if x != y and self.orthogonal(y, x))

    def chain_system(self, tube: int | None = None, workers: int = 1) -> ChainSystem:
        return maximal_B_sequences(self.relation(tube), self.letters(tube), workers)

    def per_tube_shuffle(self) -> ChainSystem:
        out = self.chain_system(0)
        for t in range(1, len(self.cycles)):
            out = shuffle(out, self.chain_system(t))
        return out


def tube_system(hd) -> TubeSystem:
    """The non-homogeneous tubes of an affine datum, labeled by Ξ roots."""
    return TubeSystem(hd.cycles)


def B_rpe(tubes: TubeSystem) -> frozenset:
    return tubes.relation()


def C_rpe(tubes: TubeSystem, bound: int = 200_000, workers: int = 1) -> ChainSystem:
    from math import factorial, prod

    # r^r words per tube of rank r, shuffled together
    ranks = [len(c) for c in tubes.cycles]
    lengths = [r for r in ranks]
    expected = factorial(sum(lengths)) // prod(factorial(L) for L in lengths) * prod(r**r for r in ranks)
    if expected > bound:
        raise ValueError(f"C_rpe would have about {expected} words (bound {bound})")
    return tubes.chain_system(workers=workers)


def tube_poset(rank: int, cap: int = 6) -> LabeledPoset:
    if rank > cap:
        raise ValueError(f"tube rank {rank} exceeds the cap {cap}")
    return build_poset(TubeSystem.abstract(rank).chain_system())


def compare_with_type_B(rank: int) -> Report:
    from .cartan_types import datum_from_name
    from .finite_nc import nc_lattice

    rep = Report(f"tube rank {rank}", {"rank": rank})
    tubes = TubeSystem.abstract(rank)
    ct = tubes.chain_system()
    rep.metadata["words"] = len(ct)
    rep.metadata["letters"] = len(tubes.letters())
    rep.add("alphabet has r^2 bricks", len(tubes.letters()) == rank * rank)
    rep.add("chain-system axioms", check_axioms(ct).ok)
    p = build_poset(ct)
    rep.metadata["elements"] = len(p)
    rep.metadata["maximal_chains"] = p.count_maximal_chains()
    if rank == 1:
        rep.add("rank 1 gives a two-element chain", len(p) == 2 and len(ct) == 1)
        return rep
    q = nc_lattice(datum_from_name(f"B{rank}"))
    iso = find_isomorphism(p, q, ignore_labels=True)
    rep.add(f"unlabeled isomorphic to NC(B{rank})", iso is not None)
    return rep


# -- comparison with the factorable chain system -----------------------------------


def omega(mcsul, letter) -> tuple:
    """Exceptional (β, k) goes to the reflection in β_(k); F-letter (β, r) to f_β."""
    _, beta, k = letter
    if k == mcsul.hd.r(beta):
        return mcsul.f_name(beta)
    return mcsul.t_name(beta, k)


def verify_omega_iso(mcsul, ccf: ChainSystem | None = None, crpe: ChainSystem | None = None) -> Report:
    tubes = tube_system(mcsul.hd)
    rep = Report(f"omega {mcsul.datum.name}", {"type": mcsul.datum.name, "tube_ranks": mcsul.hd.ranks})
    letters = tubes.letters()
    images = {x: omega(mcsul, x) for x in letters}
    rep.metadata["alphabet"] = len(letters)
    rep.add("ω is injective", len(set(images.values())) == len(images))
    rep.add("ω hits exactly T_H ∪ F", set(images.values()) == set(mcsul.alphabet))
    brpe = B_rpe(tubes)
    mapped = frozenset((images[x], images[y]) for x, y in brpe)
    target = mcsul.mcsul_relation()
    diff = sorted(mapped ^ target, key=letter_key)
    rep.add("ω maps B_rpe onto the relation on T_H ∪ F", not diff, diff[:4])
    crpe = crpe if crpe is not None else C_rpe(tubes)
    ccf = ccf if ccf is not None else mcsul.build_CcF()
    rep.metadata["C_rpe"] = len(crpe)
    rep.metadata["C_c^F"] = len(ccf)
    image = crpe.relabel(images)
    rep.add("ω(C_rpe) = C_c^F word by word", image.words == ccf.words,
            sorted(image.words ^ ccf.words, key=letter_key)[:2])
    rep.add("C_rpe is the shuffle of the per-tube systems", crpe.words == tubes.per_tube_shuffle().words)
    rep.add("C_rpe passes the chain-system axioms", check_axioms(crpe).ok)
    rep.add("two-letter prefixes of C_rpe generate B_rpe", two_letter_prefixes(crpe) == brpe)
    n, m = mcsul.datum.n, mcsul.m
    bad = [w for w in crpe.sorted_words()
           if len(w) != n - 2 + m or sorted(tubes.tube_of[x[1]] for x in w if tubes.is_F(x)) != list(range(m))]
    rep.add("every word has length n-2+m and one F-letter per tube", not bad, bad[:2])
    return rep


def product_of_type_B(tubes: TubeSystem) -> LabeledPoset:
    """Labeled product of the per-tube posets (for comparison with P(C_rpe))."""
    out = build_poset(tubes.chain_system(0))
    for t in range(1, len(tubes.cycles)):
        out = labeled_product(out, build_poset(tubes.chain_system(t)))
    return out


def vanishing_report(rank: int) -> Report:
    """Orthogonality against F-letters in closed form, for every (β, γ, k)."""
    tubes = TubeSystem.abstract(rank)
    rep = Report(f"F-letter vanishing rank {rank}", {"rank": rank})
    left, right = [], []
    for b in range(rank):
        for g in range(rank):
            f = ("R", g, rank)
            for k in range(1, rank + 1):
                x = ("R", b, k)
                if tubes.orthogonal(f, x) != (g not in {tubes.shift(b, i) for i in range(k)}):
                    left.append((b, g, k))
                if tubes.orthogonal(x, f) != (g not in {tubes.shift(b, i) for i in range(1, k + 1)}):
                    right.append((b, g, k))
    rep.metadata["cases"] = rank * rank * rank
    rep.add("Hom, Ext from F_γ to (β,k) vanish iff γ is not c^i β for 0 <= i < k", not left, left[:3])
    rep.add("Hom, Ext from (β,k) to F_γ vanish iff γ is not c^i β for 0 < i <= k", not right, right[:3])
    return rep
