"""Hom and Ext^1 between nilpotent string representations of a cyclic quiver.

This is an independent check on the combinatorial rules in ``tubes``: the
quiver has vertices Z/r and arrows i -> i+1, the module with top at s and
length k has basis v_0..v_{k-1} with v_t at vertex s+t and every arrow
sending v_t to v_{t+1}.  With these arrows τ shifts tops by +1.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import exact
from .report import Report


@dataclass(frozen=True)
class StringModule:
    rank: int
    top: int
    length: int

    def basis_at(self, vertex: int) -> list[int]:
        return [t for t in range(self.length) if (self.top + t) % self.rank == vertex]


def _unknowns(x: StringModule, y: StringModule, vertices) -> list[tuple]:
    """Coordinates of linear maps X_v -> Y_w, one per (vertex pair, basis pair)."""
    return [(v, w, i, j) for v, w in vertices for i in x.basis_at(v) for j in y.basis_at(w)]


def _arrow_map(m: StringModule, t: int) -> int | None:
    """Image of v_t under the arrow leaving its vertex (None for zero)."""
    return t + 1 if t + 1 < m.length else None


def _compatibility_matrix(x: StringModule, y: StringModule) -> tuple[list, list]:
    """Rows: entries of φ_{a+1} X_a - Y_a φ_a for each arrow a; columns: vertex maps φ_v."""
    r = x.rank
    cols = _unknowns(x, y, [(v, v) for v in range(r)])
    col_index = {c: n for n, c in enumerate(cols)}
    rows_keys = _unknowns(x, y, [(v, (v + 1) % r) for v in range(r)])
    rows = []
    for v, w, i, j in rows_keys:
        # entry (j <- i) of φ_w X_a - Y_a φ_v, with X_a: X_v -> X_w, Y_a: Y_v -> Y_w
        row = [0] * len(cols)
        xi = _arrow_map(x, i)
        if xi is not None:
            row[col_index[(w, w, xi, j)]] += 1
        for jj in y.basis_at(v):
            if _arrow_map(y, jj) == j:
                row[col_index[(v, v, i, jj)]] -= 1
        rows.append(row)
    return rows, cols


def hom_dim(x: StringModule, y: StringModule) -> int:
    rows, cols = _compatibility_matrix(x, y)
    return len(cols) - (exact.rank(rows) if rows else 0)


def ext_dim(x: StringModule, y: StringModule) -> int:
    """dim of ⊕_arrows Hom(X_tail, Y_head) minus the rank of the coboundary."""
    rows, cols = _compatibility_matrix(x, y)
    return len(rows) - (exact.rank(rows) if rows else 0)


def module_of(letter, position: dict, rank: int) -> StringModule:
    _, beta, k = letter
    return StringModule(rank, position[beta], k)


def oracle_report(rank: int) -> Report:
    """Compare the closed-form tube predicates with the linear algebra above on every pair."""
    from .tubes import TubeSystem

    tubes = TubeSystem.abstract(rank)
    letters = tubes.letters()
    modules = {x: module_of(x, tubes.position, rank) for x in letters}
    hom_bad, ext_bad = [], []
    for x in letters:
        for y in letters:
            if (hom_dim(modules[x], modules[y]) > 0) != tubes.hom_nonzero(x, y):
                hom_bad.append((x, y))
            if (ext_dim(modules[x], modules[y]) > 0) != tubes.ext_nonzero(x, y):
                ext_bad.append((x, y))
    rep = Report(f"tube oracle rank {rank}", {"rank": rank, "pairs": len(letters) ** 2})
    rep.add("Hom vanishing matches the representation oracle", not hom_bad, hom_bad[:3])
    rep.add("Ext vanishing matches the representation oracle", not ext_bad, ext_bad[:3])
    return rep
