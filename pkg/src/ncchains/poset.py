"""Finite posets whose cover relations carry letter labels."""

from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Hashable, Iterable, Mapping

from .letters import letter_key, letter_str, word_key, word_str


class PosetError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledPoset:
    """Elements plus labeled covers ``(lower, upper, label)``.

    The constructor sorts both tuples canonically, so two posets built from
    the same data compare equal and serialize identically.
    """

    elements: tuple
    covers: tuple

    def __init__(self, elements: Iterable[Hashable], covers: Iterable[tuple]):
        elems = tuple(sorted(set(elements), key=letter_key))
        cov = tuple(sorted(set(covers), key=letter_key))
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "covers", cov)
        self._validate()

    def _validate(self) -> None:
        known = set(self.elements)
        seen: dict[tuple, Any] = {}
        for lo, hi, lab in self.covers:
            if lo not in known or hi not in known:
                raise PosetError(f"cover {lo!r} < {hi!r} uses an unknown element")
            if lo == hi:
                raise PosetError(f"loop at {lo!r}")
            if (lo, hi) in seen:
                raise PosetError(f"cover {lo!r} < {hi!r} carries two labels")
            seen[(lo, hi)] = lab
        if len(self.topological_order) != len(self.elements):
            raise PosetError("cover graph has a cycle")
        # irredundancy: no cover may also be implied by a longer path
        for lo, hi, _ in self.covers:
            for mid in self.up[lo]:
                if mid != hi and self.leq(mid, hi):
                    raise PosetError(f"cover {lo!r} < {hi!r} is transitive through {mid!r}")

    # -- structure -------------------------------------------------------

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    @cached_property
    def up(self) -> dict:
        out = defaultdict(list)
        for lo, hi, _ in self.covers:
            out[lo].append(hi)
        return {x: tuple(out[x]) for x in self.elements}

    @cached_property
    def down(self) -> dict:
        out = defaultdict(list)
        for lo, hi, _ in self.covers:
            out[hi].append(lo)
        return {x: tuple(out[x]) for x in self.elements}

    @cached_property
    def label(self) -> dict:
        return {(lo, hi): lab for lo, hi, lab in self.covers}

    @cached_property
    def labels(self) -> frozenset:
        return frozenset(lab for _, _, lab in self.covers)

    @cached_property
    def topological_order(self) -> tuple:
        indeg = {x: 0 for x in self.elements}
        for _, hi, _ in self.covers:
            indeg[hi] += 1
        queue = deque(x for x in self.elements if indeg[x] == 0)
        order = []
        out = defaultdict(list)
        for lo, hi, _ in self.covers:
            out[lo].append(hi)
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in out[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    queue.append(y)
        return tuple(order)

    @cached_property
    def upsets(self) -> dict:
        """Bitmask of {y : x <= y} for every x, keyed by element."""
        idx = self.index
        masks = {}
        for x in reversed(self.topological_order):
            m = 1 << idx[x]
            for y in self.up[x]:
                m |= masks[y]
            masks[x] = m
        return masks

    @cached_property
    def downsets(self) -> dict:
        idx = self.index
        masks = {}
        for x in self.topological_order:
            m = 1 << idx[x]
            for y in self.down[x]:
                m |= masks[y]
            masks[x] = m
        return masks

    def leq(self, x, y) -> bool:
        return bool(self.upsets[x] >> self.index[y] & 1)

    def minimal_elements(self) -> tuple:
        return tuple(x for x in self.elements if not self.down[x])

    def maximal_elements(self) -> tuple:
        return tuple(x for x in self.elements if not self.up[x])

    @property
    def bottom(self):
        mins = self.minimal_elements()
        if len(mins) != 1:
            raise PosetError(f"expected a unique minimum, found {len(mins)}")
        return mins[0]

    @property
    def top(self):
        maxs = self.maximal_elements()
        if len(maxs) != 1:
            raise PosetError(f"expected a unique maximum, found {len(maxs)}")
        return maxs[0]

    @cached_property
    def depth(self) -> dict:
        """Length of the longest chain from a minimal element up to x."""
        d = {}
        for x in self.topological_order:
            d[x] = max((d[y] + 1 for y in self.down[x]), default=0)
        return d

    @cached_property
    def coheight(self) -> dict:
        d = {}
        for x in reversed(self.topological_order):
            d[x] = max((d[y] + 1 for y in self.up[x]), default=0)
        return d

    def height(self) -> int:
        return max(self.depth.values(), default=0)

    def __len__(self) -> int:
        return len(self.elements)

    # -- chains ----------------------------------------------------------

    def saturated_chains(self, x, y) -> list[tuple]:
        """Label words of all saturated chains from x up to y."""
        if not self.leq(x, y):
            return []
        target = self.index[y]
        out: list[tuple] = []
        stack = [(x, ())]
        while stack:
            z, word = stack.pop()
            if z == y:
                out.append(word)
                continue
            for w in self.up[z]:
                if self.upsets[w] >> target & 1:
                    stack.append((w, word + (self.label[(z, w)],)))
        return sorted(out, key=word_key)

    def maximal_chains(self) -> list[tuple]:
        """Label words read bottom to top along every maximal chain."""
        out: list[tuple] = []
        for start in self.minimal_elements():
            stack = [(start, ())]
            while stack:
                z, word = stack.pop()
                if not self.up[z]:
                    out.append(word)
                    continue
                for w in self.up[z]:
                    stack.append((w, word + (self.label[(z, w)],)))
        return sorted(out, key=word_key)

    def count_maximal_chains(self) -> int:
        counts = {}
        for x in reversed(self.topological_order):
            counts[x] = sum(counts[y] for y in self.up[x]) if self.up[x] else 1
        return sum(counts[x] for x in self.minimal_elements())

    # -- lattice ---------------------------------------------------------

    def _bound(self, x, y, masks: dict):
        common = masks[x] & masks[y]
        if not common:
            return None
        elems = self.elements
        # the least element of `common`, if any, is the one whose own
        # up/down set contains all of `common`
        best = None
        best_size = None
        bits = common
        while bits:
            low = bits & -bits
            i = low.bit_length() - 1
            bits ^= low
            size = bin(masks[elems[i]]).count("1")
            if best_size is None or size > best_size:
                best, best_size = elems[i], size
        if common & ~masks[best]:
            return None
        return best

    def join(self, x, y):
        return self._bound(x, y, self.upsets)

    def meet(self, x, y):
        return self._bound(x, y, self.downsets)

    def is_lattice(self) -> tuple[bool, Any]:
        """Return (verdict, witness); the witness is a pair lacking a meet or join,
        or the extra extremal elements when the minimum or maximum is not unique."""
        for kind, ext in (("minima", self.minimal_elements()), ("maxima", self.maximal_elements())):
            if len(ext) != 1:
                return False, (kind, ext)
        elems = self.elements
        for i, x in enumerate(elems):
            for y in elems[i + 1:]:
                if self.join(x, y) is None:
                    return False, ("join", x, y)
                if self.meet(x, y) is None:
                    return False, ("meet", x, y)
        return True, None

    # -- export ----------------------------------------------------------

    def to_dot(self, name: str = "P") -> str:
        ids = {x: f"n{i}" for i, x in enumerate(self.elements)}
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for x in self.elements:
            text = word_str(x) if isinstance(x, tuple) else letter_str(x)
            lines.append(f'  {ids[x]} [label="{_escape(text)}"];')
        for lo, hi, lab in self.covers:
            lines.append(f'  {ids[lo]} -> {ids[hi]} [label="{_escape(letter_str(lab))}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        from .report import jsonable

        return {
            "elements": jsonable(list(self.elements)),
            "covers": [jsonable([lo, hi, lab]) for lo, hi, lab in self.covers],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"

    @classmethod
    def from_json(cls, data: Mapping | str) -> "LabeledPoset":
        from .letters import detuple

        if isinstance(data, str):
            data = json.loads(data)
        elems = [detuple(x) for x in data["elements"]]
        covers = [tuple(detuple(v) for v in c) for c in data["covers"]]
        return cls(elems, covers)


def _escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def chain_poset(labels: Iterable) -> LabeledPoset:
    """A chain 0 < 1 < ... whose covers read the given labels."""
    labels = list(labels)
    return LabeledPoset(range(len(labels) + 1), [(i, i + 1, lab) for i, lab in enumerate(labels)])


def labeled_product(p: LabeledPoset, q: LabeledPoset) -> LabeledPoset:
    """Product order; a cover moving one coordinate keeps that factor's label."""
    if p.labels & q.labels:
        raise PosetError(f"label collision: {sorted(p.labels & q.labels, key=letter_key)!r}")
    elems = [(x, y) for x in p.elements for y in q.elements]
    covers = [((lo, y), (hi, y), lab) for lo, hi, lab in p.covers for y in q.elements]
    covers += [((x, lo), (x, hi), lab) for lo, hi, lab in q.covers for x in p.elements]
    return LabeledPoset(elems, covers)


def relabel(p: LabeledPoset, mapping: Mapping) -> LabeledPoset:
    return LabeledPoset(p.elements, [(lo, hi, mapping[lab]) for lo, hi, lab in p.covers])


def _signature(p: LabeledPoset, x) -> tuple:
    return (p.depth[x], p.coheight[x], len(p.down[x]), len(p.up[x]))


def find_isomorphism(
    p: LabeledPoset,
    q: LabeledPoset,
    label_map: Mapping | None = None,
    *,
    ignore_labels: bool = False,
    bound: int = 5000,
) -> dict | None:
    """Search for an element bijection p -> q preserving covers and labels.

    With ``label_map`` the labels must correspond exactly through it.  Without
    one, some bijection of label sets is searched for alongside the element
    map, unless ``ignore_labels`` asks for a plain poset isomorphism.
    """
    if max(len(p), len(q)) > bound:
        raise PosetError(f"isomorphism search refused: more than {bound} elements")
    if len(p) != len(q) or len(p.covers) != len(q.covers):
        return None
    if label_map is not None:
        if set(label_map) != set(p.labels) or set(label_map.values()) != set(q.labels):
            raise PosetError("label_map must biject the label sets")
        if len(set(label_map.values())) != len(label_map):
            raise PosetError("label_map is not injective")
    elif not ignore_labels and len(p.labels) != len(q.labels):
        return None
    sig_p = {x: _signature(p, x) for x in p.elements}
    sig_q = {y: _signature(q, y) for y in q.elements}
    if sorted(sig_p.values()) != sorted(sig_q.values()):
        return None
    by_sig = defaultdict(list)
    for y in q.elements:
        by_sig[sig_q[y]].append(y)

    # breadth-first order from the minimal elements, so later elements
    # usually have an already placed lower cover to anchor candidates
    order: list = []
    seen = set()
    for start in p.minimal_elements():
        queue = deque([start])
        seen.add(start)
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in p.up[x] + p.down[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    for x in p.elements:
        if x not in seen:
            order.append(x)

    eta: dict = {}
    used: set = set()
    lam: dict = {} if label_map is None else dict(label_map)
    lam_used: set = set(lam.values())

    def candidates(x):
        anchor = next((z for z in p.down[x] if z in eta), None)
        if anchor is not None:
            pool = q.up[eta[anchor]]
        else:
            anchor = next((z for z in p.up[x] if z in eta), None)
            pool = q.down[eta[anchor]] if anchor is not None else by_sig[sig_p[x]]
        return [y for y in pool if y not in used and sig_q[y] == sig_p[x]]

    def try_place(x, y) -> list | None:
        """Bind x -> y; return newly bound labels, or None on a conflict."""
        fresh: list = []
        pairs = [((z, x), (eta[z], y)) for z in p.down[x] if z in eta]
        pairs += [((x, z), (y, eta[z])) for z in p.up[x] if z in eta]
        for pe, qe in pairs:
            if qe not in q.label:
                break
            if ignore_labels:
                continue
            a, b = p.label[pe], q.label[qe]
            if a in lam:
                if lam[a] != b:
                    break
            elif b in lam_used or label_map is not None:
                break
            else:
                lam[a] = b
                lam_used.add(b)
                fresh.append(a)
        else:
            return fresh
        for a in fresh:
            lam_used.discard(lam.pop(a))
        return None

    stack: list = [(0, iter(candidates(order[0])) if order else iter(()), None)]
    if not order:
        return {}
    while stack:
        i, it, _ = stack[-1]
        x = order[i]
        if x in eta:
            # undo the previous choice for this level before trying the next
            _, _, fresh = stack[-1]
            used.discard(eta.pop(x))
            for a in fresh or ():
                lam_used.discard(lam.pop(a))
        placed = False
        for y in it:
            fresh = try_place(x, y)
            if fresh is None:
                continue
            eta[x] = y
            used.add(y)
            stack[-1] = (i, it, fresh)
            placed = True
            break
        if not placed:
            stack.pop()
            continue
        if i + 1 == len(order):
            return dict(eta)
        nxt = order[i + 1]
        stack.append((i + 1, iter(candidates(nxt)), None))
    return None


def isomorphic_labeled(
    p: LabeledPoset,
    q: LabeledPoset,
    label_map: Mapping | None = None,
    *,
    ignore_labels: bool = False,
    bound: int = 5000,
) -> bool:
    return find_isomorphism(p, q, label_map, ignore_labels=ignore_labels, bound=bound) is not None
