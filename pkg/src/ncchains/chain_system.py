"""Chain systems: finite sets of words whose prefixes organise into a poset.

A word is a tuple of letters.  The axioms checked here are

* (i)   word lengths are bounded (automatic for finite sets);
* (ii)  if some ``p x`` is a word for a prefix class P and postfix class X,
        then every ``p' x'`` with ``p'`` in P and ``x'`` in X is a word;
* (iii) ``p a x`` and ``p w x`` both words forces ``w = a``.
"""

from __future__ import annotations

import json
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

from .letters import detuple, letter_key, word_key
from .poset import LabeledPoset, PosetError
from .report import Check, check

Word = tuple


class ChainSystemError(ValueError):
    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class ChainSystem:
    """A finite set of words; the alphabet is the set of letters occurring."""

    words: frozenset
    alphabet: frozenset

    def __init__(self, words: Iterable[Sequence], alphabet: Iterable[Hashable] | None = None):
        ws = frozenset(tuple(w) for w in words)
        occurring = frozenset(a for w in ws for a in w)
        if alphabet is not None:
            alphabet = frozenset(alphabet)
            stray = occurring - alphabet
            if stray:
                raise ChainSystemError("letters outside the alphabet", sorted(stray, key=letter_key))
        object.__setattr__(self, "words", ws)
        object.__setattr__(self, "alphabet", occurring)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.sorted_words())

    def __contains__(self, w) -> bool:
        return tuple(w) in self.words

    def sorted_words(self) -> list[Word]:
        return sorted(self.words, key=word_key)

    def sorted_alphabet(self) -> list:
        return sorted(self.alphabet, key=letter_key)

    def prefixes(self) -> frozenset:
        return frozenset(w[:i] for w in self.words for i in range(len(w) + 1))

    def postfixes(self) -> frozenset:
        return frozenset(w[i:] for w in self.words for i in range(len(w) + 1))

    def relabel(self, mapping: Mapping) -> "ChainSystem":
        return ChainSystem(tuple(mapping[a] for a in w) for w in self.words)

    def to_json(self, checks: Iterable[Check] = ()) -> dict:
        from .report import jsonable

        return {
            "alphabet": jsonable(self.sorted_alphabet()),
            "words": [jsonable(list(w)) for w in self.sorted_words()],
            "checks": [c.to_json() for c in checks],
        }

    def dumps(self, checks: Iterable[Check] = ()) -> str:
        return json.dumps(self.to_json(checks), indent=1) + "\n"

    @classmethod
    def from_json(cls, data: Mapping | str) -> "ChainSystem":
        if isinstance(data, str):
            data = json.loads(data)
        words = [tuple(detuple(a) for a in w) for w in data["words"]]
        return cls(words, [detuple(a) for a in data.get("alphabet", [])] or None)


# -- prefix / postfix structure ----------------------------------------------


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _completions(c: ChainSystem) -> tuple[dict, dict]:
    """For each prefix the set of its completions, and dually for postfixes."""
    after: dict = defaultdict(set)
    before: dict = defaultdict(set)
    for w in c.words:
        for i in range(len(w) + 1):
            after[w[:i]].add(w[i:])
            before[w[i:]].add(w[:i])
    return after, before


def _classes(after: Mapping) -> list[frozenset]:
    """Transitive closure of 'share a completion' over the keys of ``after``."""
    uf = _UnionFind()
    by_completion: dict = defaultdict(list)
    for p, xs in after.items():
        uf.find(p)
        for x in xs:
            by_completion[x].append(p)
    for ps in by_completion.values():
        for p in ps[1:]:
            uf.union(ps[0], p)
    groups: dict = defaultdict(set)
    for p in after:
        groups[uf.find(p)].add(p)
    return sorted((frozenset(g) for g in groups.values()), key=_class_key)


def _class_key(cls: frozenset) -> tuple:
    return word_key(representative(cls))


def representative(cls: Iterable[Word]) -> Word:
    """The shortlex-least member, used as the printable id of a class."""
    return min(cls, key=word_key)


@dataclass
class AxiomReport:
    degenerate: bool
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.degenerate and all(c.passed for c in self.checks if c.name.startswith("axiom"))

    def get(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)


def check_axioms(c: ChainSystem) -> AxiomReport:
    if not c.words:
        return AxiomReport(True, [check("degenerate: empty system", False, "no words")])
    after, before = _completions(c)
    pre_classes = _classes(after)
    post_classes = _classes(before)
    cls_of_pre = {p: i for i, cl in enumerate(pre_classes) for p in cl}
    cls_of_post = {x: i for i, cl in enumerate(post_classes) for x in cl}
    report = AxiomReport(False)

    report.checks.append(check("axiom (i): bounded length", True))

    # (ii): the splits landing in a (P, X) pair must fill out all of P x X
    splits: dict = defaultdict(int)
    for w in c.words:
        for i in range(len(w) + 1):
            splits[(cls_of_pre[w[:i]], cls_of_post[w[i:]])] += 1
    witness = None
    for (pi, xi), count in sorted(splits.items()):
        pcl, xcl = pre_classes[pi], post_classes[xi]
        if count != len(pcl) * len(xcl):
            for p in sorted(pcl, key=word_key):
                x = next((x for x in sorted(xcl, key=word_key) if p + x not in c.words), None)
                if x is not None:
                    witness = {"prefix": p, "postfix": x}
                    break
            break
    report.checks.append(check("axiom (ii): prefix/postfix classes combine", witness is None, witness))

    # (iii): index every one-letter gap, then look for a competing middle
    gap: dict = {}
    witness = None
    for w in sorted(c.words, key=word_key):
        for i in range(len(w)):
            gap.setdefault((w[:i], w[i + 1:]), w[i])
    for v in sorted(c.words, key=word_key):
        L = len(v)
        for i in range(L + 1):
            for j in range(L - i + 1):
                key = (v[:i], v[L - j:])
                if key in gap and v[i:L - j] != (gap[key],):
                    witness = {"p": key[0], "a": gap[key], "w": v[i:L - j], "x": key[1]}
                    break
            if witness:
                break
        if witness:
            break
    report.checks.append(check("axiom (iii): no competing substitutions", witness is None, witness))

    # derived diagnostic: px and pwx both words forces w empty
    witness = None
    for v in sorted(c.words, key=word_key):
        L = len(v)
        for i in range(L):
            for k in range(i + 1, L + 1):
                if v[:i] + v[k:] in c.words:
                    witness = {"p": v[:i], "w": v[i:k], "x": v[k:]}
                    break
            if witness:
                break
        if witness:
            break
    report.checks.append(check("no removable infix", witness is None, witness))

    # closure versus raw relation: members of a class should share completions
    witness = None
    for cl in pre_classes:
        comps = {frozenset(after[p]) for p in cl}
        if len(comps) > 1:
            witness = sorted(cl, key=word_key)[:2]
            break
    report.checks.append(check("prefix equivalence is transitive", witness is None, witness))
    return report


def _require_valid(c: ChainSystem) -> None:
    rep = check_axioms(c)
    if rep.degenerate:
        raise ChainSystemError("degenerate: empty system")
    bad = [ch for ch in rep.checks if ch.name.startswith("axiom") and not ch.passed]
    if bad:
        raise ChainSystemError(f"{bad[0].name} fails", bad[0].witness)


def prefix_classes(c: ChainSystem) -> list[frozenset]:
    rep = check_axioms(c)
    ii = rep.get("axiom (ii): prefix/postfix classes combine") if not rep.degenerate else None
    if ii is None or not ii.passed:
        raise ChainSystemError("prefix classes are ill-defined", ii.witness if ii else None)
    return _classes(_completions(c)[0])


def postfix_classes(c: ChainSystem) -> list[frozenset]:
    rep = check_axioms(c)
    ii = rep.get("axiom (ii): prefix/postfix classes combine") if not rep.degenerate else None
    if ii is None or not ii.passed:
        raise ChainSystemError("postfix classes are ill-defined", ii.witness if ii else None)
    return _classes(_completions(c)[1])


def post_map(c: ChainSystem) -> dict:
    """Prefix class -> the postfix class of its completions."""
    after, _ = _completions(c)
    posts = {x: cl for cl in postfix_classes(c) for x in cl}
    return {cl: posts[next(iter(after[next(iter(cl))]))] for cl in prefix_classes(c)}


def pre_map(c: ChainSystem) -> dict:
    _, before = _completions(c)
    pres = {p: cl for cl in prefix_classes(c) for p in cl}
    return {cl: pres[next(iter(before[next(iter(cl))]))] for cl in postfix_classes(c)}


# -- posets ------------------------------------------------------------------


def build_poset(c: ChainSystem) -> LabeledPoset:
    """Prefix classes ordered by prefix extension; element ids are the
    shortlex-least member of each class."""
    _require_valid(c)
    classes = _classes(_completions(c)[0])
    rep = {}
    for cl in classes:
        r = representative(cl)
        for p in cl:
            rep[p] = r
    covers = {}
    for w in c.words:
        for i in range(len(w)):
            lo, hi = rep[w[:i]], rep[w[:i + 1]]
            old = covers.setdefault((lo, hi), w[i])
            if old != w[i]:
                raise ChainSystemError("cover carries two labels", (lo, hi, old, w[i]))
    return LabeledPoset(rep.values(), [(lo, hi, a) for (lo, hi), a in covers.items()])


def _label_sequence_map(chains: Iterable[Sequence], reverse: bool):
    """Map each initial label segment of each chain to the element it reaches."""
    seen: dict = {}
    for chain in chains:
        elems, labels = chain
        if reverse:
            elems, labels = elems[::-1], labels[::-1]
        for i, x in enumerate(elems):
            key = labels[:i]
            old = seen.setdefault(key, (x, chain))
            if old[0] != x:
                return old[1], chain
    return None


def poset_to_chain_system(p: LabeledPoset) -> ChainSystem:
    """Read labels along maximal chains, after checking that equal label
    segments from the bottom (and from the top) always reach the same element."""
    chains = []
    for start in p.minimal_elements():
        stack = [((start,), ())]
        while stack:
            elems, labels = stack.pop()
            z = elems[-1]
            if not p.up[z]:
                chains.append((elems, labels))
                continue
            for w in p.up[z]:
                stack.append((elems + (w,), labels + (p.label[(z, w)],)))
    for reverse in (False, True):
        bad = _label_sequence_map(chains, reverse)
        if bad is not None:
            side = "top" if reverse else "bottom"
            raise ChainSystemError(f"labels from the {side} do not determine elements", bad)
    return ChainSystem(labels for _, labels in chains)


# -- binary systems and products ----------------------------------------------


def maximal_B_sequences(
    relation: Iterable[tuple], alphabet: Iterable[Hashable], workers: int = 1
) -> ChainSystem:
    """All words with every ordered pair in ``relation``, maximal under
    inserting one letter anywhere."""
    rel = frozenset(tuple(pair) for pair in relation)
    letters = sorted(set(alphabet), key=letter_key)
    succ = {a: [b for b in letters if (a, b) in rel] for a in letters}

    def maximal(w: tuple) -> bool:
        for a in letters:
            # a may sit at position pos iff (w_j, a) in rel for j < pos and
            # (a, w_j) in rel for j >= pos
            left = next((j for j, b in enumerate(w) if (b, a) not in rel), len(w))
            right = max((j + 1 for j, b in enumerate(w) if (a, b) not in rel), default=0)
            if right <= left:
                return False
        return True

    def from_start(a) -> list:
        out = []
        stack = [(a,)]
        while stack:
            w = stack.pop()
            if maximal(w):
                out.append(w)
            for b in succ[w[-1]]:
                if all((x, b) in rel for x in w[:-1]):
                    stack.append(w + (b,))
        return out

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(from_start, letters))
    else:
        parts = [from_start(a) for a in letters]
    words = [w for part in parts for w in part]
    if not words and not letters:
        words = [()]
    return ChainSystem(words)


def binary_relation(c: ChainSystem) -> frozenset:
    """Ordered pairs (a, b) with a before b in some word."""
    return frozenset((w[i], w[j]) for w in c.words for i, j in combinations(range(len(w)), 2))


def two_letter_prefixes(c: ChainSystem) -> frozenset:
    return frozenset(w[:2] for w in c.words if len(w) >= 2)


def shuffle_words(x: Word, y: Word) -> list[Word]:
    k, n = len(x), len(x) + len(y)
    out = []
    for pos in combinations(range(n), k):
        w, xi, yi = [], 0, 0
        ps = set(pos)
        for i in range(n):
            if i in ps:
                w.append(x[xi])
                xi += 1
            else:
                w.append(y[yi])
                yi += 1
        out.append(tuple(w))
    return out


def shuffle(c1: ChainSystem, c2: ChainSystem) -> ChainSystem:
    overlap = c1.alphabet & c2.alphabet
    if overlap:
        raise ChainSystemError("shuffle needs disjoint alphabets", sorted(overlap, key=letter_key))
    return ChainSystem(w for x in c1.words for y in c2.words for w in shuffle_words(x, y))


def shuffle_count(c1: ChainSystem, c2: ChainSystem) -> int:
    return sum(comb(len(x) + len(y), len(x)) for x in c1.words for y in c2.words)


def is_isomorphism(c1: ChainSystem, c2: ChainSystem, letter_map: Mapping) -> bool:
    if set(letter_map) != set(c1.alphabet) or set(letter_map.values()) != set(c2.alphabet):
        raise ChainSystemError("letter_map must be a bijection between the alphabets")
    if len(set(letter_map.values())) != len(letter_map):
        raise ChainSystemError("letter_map is not injective")
    return c1.relabel(letter_map).words == c2.words


# -- Garside-side predicates ------------------------------------------------


def is_balanced(c: ChainSystem) -> bool:
    return c.prefixes() == c.postfixes()


def _class_lookup(c: ChainSystem) -> dict:
    return {p: representative(cl) for cl in prefix_classes(c) for p in cl}


def restriction(c: ChainSystem, x: Word, y: Word, poset: LabeledPoset | None = None) -> ChainSystem:
    """Label words of saturated chains from the class of x to the class of y."""
    lookup = _class_lookup(c)
    p = poset or build_poset(c)
    lo, hi = lookup[tuple(x)], lookup[tuple(y)]
    if not p.leq(lo, hi):
        raise ChainSystemError("restriction needs x <= y", (x, y))
    return ChainSystem(p.saturated_chains(lo, hi))


def all_restrictions(p: LabeledPoset) -> dict:
    """(x, y) -> frozenset of label words, for every x <= y."""
    out = {}
    for x in p.elements:
        paths: dict = defaultdict(set)
        stack = [(x, ())]
        while stack:
            z, word = stack.pop()
            paths[z].add(word)
            for w in p.up[z]:
                stack.append((w, word + (p.label[(z, w)],)))
        for y, words in paths.items():
            out[(x, y)] = frozenset(words)
    return out


def restriction_property(p: LabeledPoset, restrictions: Mapping | None = None) -> tuple[bool, Any]:
    """Overlapping restrictions must coincide."""
    res = restrictions or all_restrictions(p)
    owner: dict = {}
    for pair in sorted(res, key=letter_key):
        words = res[pair]
        for w in words:
            prev = owner.get(w)
            if prev is None:
                owner[w] = pair
            elif res[prev] != words:
                return False, {"intervals": [prev, pair], "shared_word": w}
    return True, None


def has_restriction_property(c: ChainSystem) -> bool:
    return restriction_property(build_poset(c))[0]


def group_like_direct(p: LabeledPoset, restrictions: Mapping | None = None, bound: int = 2000):
    """Three-interval definition: for x<=y<=z, any two of the restrictions
    on [x,y], [y,z], [x,z] determine the third.  Returns (verdict, witness),
    or (None, reason) when the poset exceeds ``bound`` elements."""
    if len(p) > bound:
        return None, f"more than {bound} elements"
    res = restrictions or all_restrictions(p)
    ids: dict = {}
    rid = {pair: ids.setdefault(words, len(ids)) for pair, words in res.items()}
    above: dict = defaultdict(list)
    for x, y in sorted(rid, key=letter_key):
        above[x].append(y)
    seen = [dict(), dict(), dict()]
    for x in p.elements:
        for y in above[x]:
            for z in above[y]:
                t = (rid[(x, y)], rid[(y, z)], rid[(x, z)])
                for k, key in enumerate(((t[0], t[1]), (t[0], t[2]), (t[1], t[2]))):
                    third = t[2 - k]
                    old = seen[k].setdefault(key, (third, (x, y, z)))
                    if old[0] != third:
                        return False, {"triples": [old[1], (x, y, z)]}
    return True, None


def word_weight(word: Sequence, weights: Callable | Mapping) -> Fraction:
    get = weights if callable(weights) else weights.__getitem__
    return sum((Fraction(get(a)) for a in word), Fraction(0))


def _check_weights(c: ChainSystem, weights: Callable | Mapping) -> None:
    get = weights if callable(weights) else weights.__getitem__
    for a in c.alphabet:
        if Fraction(get(a)) <= 0:
            raise ChainSystemError("weights must be positive", a)


def is_weighted_graded(c: ChainSystem, weights: Callable | Mapping) -> bool:
    _check_weights(c, weights)
    return len({word_weight(w, weights) for w in c.words}) <= 1


@dataclass
class GarsideReport:
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


def is_garside(
    c: ChainSystem,
    weights: Callable | Mapping | None = None,
    *,
    direct_bound: int = 2000,
    poset: LabeledPoset | None = None,
) -> GarsideReport:
    weights = weights if weights is not None else (lambda a: 1)
    _check_weights(c, weights)
    checks = []
    rep = check_axioms(c)
    checks.append(check("chain system axioms", rep.ok, [ch.to_json() for ch in rep.checks if not ch.passed]))
    if not rep.ok:
        return GarsideReport(checks)
    p = poset or build_poset(c)
    totals = sorted({word_weight(w, weights) for w in c.words})
    checks.append(check("weighted-graded", len(totals) == 1, totals))
    try:
        extremes = (p.bottom, p.top)
        checks.append(check("unique min and max", True))
    except PosetError as exc:
        extremes = None
        checks.append(check("unique min and max", False, str(exc)))
    checks.append(check("finite height", True))
    pre, post = c.prefixes(), c.postfixes()
    witness = sorted(pre ^ post, key=word_key)[:1]
    checks.append(check("balanced", pre == post, witness))
    res = all_restrictions(p)
    ok, witness = restriction_property(p, res)
    checks.append(check("restriction property (certifies group-like)", ok, witness))
    if extremes is not None:
        ok, witness = p.is_lattice()
        checks.append(check("lattice", ok, witness))
    else:
        checks.append(check("lattice", False, "no unique min/max"))
    ok, witness = group_like_direct(p, res, bound=direct_bound)
    checks.append(check("group-like (three-interval definition)", ok, witness))
    return GarsideReport(checks)
