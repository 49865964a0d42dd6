from fractions import Fraction
from itertools import product
from math import comb, factorial

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ncchains import exact
from ncchains.affine import (
    GroupElement,
    McSul,
    McSulError,
    bounded_pair_search,
    compute_TH,
    compute_xi,
    is_f,
    translations_in_interval,
)
from ncchains.cartan_types import datum_from_name
from ncchains.chain_system import build_poset, check_axioms
from ncchains.finite_nc import nc_lattice
from ncchains.poset import isomorphic_labeled
from ncchains.roots import CartanError

CASES = {
    # name: (m, cycle lengths, |C_c^F|)
    "A~3:outer=1,3": (2, (2, 2), 96),
    "A~3:outer=1,2": (2, (2, 2), 96),
    "D~4": (3, (2, 2, 2), 5760),
    "A~4:outer=1,2": (2, (2, 3), 1080),
    "A~4:outer=1,3": (2, (2, 3), 1080),
    "B~3": (2, (2, 2), 96),
    "F~4": (2, (2, 3), 1080),
}


@pytest.fixture(scope="module")
def built():
    return {name: McSul(datum_from_name(name)) for name in CASES}


def shuffle_count(ranks):
    """|C_c^F| from the factor counts: multinomial of the lengths times r^r per tube."""
    total = factorial(sum(ranks))
    for r in ranks:
        total = total // factorial(r) * r ** r
    return total


def test_expected_counts_are_the_shuffle_formula():
    for m, ranks, size in CASES.values():
        assert shuffle_count(ranks) == size
    assert comb(4, 2) * 4 * 4 == 96


@pytest.mark.parametrize("name", CASES)
def test_horizontal_data(name):
    datum = datum_from_name(name)
    m, ranks, _ = CASES[name]
    hd = compute_xi(datum)
    assert hd.m == m and hd.ranks == ranks
    assert len(hd.xi) == datum.n - 2 + m == sum(ranks)
    assert len(hd.th_roots) == sum(r * (r - 1) for r in ranks)
    for beta in hd.xi:
        assert datum.apply_c(beta, hd.r(beta)) == beta
        assert all(datum.apply_c(beta, k) != beta for k in range(1, hd.r(beta)))
    for beta in hd.th_roots:
        assert datum.euler(datum.delta, beta, inverse=True) == 0
        assert all(x <= d for x, d in zip(beta, datum.delta))


def test_full_support_rule_breaks_d4():
    datum = datum_from_name("D~4")
    assert len(compute_TH(datum, "nonfull")) < len(compute_TH(datum))
    with pytest.raises(McSulError):
        compute_xi(datum, "nonfull")
    # the two rules agree for A~3, where no quasi-simple root has full support
    a3 = datum_from_name("A~3:outer=1,3")
    assert compute_TH(a3, "nonfull") == compute_TH(a3)


def test_finite_type_is_rejected():
    with pytest.raises(CartanError):
        compute_xi(datum_from_name("A3"))


@pytest.mark.parametrize("name", ["A~3:outer=1,3", "D~4", "A~4:outer=1,2"])
def test_translations_with_sympy(name):
    datum = datum_from_name(name)
    hd = compute_xi(datum)
    c = sympy.Matrix(datum.c_matrix)
    delta = sympy.Matrix(datum.delta)
    for t in translations_in_interval(datum, hd):
        v = sympy.eye(datum.n)
        for b in t.hword:
            v = v * sympy.Matrix(datum.reflection_of_root(b))
        w = c * v.inv()
        # on V the translation is x -> x - <mu, x> delta
        mu = sympy.Matrix([sympy.Rational(str(x)) for x in t.mu])
        assert w == sympy.eye(datum.n) - delta * mu.T
        assert len(t.hword) == datum.n - 2


@pytest.mark.parametrize("name", CASES)
def test_structure_and_good_bijection(built, name):
    mc = built[name]
    _, _, size = CASES[name]
    rep = mc.verify_structure()
    assert rep.ok, [c for c in rep.checks if not c.passed]
    assert rep.metadata["CcF_size"] == size
    rep = mc.verify_good_bij()
    assert rep.ok, [c for c in rep.checks if not c.passed]


@pytest.mark.parametrize("name", ["A~3:outer=1,3", "D~4", "A~4:outer=1,3"])
def test_factorable_intervals_are_type_b(built, name):
    mc = built[name]
    for i, r in enumerate(mc.hd.ranks):
        p = mc.factorable_interval(i)
        assert isomorphic_labeled(p, nc_lattice(datum_from_name(f"B{r}")), ignore_labels=True)


def _brute_maximal_words(mc, i):
    """Words in component-i letters of weight (r-1)+2/m whose full V* product is c_i."""
    g, iv = mc.groups[i], mc.intervals[i]
    target = GroupElement(g.full_matrix(iv.top))
    letters = sorted(iv.letters)
    r = len(mc.hd.cycles[i])
    found = set()
    for length in range(1, r + 1):
        for w in product(letters, repeat=length):
            if sum(mc.weight(a) for a in w) != (r - 1) + Fraction(2, mc.m):
                continue
            prod_ = GroupElement.identity(mc.datum.n)
            for a in w:
                prod_ = prod_ * mc.element(a)
            if prod_ == target:
                found.add(w)
    return found


@pytest.mark.parametrize("name", ["A~3:outer=1,2", "D~4", "A~4:outer=1,2", "B~3"])
def test_component_chains_match_full_matrix_search(built, name):
    mc = built[name]
    for i in range(mc.m):
        assert mc.component_system(i).words == frozenset(_brute_maximal_words(mc, i))


@settings(max_examples=40)
@given(st.data())
def test_reduced_product_matches_full_matrices(data):
    mc = McSul(datum_from_name(data.draw(st.sampled_from(["A~4:outer=1,2", "D~4"]))))
    i = data.draw(st.integers(0, mc.m - 1))
    g, iv = mc.groups[i], mc.intervals[i]
    keys = sorted(iv.letters)
    word = data.draw(st.lists(st.sampled_from(keys), min_size=1, max_size=6))
    u = g.zero
    full = GroupElement.identity(mc.datum.n)
    for a in word:
        u = g.mul(u, iv.letters[a])
        full = full * mc.element(a)
    assert g.full_matrix(u) == full.matrix
    assert g.mul(u, g.inverse(u)) == g.zero


def test_letters_and_weights(built):
    mc = built["A~3:outer=1,3"]
    assert len(mc.alphabet) == 8
    assert sum(mc.weight(a) for a in mc.alphabet if is_f(a)) == 4 * Fraction(2, 2)
    rel = mc.mcsul_relation()
    for beta in mc.hd.xi:
        f, t = mc.f_name(beta), mc.t_name(beta, 1)
        assert (f, t) in rel and (t, f) not in rel
    for a in mc.alphabet:
        for b in mc.alphabet:
            if is_f(a) and is_f(b) and a != b:
                assert ((a, b) in rel) == (mc.component_of_letter(a) != mc.component_of_letter(b))


def test_factor_products(built):
    mc = built["D~4"]
    for t, fs in zip(mc.translations, mc.factorizations):
        assert len(fs) == mc.m
        prod_ = GroupElement.identity(mc.datum.n)
        for f in fs:
            prod_ = prod_ * f.element
        assert prod_ == t.element
        assert t.element.translation_vector(mc.datum.delta) == t.mu


def test_q_independence():
    datum = datum_from_name("A~3:outer=1,3")
    half = McSul(datum, q=(Fraction(1, 2), Fraction(1, 2)))
    third = McSul(datum, q=(Fraction(1, 3), Fraction(2, 3)))
    assert {f.mu for f in half.f_of.values()} != {f.mu for f in third.f_of.values()}
    p1, p2 = build_poset(half.build_CcF()), build_poset(third.build_CcF())
    identity = {a: a for a in half.alphabet}
    assert isomorphic_labeled(p1, p2, identity)


def test_bad_q_is_rejected():
    with pytest.raises(McSulError):
        McSul(datum_from_name("A~3:outer=1,3"), q=(Fraction(1, 2), Fraction(1, 3)))
    with pytest.raises(McSulError):
        McSul(datum_from_name("A~3:outer=1,3"), q=(1, 0))


def test_garside_on_factorable_posets(built):
    for name in ("A~3:outer=1,3", "B~3"):
        rep = built[name].garside_report()
        assert rep.ok, [c for c in rep.checks if not c.passed]


def test_interval_search_limit():
    with pytest.raises(McSulError):
        McSul(datum_from_name("A~4:outer=1,2"), limit=3)


def test_bounded_pair_search_is_monotone_in_depth(built):
    mc = built["A~3:outer=1,2"]
    pairs = sorted((a[1], b[1]) for a, b in mc.mcsul_relation() if not is_f(a) and not is_f(b))
    shallow = bounded_pair_search(mc.datum, pairs, depth=1)
    deep = bounded_pair_search(mc.datum, pairs, depth=6)
    assert all(v is None or deep[p] for p, v in shallow.items())
    assert all(v is True for v in deep.values())
    assert check_axioms(mc.build_CcF()).ok
