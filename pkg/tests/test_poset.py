import networkx as nx
import pytest
from hypothesis import given, strategies as st

from ncchains.finite_nc import nc_lattice
from ncchains.cartan_types import datum_from_name
from ncchains.poset import (
    LabeledPoset,
    PosetError,
    chain_poset,
    find_isomorphism,
    isomorphic_labeled,
    labeled_product,
    relabel,
)
from ncchains.tubes import tube_poset


def boolean2():
    return LabeledPoset([0, 1, 2, 3], [(0, 1, "a"), (0, 2, "b"), (1, 3, "b"), (2, 3, "a")])


def brute_lattice(p: LabeledPoset) -> bool:
    g = nx.DiGraph()
    g.add_nodes_from(p.elements)
    g.add_edges_from((lo, hi) for lo, hi, _ in p.covers)
    above = {x: nx.descendants(g, x) | {x} for x in p.elements}
    below = {x: nx.ancestors(g, x) | {x} for x in p.elements}
    for x in p.elements:
        for y in p.elements:
            ub = above[x] & above[y]
            lb = below[x] & below[y]
            if not [u for u in ub if ub <= above[u]] or not [l for l in lb if lb <= below[l]]:
                return False
    return True


@st.composite
def random_posets(draw):
    n = draw(st.integers(1, 7))
    edges = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] < e[1])))
    g = nx.DiGraph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    red = nx.transitive_reduction(g)
    return LabeledPoset(range(n), [(lo, hi, f"e{lo}{hi}") for lo, hi in red.edges])


@given(random_posets())
def test_lattice_check_matches_brute_force(p):
    assert p.is_lattice()[0] == brute_lattice(p)


@given(random_posets())
def test_leq_is_reachability(p):
    g = nx.DiGraph([(lo, hi) for lo, hi, _ in p.covers])
    g.add_nodes_from(p.elements)
    for x in p.elements:
        for y in p.elements:
            assert p.leq(x, y) == (x == y or nx.has_path(g, x, y))


@given(random_posets())
def test_json_round_trip(p):
    assert LabeledPoset.from_json(p.dumps()) == p


def test_small_examples():
    assert boolean2().is_lattice()[0]
    bowtie = LabeledPoset([0, 1, 2, 3], [(0, 2, "a"), (0, 3, "b"), (1, 2, "c"), (1, 3, "d")])
    assert bowtie.is_lattice() == (False, ("minima", (0, 1)))
    with pytest.raises(PosetError):
        bowtie.bottom
    assert chain_poset("ab").count_maximal_chains() == 1
    assert boolean2().count_maximal_chains() == 2
    assert nc_lattice(datum_from_name("A2")).is_lattice()[0]


def test_product_examples():
    grid = labeled_product(chain_poset("ab"), chain_poset("x"))
    assert len(grid) == 6
    square = labeled_product(chain_poset("a"), chain_poset("b"))
    assert len(square) == 4 and len(square.covers) == 4 and square.labels == {"a", "b"}
    with pytest.raises(PosetError):
        labeled_product(chain_poset("a"), chain_poset("a"))


def test_isomorphism_examples():
    p = boolean2()
    assert find_isomorphism(p, p) is not None
    assert not isomorphic_labeled(chain_poset("abc"), p)
    assert isomorphic_labeled(relabel(p, {"a": "x", "b": "y"}), p)
    assert isomorphic_labeled(relabel(p, {"a": "x", "b": "y"}), p, {"x": "a", "y": "b"})
    assert isomorphic_labeled(tube_poset(2), nc_lattice(datum_from_name("B2")), ignore_labels=True)


def test_bound_refusal():
    p = chain_poset(range(12))
    with pytest.raises(PosetError):
        find_isomorphism(p, p, bound=5)


def test_dot_is_sorted_and_stable():
    p = nc_lattice(datum_from_name("A2"))
    dot = p.to_dot()
    assert dot == p.to_dot()
    assert dot.count("label=") == len(p) + len(p.covers)
