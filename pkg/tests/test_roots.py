from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.liealgebras.root_system import RootSystem

from ncchains import exact
from ncchains.cartan_types import datum_from_name, load_datum, parse_cartan_text
from ncchains.roots import AFFINE, FINITE, OTHER, CartanError, CartanMatrix, RootDatum, classify

FINITE_TYPES = ["A2", "A3", "A4", "B2", "B3", "C3", "D4", "F4", "G2"]
AFFINE_TYPES = ["A~3:outer=1,3", "A~4:outer=1,2", "B~3", "C~3", "D~4", "F~4", "G~2"]


def test_classification_examples():
    assert classify(CartanMatrix([[2, -1], [-1, 2]])) == FINITE
    assert classify(CartanMatrix([[2, -2], [-2, 2]])) == AFFINE
    assert RootDatum(CartanMatrix([[2, -2], [-2, 2]])).delta == (1, 1)
    cyc = [[2, -1, 0, -1], [-1, 2, -1, 0], [0, -1, 2, -1], [-1, 0, -1, 2]]
    assert RootDatum(CartanMatrix(cyc)).delta == (1, 1, 1, 1)
    assert classify(CartanMatrix([[2, -3], [-3, 2]])) == OTHER


def test_invalid_cartan_matrices_are_rejected():
    with pytest.raises(CartanError):
        CartanMatrix([[2, 1], [-1, 2]])
    with pytest.raises(CartanError):
        CartanMatrix([[2, -1], [0, 2]])
    with pytest.raises(CartanError):
        CartanMatrix([[3, -1], [-1, 2]])
    with pytest.raises(CartanError):
        RootDatum(CartanMatrix([[2, -1], [-1, 2]]), cox_word=[0, 0])


@pytest.mark.parametrize("name", FINITE_TYPES)
def test_positive_root_counts_match_sympy(name):
    datum = datum_from_name(name)
    assert datum.type_tag == FINITE
    expected = len(RootSystem(name).all_roots()) // 2
    assert len(datum.positive_roots) == expected


@pytest.mark.parametrize("name", FINITE_TYPES)
def test_cartan_matrix_matches_sympy_up_to_transpose(name):
    ours = sympy.Matrix(datum_from_name(name).cartan.a)
    theirs = RootSystem(name).cartan_matrix()
    # same Dynkin diagram; sympy may number or orient the arrow differently
    assert sorted(ours.charpoly().all_coeffs()) == sorted(theirs.charpoly().all_coeffs())
    assert ours.det() == theirs.det()


@pytest.mark.parametrize("name", AFFINE_TYPES)
def test_delta_is_the_kernel_of_the_form(name):
    datum = datum_from_name(name)
    assert datum.type_tag == AFFINE
    kernel = sympy.Matrix(datum.K).nullspace()
    assert len(kernel) == 1
    assert exact.proportional(datum.delta, [Fraction(str(x)) for x in kernel[0]]) is not None
    assert all(x > 0 for x in datum.delta)
    assert datum.is_horizontal(datum.delta)


def test_bounded_root_enumeration_in_rank_two_affine():
    datum = RootDatum(CartanMatrix([[2, -2], [-2, 2]]))
    assert set(datum.positive_real_roots_bounded((2, 2))) == {(1, 0), (0, 1), (1, 2), (2, 1)}
    # real roots of this type are (k+1, k) and (k, k+1)
    assert set(datum.positive_real_roots_bounded((5, 5))) == {
        v for k in range(5) for v in ((k + 1, k), (k, k + 1))
    }


def test_a2_roots():
    assert set(datum_from_name("A2").positive_roots) == {(1, 0), (0, 1), (1, 1)}


def test_coroot_of_imaginary_root_is_an_error():
    datum = datum_from_name("D~4")
    with pytest.raises(CartanError):
        datum.coroot(datum.delta)


@pytest.mark.parametrize("name", FINITE_TYPES + AFFINE_TYPES)
def test_reflection_properties(name):
    datum = datum_from_name(name)
    roots = datum.positive_roots if datum.is_finite else datum.positive_real_roots_bounded(datum.delta)
    for beta in roots[:12]:
        s = datum.reflection_of_root(beta)
        assert exact.matmul(s, s) == exact.identity(datum.n)
        assert datum.reflect(beta, beta) == tuple(-x for x in beta)
        # the symmetrized form is invariant
        assert exact.matmul(exact.matmul(exact.transpose(s), datum.K), s) == datum.K
    if datum.is_finite:
        pos = set(datum.positive_roots)
        for beta in datum.positive_roots:
            for g in datum.positive_roots:
                img = datum.reflect(beta, g)
                assert img in pos or tuple(-x for x in img) in pos


@given(st.permutations(range(4)))
def test_coxeter_element_is_product_of_word(word):
    datum = RootDatum(datum_from_name("A4").cartan, word)
    m = exact.identity(4)
    for i in word:
        m = exact.matmul(m, datum.simple_reflection(i))
    assert datum.c_matrix == m
    assert exact.matmul(datum.c_matrix, datum.c_inverse_matrix) == exact.identity(4)
    # finite Coxeter elements have no fixed vector
    assert exact.rank(exact.sub(datum.c_matrix, exact.identity(4))) == 4


@pytest.mark.parametrize("name", AFFINE_TYPES)
def test_coxeter_element_fixes_delta(name):
    datum = datum_from_name(name)
    assert datum.apply_c(datum.delta) == tuple(datum.delta)


def test_parse_cartan_text_and_errors(tmp_path):
    datum = parse_cartan_text("2\n2 -1\n-1 2\ncox: 2 1\n")
    assert datum.cox_word == (1, 0)
    with pytest.raises(CartanError):
        parse_cartan_text("2\n2 -1\n-1 x\n")
    with pytest.raises(CartanError):
        parse_cartan_text("3\n2 -1 0\n-1 2 -1\n")
    path = tmp_path / "b2.txt"
    path.write_text("2\n2 -2\n-1 2\nd: 1 2\n")
    assert load_datum(str(path)).is_finite
    with pytest.raises(CartanError):
        datum_from_name("Q7")
    with pytest.raises(CartanError):
        datum_from_name("B3:outer=1")
