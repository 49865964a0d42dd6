import pytest
from hypothesis import given, strategies as st

from ncchains.annulus import (
    NO,
    UNSUPPORTED,
    YES,
    AffinePerm,
    PermutationError,
    annular_membership_limited,
    coxeter_perm,
    dual_path_typeA,
    is_monotone_infinite_cycle,
    loop,
    parse_cycles,
    to_cycles,
    transposition,
    typeD_letters,
    verify_typeA,
    verify_typeB,
    verify_typeD,
    xi_data,
)

P1 = "(1 −2 −3 2)_8(…3 4 7 11…)(8)_8"
P2 = "(1 0 −2 −9 −5)_8(2 −4)_8(5)_8"
P3 = "(1)_8(⋯2 0 −3 −6⋯)(⋯3 7 11⋯)(4)_8(6)_8"


def ascii(text):
    return text.replace("−", "-").replace("…", "...").replace("⋯", "...")


@pytest.mark.parametrize("text", [P1, P2, P3])
def test_round_trip_with_fixed_points(text):
    p = parse_cycles(text)
    assert to_cycles(p, fixed_points=True) == ascii(text)
    assert parse_cycles(to_cycles(p), "A", 8) == p


def test_p1_values():
    p = parse_cycles(P1)
    assert [p(i)[0] for i in (1, -2, -3, 2)] == [-2, -3, 2, 1]
    assert p(3)[0] == 4 and p(7)[0] == 11 and p(11)[0] == 12
    assert p(8)[0] == 8 and p(16)[0] == 16


def test_p3_infinite_cycles_are_monotone():
    assert is_monotone_infinite_cycle(parse_cycles(P3))


def test_identity_prints_empty():
    assert to_cycles(AffinePerm.identity("A", 5)) == ""
    assert annular_membership_limited(AffinePerm.identity("A", 4), [1, 3]) == YES


@pytest.mark.parametrize("text,kind,n", [
    ("(1 2", "A", 4), ("(1 x)_4", "A", 4), ("(1 2)_4(2 3)_4", "A", 4), ("(1 2)_4", "A", 5),
    ("(1 2)_4(3 4)_6", "A", None), ("(1 bar(2))_4", "A", 4), ("(1 2)", "A", None),
])
def test_malformed_text(text, kind, n):
    with pytest.raises(PermutationError):
        parse_cycles(text, kind, n)


def test_period_mismatch():
    with pytest.raises(PermutationError):
        loop(1, 4) * loop(1, 5)
    with pytest.raises(PermutationError):
        AffinePerm.from_window([1, 1, 3])


def test_coxeter_element_n4():
    assert coxeter_perm(4, [1, 3]) == parse_cycles("(⋯1 3 5⋯)(⋯4 2 0⋯)", "A", 4)
    xd = xi_data(4, [1, 3])
    assert xd.c(3)[0] == 5 and xd.c(2)[0] == 0
    # loops for outer points, inverse loops for inner ones
    assert xd.f(1) == loop(1, 4) and xd.f(2) == loop(2, 4).inverse()
    with pytest.raises(PermutationError):
        coxeter_perm(4, [])
    with pytest.raises(PermutationError):
        coxeter_perm(4, [1, 2, 3, 4])



@given(st.integers(2, 7).flatmap(lambda n: st.tuples(*[
    st.tuples(st.permutations(range(1, n + 1)), st.lists(st.integers(-2, 2), min_size=n, max_size=n))
    for _ in range(3)])))
def test_group_laws(triple):
    a, b, c = (AffinePerm.from_window([x + k * len(w) for x, k in zip(w, ks)]) for w, ks in triple)
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity() and (a.inverse() * a).is_identity()
    assert parse_cycles(to_cycles(a), "A", a.n) == a


@given(st.integers(2, 7), st.data())
def test_loops_and_transpositions(n, data):
    a = data.draw(st.integers(1, n))
    b = data.draw(st.integers(-2 * n, 2 * n).filter(lambda x: (x - a) % n))
    assert (loop(a, n) * loop(a, n).inverse()).is_identity()
    t = transposition(a, b, n)
    assert (t * t).is_identity()



@given(st.integers(3, 6), st.data())
def test_signed_symmetry_survives_products(n, data):
    # multiples of n stay fixed, so the generators live on 1..n-1
    gens = [parse_cycles(f"(({i} {i + 1}))_{2 * n}", "C", n) for i in range(1, n - 1)]
    gens.append(parse_cycles(f"(-1 1)_{2 * n}", "C", n))
    gens.append(parse_cycles(f"({n - 1} {n + 1})_{2 * n}", "C", n))
    word = data.draw(st.lists(st.sampled_from(gens), min_size=1, max_size=5))
    p = AffinePerm.identity("C", n)
    for g in word:
        p = p * g
    for x in range(-3 * n, 3 * n):
        assert p(-x)[0] == -p(x)[0]
        assert p(x + 2 * n)[0] == p(x)[0] + 2 * n
    q = p.inverse()
    assert (p * q).is_identity()
    assert parse_cycles(to_cycles(p), "C", n) == p


def test_barred_round_trip():
    for p in typeD_letters(6).values():
        assert parse_cycles(to_cycles(p), "D", 6) == p
        q = p.inverse()
        assert (p * q).is_identity()


def test_membership_examples():
    xd = xi_data(4, [1, 3])
    t = xd.t(1)
    member, nonmember = xd.f(1) * t, t * xd.f(1)
    assert member == parse_cycles("(...1 3 5...)", "A", 4)
    assert annular_membership_limited(member, [1, 3]) == YES
    assert annular_membership_limited(nonmember, [1, 3]) == NO
    assert annular_membership_limited(xd.c, [1, 3]) == YES
    # a block meeting both boundaries is outside the fragment
    assert annular_membership_limited(transposition(1, 2, 4), [1, 3]) == UNSUPPORTED


@pytest.mark.parametrize("n,outer", [(4, [1, 3]), (4, [1, 2]), (6, [1, 2, 3]), (6, [1, 3, 5]),
                                     (8, [1, 2, 5, 6]), (8, [1, 3, 5, 7])])
def test_verify_type_a(n, outer):
    rep = verify_typeA(n, outer)
    assert rep.ok, [c for c in rep.checks if not c.passed]


def test_verify_type_a_needs_two_points_each_side():
    with pytest.raises(PermutationError):
        verify_typeA(4, [1])


@pytest.mark.parametrize("n", [5, 6, 7])
def test_type_b_chains(n):
    rep = verify_typeB(n)
    assert rep.ok, [c for c in rep.checks if not c.passed]


@pytest.mark.parametrize("n", [5, 6, 7])
def test_type_d_chains(n):
    rep = verify_typeD(n)
    assert rep.ok, [c for c in rep.checks if not c.passed]
    L = typeD_letters(n)
    assert L["f_beta"] * L["t_beta"] == parse_cycles(f"((1 bar({-n - 1})))_{2 * n}", "D", n)


def test_small_b_and_d_are_refused():
    with pytest.raises(PermutationError):
        verify_typeB(3)
    with pytest.raises(PermutationError):
        verify_typeD(4)


@pytest.mark.parametrize("outer", [[1, 3], [1, 2]])
def test_dual_path_n4(outer):
    rep = dual_path_typeA(4, outer)
    assert rep.ok, [c for c in rep.checks if not c.passed]
    assert rep.metadata["unsupported"] == 0
    assert rep.metadata["pairs"] == 8 * 7
