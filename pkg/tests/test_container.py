import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from interlaw.container import (
    Container,
    assoc,
    assoc_inv,
    c_compose,
    c_const,
    c_coproduct,
    c_exceptions,
    c_exponent,
    c_id,
    c_maybe,
    c_nelist,
    c_product,
    c_reader,
    c_writer,
    c_zero,
    element,
    find_iso,
    flatten,
    fmap,
    identity_morphism,
    interpret,
    is_iso_pair,
    lunit,
    lunit_inv,
    mcompose,
    morphism_equal,
    nat_trans_count,
    nat_trans_enumerate,
    runit,
    runit_inv,
    small_containers,
    unflatten,
)
from interlaw.finset import ONE, FinFn, all_functions, compose, cyclic_monoid, fset, identity, nat
from strategies import containers

A = fset("A", "a", "b")
B = fset("B", 0, 1)


@given(containers(), st.integers(0, 3))
def test_interpret_closed_form(C, n):
    X = nat(n)
    assert len(interpret(C, X)) == sum(n ** len(C.pos(s)) for s in C.shapes)


@settings(max_examples=40, deadline=None)
@given(containers(max_shapes=2, max_positions=2), st.integers(1, 3))
def test_fmap_functor_laws(C, n):
    X = nat(n)
    maps = list(all_functions(X, X))
    for e in interpret(C, X):
        assert fmap(identity(X), e) == e
        for f in maps[:6]:
            for g in maps[-6:]:
                assert fmap(compose(g, f), e) == fmap(g, fmap(f, e))


@settings(max_examples=40, deadline=None)
@given(containers(max_shapes=2, max_positions=2), containers(max_shapes=2, max_positions=2))
def test_nat_trans_count_matches_enumeration(F, G):
    assert len(nat_trans_enumerate(F, G)) == nat_trans_count(F, G)


@settings(max_examples=30, deadline=None)
@given(containers(max_shapes=3, max_positions=2))
def test_morphisms_out_of_terminal(G):
    # A position-free source can only land on position-free shapes.
    empty = sum(1 for s in G.shapes if len(G.pos(s)) == 0)
    assert nat_trans_count(c_const(ONE), G) == empty


def test_catalogue_shapes():
    assert c_id().profile() == [1]
    assert c_const(A).profile() == [0, 0]
    assert c_zero().profile() == []
    assert c_reader(A).profile() == [2]
    assert c_writer(A).profile() == [1, 1]
    assert c_maybe().profile() == [0, 1]
    assert c_nelist(3).profile() == [1, 2, 3]
    assert sorted(c_exceptions(fset("E", "e1", "e2")).profile()) == [0, 0, 1]
    assert len(c_product(c_reader(A), c_writer(A)).shapes) == 2
    assert len(c_coproduct(c_reader(A), c_writer(A)).shapes) == 3
    assert len(c_exponent(A, c_maybe()).shapes) == 4


def test_composite_flatten_round_trip():
    C0, C1 = c_reader(A), c_writer(B)
    X = fset("X", "x", "y")
    for e in interpret(c_compose(C0, C1), X):
        assert flatten(C0, C1, unflatten(C0, C1, e)) == e
    assert len(interpret(c_compose(C0, C1), X)) == (2 * 2) ** 2


def test_associator_and_unitors_are_inverse():
    U = c_compose(c_reader(A), c_writer(B))
    a, ai = assoc(U, c_maybe(), U), assoc_inv(U, c_maybe(), U)
    assert morphism_equal(mcompose(ai, a), identity_morphism(a.src))
    assert morphism_equal(mcompose(a, ai), identity_morphism(a.dst))
    assert morphism_equal(mcompose(lunit(U), lunit_inv(U)), identity_morphism(U))
    assert morphism_equal(mcompose(runit(U), runit_inv(U)), identity_morphism(U))


def test_find_iso():
    iso = find_iso(c_writer(A), Container(fset("S", "l", "r"), {"l": ONE, "r": ONE}))
    assert iso is not None and is_iso_pair(*iso)
    assert find_iso(c_reader(A), c_writer(A)) is None


def test_small_containers_family():
    fam = list(small_containers(3, 3))
    assert len(fam) == 4 + 10 + 20
    profiles = [tuple(C.profile()) for C in fam]
    assert len(set(profiles)) == len(profiles)


def test_json_round_trip_and_element():
    C = c_nelist(3)
    D = Container.from_json(C.to_json())
    assert [len(D.pos(s)) for s in D.shapes] == [1, 2, 3]
    e = element(c_reader(A), "*", {"a": 0, "b": 1}, nat(2))
    assert e("b") == 1
    with pytest.raises(Exception):
        element(c_reader(A), "*", {"a": 0, "b": 7}, nat(2))


def test_monoid_carrier_composites():
    Z2 = cyclic_monoid(2)
    C = c_compose(c_reader(A), c_writer(Z2.carrier))
    assert len(C.shapes) == 4
    assert all(len(C.pos(s)) == 2 for s in C.shapes)
    assert FinFn(A, Z2.carrier, [0, 1]) in [s[1] for s in C.shapes]
