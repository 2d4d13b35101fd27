from hypothesis import given, settings

from interlaw.container import c_id, c_maybe, c_nelist, c_reader, c_writer, interpret
from interlaw.finset import all_functions, fset, nat
from interlaw.interaction import (
    InteractionLaw,
    il_apply,
    il_count,
    il_enumerate,
    il_final,
    il_identity,
    il_initial,
    il_product,
    il_rev,
    il_tensor,
    is_natural_pairing,
)
from strategies import containers

A = fset("A", "a", "b")


@settings(max_examples=60, deadline=None)
@given(containers(max_shapes=3, max_positions=2), containers(max_shapes=3, max_positions=2))
def test_enumeration_matches_count_and_emptiness(F, G):
    n = il_count(F, G)
    laws = list(il_enumerate(F, G, limit=2000))
    assert len(laws) == min(n, 2000)
    assert len({tuple(sorted(law.table.items(), key=repr)) for law in laws}) == len(laws)
    empty_F = any(len(F.pos(s)) == 0 for s in F.shapes) and len(G.shapes) > 0
    empty_G = any(len(G.pos(t)) == 0 for t in G.shapes) and len(F.shapes) > 0
    assert (n == 0) == (empty_F or empty_G)


def test_counts():
    assert il_count(c_reader(nat(2)), c_writer(nat(2))) == 4
    assert il_count(c_maybe(), c_writer(nat(2))) == 0
    assert il_count(c_id(), c_id()) == 1


def test_every_law_is_binatural():
    F, G = c_reader(A), c_writer(nat(2))
    for n in (1, 2, 3):
        X = nat(n)
        maps = list(all_functions(X, X))
        for law in il_enumerate(F, G):
            assert is_natural_pairing(law, X, X, maps, maps)


def test_tensor_units_and_rev():
    law = next(il_enumerate(c_nelist(2), c_writer(A)))
    I = il_identity()
    assert il_tensor(I, law).table and il_tensor(law, I).table
    assert il_rev(il_rev(law)) == law
    X, Y = fset("X", "x", "y"), nat(2)
    eF = next(iter(interpret(law.F, X)))
    eG = next(iter(interpret(law.G, Y)))
    x, y = il_apply(law, eF, eG)
    assert il_apply(il_rev(law), eG, eF) == (y, x)


def test_product_final_initial():
    l0 = next(il_enumerate(c_reader(A), c_writer(A)))
    l1 = il_identity()
    p = il_product(l0, l1)
    assert len(p.table) == len(p.F.shapes) * len(p.G.shapes)
    fin, ini = il_final(), il_initial()
    assert fin.table == {} and fin.F.profile() == [0] and fin.G.profile() == []
    assert ini.table == {} and ini.F.profile() == [] and ini.G.profile() == [0]


def test_json_round_trip():
    for law in il_enumerate(c_reader(A), c_writer(A)):
        assert InteractionLaw.from_json(law.to_json()).to_json() == law.to_json()
