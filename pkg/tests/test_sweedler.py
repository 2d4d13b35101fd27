import pytest

from interlaw.container import Container
from interlaw.finset import ONE, cyclic_monoid, fset, nat
from interlaw.interaction import il_enumerate
from interlaw.monadic.mcil import mcil_check, update_mcil
from interlaw.monadic.monads import comonad_enumerate, identity_comonad, zero_comonad
from interlaw.monadic.sweedler import (
    associative_degeneracy_report,
    binary_operation,
    coequation_checks,
    cofree_coassoc_counterexample,
    comonad_map_enumerate,
    head_or_last_report,
    mcil_from_comonad_map,
    mutate_comult,
    nelist_cooperation,
    sweedler_nelist,
    sweedler_squares,
    sweedler_update,
)

A = fset("A", "a", "b")
Z2 = cyclic_monoid(2)


def shift(a, b):
    return a if b == 0 else ("b" if a == "a" else "a")


@pytest.fixture(scope="module")
def s4():
    return sweedler_nelist(4)


def test_nelist_squares(s4):
    assert sweedler_squares(s4).ok


def test_update_is_sweedler():
    su = sweedler_update(A, Z2, shift)
    assert sweedler_squares(su).ok
    assert su.law.law.table == update_mcil(A, Z2, shift).law.table


def test_cooperation_coequations(s4):
    assert coequation_checks(s4.D, nelist_cooperation()) == {
        "coassoc": True, "left_corect": True, "right_corect": True, "counterexample": None}


def test_mutated_comultiplication_is_rejected(s4):
    D2 = mutate_comult(s4.D, "inl", ("snd", "fst"), "fst")
    assert D2.law_counterexample() is not None
    res = coequation_checks(D2, nelist_cooperation())
    assert not res["coassoc"]
    assert res["counterexample"] is not None


def test_cofree_counterexample_is_genuine():
    ce = cofree_coassoc_counterexample()
    assert ce is not None
    assert ce["left"] != ce["right"]
    assert len(ce["machine"]["states"]["elems"]) <= 2


def test_associative_degeneracy(s4):
    c = binary_operation(s4.T, 2, {0: 0, 1: 1})
    assert associative_degeneracy_report(s4.law, c).ok


def test_head_or_last(s4):
    C12 = Container(fset("S", "l"), {"l": fset("P", "fst", "snd")})
    C21 = Container(fset("S", "l", "r"), {"l": ONE, "r": ONE})
    C22 = Container(fset("S", "l", "r"), {"l": fset("P", "fst", "snd"), "r": fset("P", "fst", "snd")})
    C13 = Container(fset("S", "l"), {"l": nat(3)})
    coms = [identity_comonad(), zero_comonad(), s4.D]
    for C in (C12, C21, C22, C13):
        coms += comonad_enumerate(C)
    assert len(coms) == 77
    assert head_or_last_report(4, coms).ok


@pytest.mark.parametrize("which,count", [("id", 2), ("sweedler", 16)])
def test_mcils_correspond_to_comonad_maps(which, count):
    s3 = sweedler_nelist(3)
    D = identity_comonad() if which == "id" else s3.D
    good = [law for law in il_enumerate(s3.T.C, D.C) if mcil_check(s3.T, D, law).ok]
    maps = comonad_map_enumerate(D, s3.D)
    induced = [mcil_from_comonad_map(s3, D, h).law for h in maps]
    assert len(good) == len(maps) == count
    assert set(good) == set(induced)
