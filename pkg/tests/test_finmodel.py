import pytest

from interlaw.container import c_coproduct, c_id, c_maybe, c_reader, c_writer
from interlaw.dual import dual
from interlaw.finmodel import (
    NatFamily,
    Universe,
    check_commutative_degeneracy,
    check_nullary_degeneracy,
    container_family,
    end_dual,
    find_natural_iso,
    from_container,
    functor_product,
    identity_functor,
    interaction_families,
    is_binatural,
    is_natural,
    operation_family,
    squares,
    unordered_pairs,
)
from interlaw.finset import fset

A = fset("A", "a", "b")


@pytest.fixture(scope="module")
def U3():
    return Universe(3)


def test_universe_maps():
    U = Universe(2)
    assert len(U.maps) == sum(b**a for a in range(3) for b in range(3))


@pytest.mark.parametrize("C", [c_id(), c_reader(A), c_writer(A), c_maybe(), c_coproduct(c_id(), c_writer(A))],
                         ids=lambda C: C.name)
def test_end_dual_agrees_with_container_dual(C):
    U = Universe(2)
    E, D = end_dual(from_container(C, U)), from_container(dual(C), U)
    iso = find_natural_iso(E, D)
    assert iso is not None
    assert is_natural(iso, E, D)


def test_families_are_binatural():
    U = Universe(2)
    F, G = from_container(c_reader(A), U), from_container(c_writer(A), U)
    fams = interaction_families(F, G)
    assert len(fams) == 4
    assert all(is_binatural(f, F, G) for f in fams)


def test_unordered_pairs_only_interact_trivially(U3):
    P = unordered_pairs(U3)
    fam = container_family(U3) + [P, functor_product(P, identity_functor(U3)), squares(U3)]
    c = operation_family(U3, 2, P, lambda a: tuple(sorted(a)))
    rep = check_commutative_degeneracy(P, c, fam)
    assert rep["operation_natural"] and rep["commutative"] and rep["degenerate"]
    assert rep["witness"] is None


def test_ordered_pairs_are_a_positive_control(U3):
    sq = squares(U3)
    assert interaction_families(sq, identity_functor(U3), first=True)
    rep = check_commutative_degeneracy(sq, None, [identity_functor(U3)])
    assert not rep["degenerate"]


def test_nullary_operation_degeneracy(U3):
    M = from_container(c_maybe(), U3)
    nothing = {n: {(): next(e for e in M.obj[n] if e.shape == "nothing")} for n in U3.objects}
    rep = check_nullary_degeneracy(M, NatFamily(nothing), container_family(U3))
    assert rep["operation_natural"] and rep["degenerate"]
    R = from_container(c_reader(A), U3)
    assert not check_nullary_degeneracy(R, None, container_family(U3))["degenerate"]
