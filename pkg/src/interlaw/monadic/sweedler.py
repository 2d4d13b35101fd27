"""The two registered Sweedler duals (nonempty lists and update), comonad maps into
them, and the cooperation coequations."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..container import (
    Container,
    ContainerElement,
    ContainerMorphism,
    c_compose,
    hcompose,
    mcompose,
    nat_trans_enumerate,
)
from ..dual import dual, dual_morphism, e_iso, m_map, morphism_to_il
from ..finset import ONE, FinFn, FinSet, Monoid, check_action, fset, token
from ..interaction import InteractionLaw, il_rev
from ..report import Report, combine
from .free import Machine, all_machines
from .monads import (
    ContainerComonad,
    ContainerMonad,
    _difference,
    is_comonad_morphism,
    nelist_monad,
    update_comonad,
    update_monad,
)
from .mcil import MCIL

FST, SND = "fst", "snd"


@dataclass
class SweedlerInstance:
    T: ContainerMonad
    D: ContainerComonad
    iota: ContainerMorphism  # D → ⊥T
    law: MCIL


def law_from_iota(T: ContainerMonad, D: ContainerComonad, iota: ContainerMorphism) -> InteractionLaw:
    return il_rev(morphism_to_il(iota))


def nelist_sweedler_container() -> Container:
    """Y × (Y + Y): shapes say which summand, positions are the two labels."""
    P = fset("P", FST, SND)
    return Container(fset("S", "inl", "inr"), {"inl": P, "inr": P}, name="Y×(Y+Y)")


def nelist_sweedler_comonad() -> ContainerComonad:
    C = nelist_sweedler_container()

    def shape(t):
        return (t, FinFn(C.pos(t), None, [t, t], check=False))

    def pos(t, q):
        return FST if q == (FST, FST) else SND

    comult = ContainerMorphism(C, c_compose(C, C), shape, pos, name="δ")
    return ContainerComonad(C, lambda t: FST, comult, name="Y×(Y+Y)")


def sweedler_nelist(N: int) -> SweedlerInstance:
    """ι(y, _) 1 = (0, y); ι(_, inl y') n = (0, y'); ι(_, inr y') n = (n-1, y') for n ≥ 2."""
    if N < 2:
        raise ValueError("the nonempty-list instance needs N ≥ 2")
    T = nelist_monad(N)
    D = nelist_sweedler_comonad()
    DT = dual(T.C)

    def shape(t):
        return tuple(0 if (n == 1 or t == "inl") else n - 1 for n in T.C.shapes)

    iota = ContainerMorphism(D.C, DT, shape, lambda t, n: FST if n == 1 else SND, name="ι")
    law = MCIL(T, D, law_from_iota(T, D, iota), name=f"sweedler-list{N}")
    return SweedlerInstance(T, D, iota, law)


def sweedler_update(A: FinSet, M: Monoid, act: Callable) -> SweedlerInstance:
    """ι(a, f) = λg. (a, f(g a))."""
    check_action(A, M, act)
    T = update_monad(A, M, act)
    D = update_comonad(A, M, act)
    DT = dual(T.C)

    def shape(t):
        return tuple((t[0], "*") for _ in T.C.shapes)

    def pos(t, s):
        return ("*", s[1](t[0]))

    iota = ContainerMorphism(D.C, DT, shape, pos, name="ι")
    law = MCIL(T, D, law_from_iota(T, D, iota), name="sweedler-update")
    return SweedlerInstance(T, D, iota, law)


def sweedler_squares(inst: SweedlerInstance) -> Report:
    """e ∘ ⊛η = ⊥η ∘ ι and m ∘ (ι·ι) ∘ ⊛μ = ⊥μ ∘ ι, shape by shape."""
    T, D, iota = inst.T, inst.D, inst.iota
    unit_left = mcompose(e_iso(), D.epsilon)
    unit_right = mcompose(dual_morphism(T.eta), iota)
    bad = _difference(unit_left, unit_right)
    if bad is not None:
        return Report("sweedler-unit", False, len(D.C.shapes), {"at": list(bad)})
    left = mcompose(m_map(T.C, T.C), mcompose(hcompose(iota, iota), D.comult))
    S = T.C.shapes
    checked = 0
    for t in D.C.shapes:
        checked += 1
        l_shape, q = left.shape(t), iota.shape(t)
        # ⊥μ ∘ ι, one T·T shape at a time so that a partial μ is only used where defined
        for i, sh in enumerate(c_compose(T.C, T.C).shapes):
            if not T.in_domain(sh):
                continue
            m = T.mult.shape(sh)
            r = T.mult.pos(sh, q[S.index(m)])
            if l_shape[i] != r or left.pos(t, sh) != iota.pos(t, m):
                return Report("sweedler-mult", False, checked, {"at": [token(t), token(sh)]})
    return combine("sweedler", [Report("sweedler-unit", True, len(D.C.shapes)), Report("sweedler-mult", True, checked)])


# -- comonad maps -----------------------------------------------------------

def comonad_map_enumerate(D: ContainerComonad, D2: ContainerComonad) -> list[ContainerMorphism]:
    return [h for h in nat_trans_enumerate(D.C, D2.C) if is_comonad_morphism(h, D, D2) is None]


def mcil_from_comonad_map(inst: SweedlerInstance, D: ContainerComonad, h: ContainerMorphism) -> MCIL:
    """ψ = ι ∘ h."""
    law = il_rev(morphism_to_il(mcompose(inst.iota, h)))
    return MCIL(inst.T, D, law, name="ι∘h")


def comonad_map_from_mcil(inst: SweedlerInstance, m: MCIL) -> ContainerMorphism | None:
    """The unique comonad map h with ι ∘ h = ψ, found among all comonad maps."""
    found = [h for h in comonad_map_enumerate(m.D, inst.D) if mcil_from_comonad_map(inst, m.D, h).law == m.law]
    if len(found) > 1:
        raise ValueError("comonad map is not unique")
    return found[0] if found else None


def list_value_index(law: InteractionLaw, n: int, t) -> int:
    """Which list element ψ returns for a list of length n against machine shape t."""
    return law.table[(n, t)][0]


def head_or_last_report(N: int, comonads: list[ContainerComonad]) -> Report:
    """Every law induced by a comonad map into Y×(Y+Y) returns the head or the last element."""
    inst = sweedler_nelist(N)
    checked = 0
    for D in comonads:
        for h in comonad_map_enumerate(D, inst.D):
            m = mcil_from_comonad_map(inst, D, h)
            for n in inst.T.C.shapes:
                for t in D.C.shapes:
                    checked += 1
                    i = list_value_index(m.law, n, t)
                    if i not in (0, n - 1):
                        return Report("head-or-last", False, checked, {"comonad": D.name, "length": n, "index": i})
    return Report("head-or-last", True, checked)


# -- coequations ------------------------------------------------------------

def nelist_cooperation() -> dict:
    """c(y, inl y') = inl y', c(y, inr y') = inr y', as per-shape (tag, position)."""
    return {"inl": ("inl", SND), "inr": ("inr", SND)}


def _coop_sides(D: ContainerComonad, c: dict, t):
    """The two ways of splitting a machine three times, plus c itself, at carrier P(t)."""
    t1, v = D.comult.shape(t)
    tag, p = c[t1]
    inner = v(p)

    def lift(q2):
        return D.comult.pos(t, (p, q2))

    def c_inner():
        tg, q = c[inner]
        return (tg, lift(q))

    eps_inner = lift(D.counit(inner))
    # (c + ε) then reassociate
    if tag == "inl":
        a_tag, a_val = c_inner()
        left = ("inl", a_val) if a_tag == "inl" else ("inr", ("inl", a_val))
    else:
        left = ("inr", ("inr", eps_inner))
    # ε + c
    if tag == "inl":
        right = ("inl", eps_inner)
    else:
        right = ("inr", c_inner())
    ctag, cq = c[t]
    return left, right, (ctag, cq)


def coequation_checks(D: ContainerComonad, c: dict) -> dict:
    """Coassociativity and both corectangularities, at the generic element of each shape.

    Sums are written as (tag, value); Y + (Y + Y) as nested pairs.
    """
    out = {"coassoc": True, "left_corect": True, "right_corect": True, "counterexample": None}
    for t in D.C.shapes:
        left, right, (ctag, cq) = _coop_sides(D, c, t)
        t1, v = D.comult.shape(t)
        tag, p = c[t1]
        inner = v(p)
        eps_inner = D.comult.pos(t, (p, D.counit(inner)))
        # left corectangularity: (c + ε) ∘ c_D ∘ δ = (inl + id) ∘ c, in (Y + Y) + Y
        if tag == "inl":
            tg, q = c[inner]
            lhs_l = ("inl", (tg, D.comult.pos(t, (p, q))))
        else:
            lhs_l = ("inr", eps_inner)
        rhs_l = ("inl", (ctag, cq)) if ctag == "inl" else ("inr", cq)
        # right corectangularity: (ε + c) ∘ c_D ∘ δ = (id + inr) ∘ c, in Y + (Y + Y)
        rhs_r = ("inl", cq) if ctag == "inl" else ("inr", ("inr", cq))
        checks = {"coassoc": left == right, "left_corect": lhs_l == rhs_l, "right_corect": right == rhs_r}
        for k, ok in checks.items():
            if not ok and out[k]:
                out[k] = False
                out["counterexample"] = out["counterexample"] or {"law": k, "shape": token(t)}
    return out


def mutate_comult(D: ContainerComonad, t, q, new) -> ContainerComonad:
    """D with one position of δ(t) redirected (comonad laws are not rechecked)."""
    old = D.comult

    def pos(s, qq):
        return new if (s == t and qq == q) else old.pos(s, qq)

    comult = ContainerMorphism(D.C, old.dst, old.shape, pos, name="δ'")
    return ContainerComonad(D.C, D.counit_table, comult, name=D.name + "'", check=False)


# -- the cofree comonad on Y + Y ------------------------------------------------

def sum_container() -> Container:
    """Y + Y as a container: two shapes with one position each."""
    return Container(fset("S", "inl", "inr"), {"inl": ONE, "inr": ONE}, name="Y+Y")


def cofree_coassoc_counterexample(max_states: int = 2):
    """A machine of ν W. Y × (W + W) on which the cooperation is not coassociative.

    On machines, c(m) = (tag of m, label of the successor), and the two sides of the
    coequation read off the first three labels along the run in different ways.
    """
    G = sum_container()
    for k in range(1, max_states + 1):
        Z = FinSet("Z", tuple(f"z{i}" for i in range(k)))
        for m in all_machines(G, Z, Z):
            left, right = _cofree_sides(m)
            if left != right:
                return {"machine": m.to_json(), "left": token(left), "right": token(right)}
    return None


def _cofree_sides(m: Machine):
    def coop(mm: Machine):
        return (mm.shape(), mm.successor("*"))

    tag, m1 = coop(m)  # c applied to the duplicate picks the successor machine
    if tag == "inl":
        tg, m2 = coop(m1)
        a = ("inl", m2.extract()) if tg == "inl" else ("inr", ("inl", m2.extract()))
        b = ("inl", m1.extract())
    else:
        a = ("inr", ("inr", m1.extract()))
        tg, m2 = coop(m1)
        b = ("inr", (tg, m2.extract()))
    return a, b


# -- the degeneracy of associative operations ---------------------------------

def binary_operation(T: ContainerMonad, shape, which: dict) -> Callable:
    """c_X(x0, x1) as the element of the given shape with payload p ↦ x_{which[p]}."""
    P = T.C.pos(shape)

    def c(x0, x1):
        xs = (x0, x1)
        return ContainerElement(shape, FinFn(P, None, [xs[which[p]] for p in P], check=False))

    return c


def associative_degeneracy_report(m: MCIL, c: Callable) -> Report:
    """For an associative c, ψ(μ(c(c(x0,x1), η x2)), d) = ψ(c(x0,x2), d) = ψ(μ(c(η x0, c(x1,x2))), d).

    Checked at x = (0, 1, 2) and the generic machine of every shape.
    """
    T = m.T
    x0, x1, x2 = 0, 1, 2
    left = T.join(c(c(x0, x1), T.unit(x2)))
    right = T.join(c(T.unit(x0), c(x1, x2)))
    if left != right:
        return Report("associative-degeneracy", False, 0, {"reason": "c is not associative"})
    middle = c(x0, x2)
    checked = 0
    for t in m.D.C.shapes:
        checked += 1
        d = ContainerElement(t, FinFn(m.D.C.pos(t), None, m.D.C.pos(t).elems, check=False))
        a, b, e = m.apply(left, d), m.apply(middle, d), m.apply(right, d)
        if not (a == b == e):
            return Report("associative-degeneracy", False, checked,
                          {"shape": token(t), "left": token(a), "middle": token(b), "right": token(e)})
    return Report("associative-degeneracy", True, checked)
