"""Monad-comonad interaction laws: the checker, an independent check through the
dual, and the product and composite constructions."""
from __future__ import annotations

from typing import Callable

from ..container import (
    ContainerMorphism,
    ContainerElement,
    assoc,
    assoc_inv,
    c_compose,
    c_coproduct,
    c_product,
    hcompose,
    mcompose,
    whisker_left,
    whisker_right,
)
from ..dual import dual_morphism, e_iso, il_to_morphism, m_map
from ..finset import FinFn, FinSet, Monoid, inl, inr, token
from ..interaction import ILMap, InteractionLaw, il_final, il_identity, il_map_counterexample, il_product, il_tensor
from ..report import Report
from .monads import (
    ContainerComonad,
    ContainerMonad,
    LawViolation,
    _difference,
    const_one_monad,
    cowriter_comonad,
    env_comonad,
    identity_comonad,
    identity_monad,
    is_comonad_morphism,
    is_monad_morphism,
    reader_monad,
    update_comonad,
    update_monad,
    writer_monad,
    zero_comonad,
)


class MCIL:
    def __init__(self, T: ContainerMonad, D: ContainerComonad, law: InteractionLaw, name: str = "ψ", check: bool = True):
        if law.F != T.C or law.G != D.C:
            raise ValueError("law containers do not match the monad and comonad")
        self.T, self.D, self.law, self.name = T, D, law, name
        if check:
            rep = mcil_check(T, D, law)
            if not rep.ok:
                raise LawViolation(f"{name} is not a monad-comonad interaction law", rep.counterexample)

    def __repr__(self) -> str:
        return f"MCIL({self.name}: {self.T.name} ⋈ {self.D.name})"

    def apply(self, e: ContainerElement, d: ContainerElement):
        p, q = self.law.table[(e.shape, d.shape)]
        return e.payload(p), d.payload(q)


def mcil_check(T: ContainerMonad, D: ContainerComonad, law: InteractionLaw) -> Report:
    """Both conditions, evaluated on shapes with positions as carriers.

    Unit: η x against any machine gives back x and the counit of the machine.
    Multiplication: running μ(s, u) equals running s, then u(p) against the
    inner machine chosen by δ.
    """
    tab = law.table
    checked = 0
    for t in D.C.shapes:
        checked += 1
        _, q = tab[(T.unit_shape, t)]
        if q != D.counit(t):
            return Report("mcil", False, checked, {"diagram": "unit", "shapes": [token(T.unit_shape), token(t)],
                                                   "got": token(q), "want": token(D.counit(t))})
    for sh in T.mult_shapes():
        s, u = sh
        m = T.mult.shape(sh)
        for t in D.C.shapes:
            checked += 1
            p, q = tab[(m, t)]
            left = (T.mult.pos(sh, p), q)
            t1, v = D.comult.shape(t)
            p1, q1 = tab[(s, t1)]
            p2, q2 = tab[(u(p1), v(q1))]
            right = ((p1, p2), D.comult.pos(t, (q1, q2)))
            if left != right:
                return Report("mcil", False, checked, {"diagram": "multiplication", "shapes": [token(sh), token(t)],
                                                       "left": token(left), "right": token(right)})
    return Report("mcil", True, checked)


def mcil_check_via_dual(T: ContainerMonad, D: ContainerComonad, law: InteractionLaw) -> Report:
    """The same conditions phrased as ψ : T → ⊥D being a monad map into the dual."""
    psi = il_to_morphism(law)
    DD = D.C
    unit_left = mcompose(psi, T.eta)
    unit_right = mcompose(dual_morphism(D.epsilon), e_iso())
    bad = _difference(unit_left, unit_right)
    if bad is not None:
        return Report("mcil-dual", False, 1, {"diagram": "unit", "at": list(bad)})
    left = mcompose(psi, T.mult)
    right = mcompose(dual_morphism(D.comult), mcompose(m_map(DD, DD), hcompose(psi, psi)))
    shapes = T.mult_shapes()
    bad = _difference(left, right, shapes)
    if bad is not None:
        return Report("mcil-dual", False, 1 + len(shapes), {"diagram": "multiplication", "at": list(bad)})
    return Report("mcil-dual", True, 1 + len(shapes))


def mcil_stretch(m: "MCIL", f: ContainerMorphism, T2: ContainerMonad, g: ContainerMorphism, D2: ContainerComonad) -> MCIL:
    """Pull back along a monad map f : T2 → T and a comonad map g : D2 → D."""
    from ..interaction import il_stretch

    bad = is_monad_morphism(f, T2, m.T) or is_comonad_morphism(g, D2, m.D)
    if bad:
        raise LawViolation("stretching needs a monad map and a comonad map", bad)
    return MCIL(T2, D2, il_stretch(m.law, f, g), name=f"{m.name}∘(f×g)")


def mcil_map_counterexample(src: MCIL, dst: MCIL, f: ContainerMorphism, g: ContainerMorphism):
    """(f : T → T', g : D' → D) as a map of laws, or the first failure."""
    bad = is_monad_morphism(f, src.T, dst.T)
    if bad:
        return {"part": "monad map", **bad}
    bad = is_comonad_morphism(g, dst.D, src.D)
    if bad:
        return {"part": "comonad map", **bad}
    bad = il_map_counterexample(ILMap(src.law, dst.law, f, g))
    return None if bad is None else {"part": "square", **bad}


# -- canonical laws ---------------------------------------------------------

def reader_mcil(A: FinSet) -> MCIL:
    """A ⇒ X against A × Y: the machine supplies the value it holds."""
    T, D = reader_monad(A), env_comonad(A)
    table = {("*", a): (a, "*") for a in A}
    return MCIL(T, D, InteractionLaw(T.C, D.C, table, name="reader"), name="reader")


def writer_mcil(M: Monoid) -> MCIL:
    """B × X against B ⇒ Y: the machine reads the written value."""
    T, D = writer_monad(M), cowriter_comonad(M)
    table = {(b, "*"): ("*", b) for b in M.carrier}
    return MCIL(T, D, InteractionLaw(T.C, D.C, table, name="writer"), name="writer")


def update_law_table(T: ContainerMonad, D: ContainerComonad) -> dict:
    """ψ(f, (a, g)) = let (b, x) ← f a in (x, g b)."""
    table = {}
    for s in T.C.shapes:
        _, u = s
        for t in D.C.shapes:
            a = t[0]
            table[(s, t)] = ((a, "*"), ("*", u(a)))
    return table


def update_mcil(A: FinSet, M: Monoid, act: Callable) -> MCIL:
    T, D = update_monad(A, M, act), update_comonad(A, M, act)
    return MCIL(T, D, InteractionLaw(T.C, D.C, update_law_table(T, D), name="update"), name="update")


def identity_mcil() -> MCIL:
    T, D = identity_monad(), identity_comonad()
    return MCIL(T, D, il_identity(), name="id")


def mcil_final() -> MCIL:
    """(1, 0): no machines, so nothing to check."""
    T, D = const_one_monad(), zero_comonad()
    return MCIL(T, D, il_final(), name="final")


def mcil_initial() -> MCIL:
    return identity_mcil()


# -- product ----------------------------------------------------------------

def product_monad(T0: ContainerMonad, T1: ContainerMonad) -> ContainerMonad:
    C = c_product(T0.C, T1.C)

    def split(sh, i):
        (s0, s1), u = sh
        s = (s0, s1)[i]
        P = (T0, T1)[i].C.pos(s)
        tag = inl if i == 0 else inr
        return (s, FinFn(P, None, [u(tag(p))[i] for p in P], check=False))

    def shape(sh):
        return (T0.mult.shape(split(sh, 0)), T1.mult.shape(split(sh, 1)))

    def pos(sh, q):
        i = 0 if q.tag == "inl" else 1
        tag = inl if i == 0 else inr
        p, p2 = (T0, T1)[i].mult.pos(split(sh, i), q.value)
        return (tag(p), tag(p2))

    mult = ContainerMorphism(c_compose(C, C), C, shape, pos, name="μ")
    return ContainerMonad(C, (T0.unit_shape, T1.unit_shape), mult, name=f"{T0.name}×{T1.name}")


def coproduct_comonad(D0: ContainerComonad, D1: ContainerComonad) -> ContainerComonad:
    C = c_coproduct(D0.C, D1.C)

    def side(t):
        return (D0, inl) if t.tag == "inl" else (D1, inr)

    def shape(t):
        D, tag = side(t)
        t1, v = D.comult.shape(t.value)
        return (tag(t1), FinFn(v.dom, None, [tag(x) for x in v.values], check=False))

    def pos(t, q):
        D, _ = side(t)
        return D.comult.pos(t.value, q)

    comult = ContainerMorphism(C, c_compose(C, C), shape, pos, name="δ")
    return ContainerComonad(C, lambda t: side(t)[0].counit(t.value), comult, name=f"{D0.name}+{D1.name}")


def mcil_product(m0: MCIL, m1: MCIL) -> MCIL:
    """(T0 × T1, D0 + D1): the machine's tag picks the component that runs."""
    T = product_monad(m0.T, m1.T)
    D = coproduct_comonad(m0.D, m1.D)
    return MCIL(T, D, il_product(m0.law, m1.law), name=f"{m0.name}×{m1.name}")


def product_projection(m0: MCIL, m1: MCIL, i: int):
    """The pair (π_i, in_i) from the product to its i-th factor."""
    T0, T1, D0, D1 = m0.T.C, m1.T.C, m0.D.C, m1.D.C
    C = c_product(T0, T1)
    tag = inl if i == 0 else inr
    f = ContainerMorphism(C, (T0, T1)[i], lambda s: s[i], lambda s, p: tag(p), name=f"π{i}")
    g = ContainerMorphism((D0, D1)[i], c_coproduct(D0, D1), lambda t: tag(t), lambda t, q: q, name=f"in{i}")
    return f, g


# -- composites -------------------------------------------------------------

def composite_monad(T0: ContainerMonad, T1: ContainerMonad, lam: ContainerMorphism, check: bool = True) -> ContainerMonad:
    """T0·T1 with multiplication μ0·μ1 ∘ T0λT1 (λ : T1·T0 → T0·T1)."""
    A, B = T0.C, T1.C
    AB = c_compose(A, B)
    steps = [
        assoc(A, B, AB),                                  # (AB)(AB) → A(B(AB))
        whisker_left(A, assoc_inv(B, A, B)),              # → A((BA)B)
        whisker_left(A, whisker_right(lam, B)),           # → A((AB)B)
        whisker_left(A, assoc(A, B, B)),                  # → A(A(BB))
        assoc_inv(A, A, c_compose(B, B)),                 # → (AA)(BB)
        hcompose(T0.mult, T1.mult),                       # → AB
    ]
    mult = steps[0]
    for s in steps[1:]:
        mult = mcompose(s, mult)
    mult.name = "μ"
    unit = (T0.unit_shape, FinFn(A.pos(T0.unit_shape), None, [T1.unit_shape] * len(A.pos(T0.unit_shape)), check=False))
    return ContainerMonad(AB, unit, mult, name=f"{T0.name}·{T1.name}", check=check)


def composite_comonad(D0: ContainerComonad, D1: ContainerComonad, kap: ContainerMorphism, check: bool = True) -> ContainerComonad:
    """D0·D1 with comultiplication D0κD1 ∘ δ0·δ1 (κ : D0·D1 → D1·D0)."""
    A, B = D0.C, D1.C
    AB = c_compose(A, B)
    steps = [
        hcompose(D0.comult, D1.comult),                   # AB → (AA)(BB)
        assoc(A, A, c_compose(B, B)),                     # → A(A(BB))
        whisker_left(A, assoc_inv(A, B, B)),              # → A((AB)B)
        whisker_left(A, whisker_right(kap, B)),           # → A((BA)B)
        whisker_left(A, assoc(B, A, B)),                  # → A(B(AB))
        assoc_inv(A, B, AB),                              # → (AB)(AB)
    ]
    comult = steps[0]
    for s in steps[1:]:
        comult = mcompose(s, comult)
    comult.name = "δ"

    def counit(t):
        t0, v = t
        e0 = D0.counit(t0)
        return (e0, D1.counit(v(e0)))

    return ContainerComonad(AB, counit, comult, name=f"{D0.name}·{D1.name}", check=check)


def matching_counterexample(m0: MCIL, m1: MCIL, lam: ContainerMorphism, kap: ContainerMorphism):
    """(λ, κ) as a map from ψ1-then-ψ0 on (T1T0, D1D0) to ψ0-then-ψ1 on (T0T1, D0D1)."""
    return il_map_counterexample(ILMap(il_tensor(m1.law, m0.law), il_tensor(m0.law, m1.law), lam, kap))


def mcil_composite(m0: MCIL, m1: MCIL, lam: ContainerMorphism, kap: ContainerMorphism) -> MCIL:
    bad = matching_counterexample(m0, m1, lam, kap)
    if bad is not None:
        raise LawViolation("the two laws do not match along λ and κ", bad)
    T = composite_monad(m0.T, m1.T, lam)
    D = composite_comonad(m0.D, m1.D, kap)
    return MCIL(T, D, il_tensor(m0.law, m1.law), name=f"{m0.name}·{m1.name}")


def reader_writer_lambda(A: FinSet, M: Monoid, act: Callable) -> ContainerMorphism:
    """λ : B × (A ⇒ X) → A ⇒ (B × X), λ(b, f) = λa. (b, f(a↓b))."""
    src = c_compose(writer_monad(M).C, reader_monad(A).C)
    dst = c_compose(reader_monad(A).C, writer_monad(M).C)
    B = M.carrier

    def shape(sh):
        b, _ = sh
        return ("*", FinFn(A, B, [b] * len(A), check=False))

    def pos(sh, q):
        b, _ = sh
        return ("*", act(q[0], b))

    return ContainerMorphism(src, dst, shape, pos, name="λ")


def env_cowriter_kappa(A: FinSet, M: Monoid, act: Callable) -> ContainerMorphism:
    """κ : A × (B ⇒ Y) → B ⇒ (A × Y), κ(a, g) = λb. (a↓b, g b)."""
    src = c_compose(env_comonad(A).C, cowriter_comonad(M).C)
    dst = c_compose(cowriter_comonad(M).C, env_comonad(A).C)
    B = M.carrier

    def shape(t):
        a, _ = t
        return ("*", FinFn(B, A, [act(a, b) for b in B], check=False))

    def pos(t, q):
        return ("*", q[0])

    return ContainerMorphism(src, dst, shape, pos, name="κ")


def update_as_composite(A: FinSet, M: Monoid, act: Callable) -> MCIL:
    return mcil_composite(
        reader_mcil(A), writer_mcil(M), reader_writer_lambda(A, M, act), env_cowriter_kappa(A, M, act)
    )


# -- mutations --------------------------------------------------------------

def single_entry_mutations(law: InteractionLaw):
    """Every law differing from `law` in exactly one table entry, in table order."""
    for s, t, entry in law.rows():
        for p in law.F.pos(s):
            for q in law.G.pos(t):
                if (p, q) != entry:
                    table = dict(law.table)
                    table[(s, t)] = (p, q)
                    yield (token(s), token(t), token((p, q))), InteractionLaw(law.F, law.G, table, check=False)
