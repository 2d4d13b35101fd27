"""The dual of a container, its canonical pairing, and the lax monoidal (e, m).

For C = ⟨S, P⟩ the dual has shapes Π_{s∈S} P(s) (tuples aligned with the
order of S) and every position set equal to S.  A machine in state q answers
a computation of shape s with the position q(s) and then learns s.
"""
from __future__ import annotations

from dataclasses import dataclass

from .container import (
    Container,
    ContainerMorphism,
    assoc,
    c_compose,
    c_id,
    lunit,
    mcompose,
    morphism_difference,
    runit,
    whisker_left,
    whisker_right,
)
from .finset import FinSet, check_size, dependent_product
from .interaction import InteractionLaw


class Dual(Container):
    """⟨Π_s P(s), const S⟩, with shapes enumerated only on demand."""

    def __init__(self, C: Container):
        self.base = C
        S = C.shapes
        super().__init__(None, lambda q: S, name=f"⊥{C.name}")  # type: ignore[arg-type]

    @property
    def shapes(self) -> FinSet:
        if self._shapes is None:
            n = 1
            for s in self.base.shapes:
                n *= len(self.base.pos(s))
            check_size(n, f"dual of {self.base.name}")
            self._shapes = FinSet(self.name, dependent_product(self.base.shapes, self.base.pos))
        return self._shapes

    def pos(self, q) -> FinSet:
        return self.base.shapes

    def has_shape(self, q) -> bool:
        S = self.base.shapes
        return (
            isinstance(q, tuple)
            and len(q) == len(S)
            and all(p in self.base.pos(s) for s, p in zip(S.elems, q))
        )

    def at(self, q, s):
        """The position q(s)."""
        return q[self.base.shapes.index(s)]


def dual(C: Container) -> Dual:
    """The dual container, with its shapes materialized (subject to the size guard)."""
    D = Dual(C)
    D.shapes
    return D


def dual_lazy(C: Container) -> Dual:
    return Dual(C)


def dual_pairing(C: Container) -> InteractionLaw:
    """The pairing of C with its dual: entry at (s, q) is (q(s), s)."""
    D = dual(C)
    S = C.shapes
    table = {}
    for s in S:
        i = S.index(s)
        for q in D.shapes:
            table[(s, q)] = (q[i], s)
    return InteractionLaw(C, D, table, check=False, name="ev")


@dataclass
class DualWitness:
    src: Container
    dual: Dual
    pairing: InteractionLaw


def dual_witness(C: Container) -> DualWitness:
    pairing = dual_pairing(C)
    return DualWitness(C, pairing.G, pairing)


def il_to_morphism(il: InteractionLaw) -> ContainerMorphism:
    """A law on (F, G) as a morphism F → ⊥G."""
    F, G = il.F, il.G
    S_G = G.shapes

    def shape(s):
        return tuple(il.table[(s, t)][1] for t in S_G)

    def pos(s, t):
        return il.table[(s, t)][0]

    return ContainerMorphism(F, dual(G), shape, pos, name=f"⌜{il.name}⌝")


def morphism_to_il(m: ContainerMorphism) -> InteractionLaw:
    """A morphism F → ⊥G as a law on (F, G)."""
    D = m.dst
    G = D.base
    S_G = G.shapes
    table = {}
    for s in m.src.shapes:
        q = m.shape(s)
        for i, t in enumerate(S_G):
            table[(s, t)] = (m.pos(s, t), q[i])
    return InteractionLaw(m.src, G, table, check=False)


def e_iso() -> ContainerMorphism:
    """e : Id → ⊥Id."""
    return ContainerMorphism(c_id(), dual(c_id()), lambda s: ("*",), lambda s, q: "*", name="e")


def e_inv() -> ContainerMorphism:
    """e⁻¹ : ⊥Id → Id."""
    return ContainerMorphism(dual(c_id()), c_id(), lambda q: "*", lambda q, p: "*", name="e⁻¹")


def m_map(G0: Container, G1: Container) -> ContainerMorphism:
    """m : ⊥G0 ∘ ⊥G1 → ⊥(G0∘G1).

    A pair of machines (q0, f) answers a composite shape (s0, g) by answering
    s0 with q0, then answering g(q0 s0) with the inner machine f(s0).
    """
    D0, D1 = Dual(G0), Dual(G1)
    G01 = c_compose(G0, G1)
    S0, S1 = G0.shapes, G1.shapes

    def shape(sh):
        q0, f = sh
        out = []
        for s0, g in G01.shapes:
            p = q0[S0.index(s0)]
            out.append((p, f(s0)[S1.index(g(p))]))
        return tuple(out)

    def pos(sh, target):
        q0, _ = sh
        s0, g = target
        return (s0, g(q0[S0.index(s0)]))

    return ContainerMorphism(c_compose(D0, D1), Dual(G01), shape, pos, name="m")


def dual_morphism(m: ContainerMorphism) -> ContainerMorphism:
    """⊥m : ⊥G → ⊥G' for m : G' → G."""
    Gp, G = m.src, m.dst
    S, Sp = G.shapes, Gp.shapes

    def shape(q):
        return tuple(m.pos(s, q[S.index(m.shape(s))]) for s in Sp)

    return ContainerMorphism(Dual(G), Dual(Gp), shape, lambda q, s: m.shape(s), name=f"⊥{m.name}")


def dual_unit(C: Container) -> ContainerMorphism:
    """C → ⊥⊥C: a shape s answers every dual machine q with position s."""
    D = dual(C)
    DD = Dual(D)
    n = len(D.shapes)
    S = C.shapes
    return ContainerMorphism(C, DD, lambda s: (s,) * n, lambda s, q: q[S.index(s)], name="η⊥")


def lax_unit_counterexample(G: Container):
    """Both unit coherence squares of (e, m), checked at every shape."""
    DG = Dual(G)
    left = mcompose(m_map(c_id(), G), whisker_right(e_iso(), DG))
    left_ref = mcompose(dual_morphism(lunit(G)), lunit(DG))
    bad = morphism_difference(left, left_ref)
    if bad is not None:
        return ("left", bad)
    right = mcompose(m_map(G, c_id()), whisker_left(DG, e_iso()))
    right_ref = mcompose(dual_morphism(runit(G)), runit(DG))
    bad = morphism_difference(right, right_ref)
    if bad is not None:
        return ("right", bad)
    return None


def lax_assoc_counterexample(G0: Container, G1: Container, G2: Container):
    """m ∘ (m·⊥G2) against ⊥assoc ∘ m ∘ (⊥G0·m) ∘ assoc, shape by shape."""
    D0, D1, D2 = Dual(G0), Dual(G1), Dual(G2)
    lhs = mcompose(m_map(c_compose(G0, G1), G2), whisker_right(m_map(G0, G1), D2))
    rhs = mcompose(
        dual_morphism(assoc(G0, G1, G2)),
        mcompose(
            m_map(G0, c_compose(G1, G2)),
            mcompose(whisker_left(D0, m_map(G1, G2)), assoc(D0, D1, D2)),
        ),
    )
    return morphism_difference(lhs, rhs)


__all__ = [
    "Dual",
    "DualWitness",
    "dual",
    "dual_lazy",
    "dual_pairing",
    "dual_witness",
    "il_to_morphism",
    "morphism_to_il",
    "e_iso",
    "e_inv",
    "m_map",
    "dual_morphism",
    "dual_unit",
    "lax_unit_counterexample",
    "lax_assoc_counterexample",
]
