"""Functor-functor interaction laws between containers, stored as finite tables.

A law φ : F X × G Y → X × Y between containers is determined by one position
pair per pair of shapes: φ((s, v), (t, w)) = (v p, w q) where (p, q) is the
table entry at (s, t).  Naturality in X and Y then holds by construction.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .container import (
    Container,
    ContainerElement,
    ContainerMorphism,
    c_compose,
    c_const,
    c_coproduct,
    c_id,
    c_product,
    c_zero,
    fmap,
    interpret,
)
from .finset import ONE, DomainMismatch, FinSet, check_size, inl, inr, token


class InteractionLaw:
    def __init__(self, F: Container, G: Container, table: dict, check: bool = True, name: str = "φ"):
        self.F, self.G, self.name = F, G, name
        self.table = dict(table)
        if check:
            for s in F.shapes:
                for t in G.shapes:
                    try:
                        p, q = self.table[(s, t)]
                    except KeyError:
                        raise DomainMismatch(f"law table has no entry at ({token(s)}, {token(t)})") from None
                    if p not in F.pos(s) or q not in G.pos(t):
                        raise DomainMismatch(f"entry at ({token(s)}, {token(t)}) is out of range")

    def __call__(self, s, t):
        return self.table[(s, t)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, InteractionLaw)
            and self.F == other.F
            and self.G == other.G
            and self.table == other.table
        )

    def __hash__(self) -> int:
        return hash(tuple(sorted(map(token, self.table.values()))))

    def __repr__(self) -> str:
        return f"InteractionLaw({self.name}: {self.F.name} ⋈ {self.G.name}, {len(self.table)} entries)"

    def rows(self) -> Iterator[tuple]:
        for s in self.F.shapes:
            for t in self.G.shapes:
                yield s, t, self.table[(s, t)]

    def to_json(self) -> dict:
        return {
            "F": self.F.to_json(),
            "G": self.G.to_json(),
            "table": {f"{token(s)},{token(t)}": [token(p), token(q)] for s, t, (p, q) in self.rows()},
        }

    @staticmethod
    def from_json(obj: dict) -> "InteractionLaw":
        F = Container.from_json(obj["F"])
        G = Container.from_json(obj["G"])
        table = {}
        for key, (p, q) in obj["table"].items():
            s, t = split_pair_key(key, F.shapes, G.shapes)
            table[(s, t)] = (F.pos(s).by_token(p), G.pos(t).by_token(q))
        return InteractionLaw(F, G, table)


def split_pair_key(key: str, left: FinSet, right: FinSet) -> tuple:
    """Split a "s,t" key whose tokens may themselves contain commas."""
    found = []
    for s in left:
        ts = token(s)
        if key.startswith(ts + ","):
            rest = key[len(ts) + 1 :]
            try:
                found.append((s, right.by_token(rest)))
            except DomainMismatch:
                pass
    if len(found) != 1:
        raise DomainMismatch(f"cannot parse table key {key!r}")
    return found[0]


def il_apply(il: InteractionLaw, eF: ContainerElement, eG: ContainerElement) -> tuple:
    p, q = il.table[(eF.shape, eG.shape)]
    return eF.payload(p), eG.payload(q)


def il_count(F: Container, G: Container) -> int:
    total = 1
    for s in F.shapes:
        for t in G.shapes:
            total *= len(F.pos(s)) * len(G.pos(t))
    return total


def il_enumerate(F: Container, G: Container, limit: int | None = None) -> Iterator[InteractionLaw]:
    """Every law between F and G, in canonical order (a generator)."""
    keys = [(s, t) for s in F.shapes for t in G.shapes]
    choices = []
    for s, t in keys:
        opts = [(p, q) for p in F.pos(s) for q in G.pos(t)]
        if not opts:
            return
        choices.append(opts)
    n = il_count(F, G)
    if limit is None:
        check_size(n, "law enumeration")
    for i, combo in enumerate(itertools.product(*choices)):
        if limit is not None and i >= limit:
            return
        yield InteractionLaw(F, G, dict(zip(keys, combo)), check=False)


def il_identity() -> InteractionLaw:
    Id = c_id()
    return InteractionLaw(Id, Id, {("*", "*"): ("*", "*")}, name="id")


def il_tensor(l1: InteractionLaw, l2: InteractionLaw) -> InteractionLaw:
    """(F,G,φ) ⊗ (J,K,ψ) on (F∘J, G∘K): outer layer by φ, inner layer by ψ."""
    FJ, GK = c_compose(l1.F, l2.F), c_compose(l1.G, l2.G)
    table = {}
    for sh in FJ.shapes:
        s, u = sh
        for th in GK.shapes:
            t, v = th
            p, q = l1.table[(s, t)]
            pj, qk = l2.table[(u(p), v(q))]
            table[(sh, th)] = ((p, pj), (q, qk))
    return InteractionLaw(FJ, GK, table, check=False, name=f"{l1.name}⊗{l2.name}")


def il_rev(il: InteractionLaw) -> InteractionLaw:
    table = {(t, s): (q, p) for (s, t), (p, q) in il.table.items()}
    return InteractionLaw(il.G, il.F, table, check=False, name=f"{il.name}ʳ")


def il_stretch(il: InteractionLaw, f: ContainerMorphism, g: ContainerMorphism) -> InteractionLaw:
    """Pull φ back along f : F' → F and g : G' → G."""
    table = {}
    for s in f.src.shapes:
        fs = f.shape(s)
        for t in g.src.shapes:
            gt = g.shape(t)
            p, q = il.table[(fs, gt)]
            table[(s, t)] = (f.pos(s, p), g.pos(t, q))
    return InteractionLaw(f.src, g.src, table, check=False, name=f"{il.name}∘(f×g)")


def il_product(l0: InteractionLaw, l1: InteractionLaw) -> InteractionLaw:
    """(F0 × F1, G0 + G1): the machine's tag selects which law answers."""
    F = c_product(l0.F, l1.F)
    G = c_coproduct(l0.G, l1.G)
    table = {}
    for s0, s1 in F.shapes:
        for t in G.shapes:
            if t.tag == "inl":
                p, q = l0.table[(s0, t.value)]
                table[((s0, s1), t)] = (inl(p), q)
            else:
                p, q = l1.table[(s1, t.value)]
                table[((s0, s1), t)] = (inr(p), q)
    return InteractionLaw(F, G, table, check=False, name=f"{l0.name}×{l1.name}")


def il_final() -> InteractionLaw:
    """The final law (1, 0, φ): no machine shapes, so the table is empty."""
    return InteractionLaw(c_const(ONE), c_zero(), {}, name="final")


def il_initial() -> InteractionLaw:
    return InteractionLaw(c_zero(), c_const(ONE), {}, name="initial")


@dataclass
class ILMap:
    """A law map (f, g) : (F, G, φ) → (F', G', φ') with f : F → F' and g : G' → G."""

    src: InteractionLaw
    dst: InteractionLaw
    f: ContainerMorphism
    g: ContainerMorphism


def il_map_counterexample(m: ILMap):
    """First shape pair where φ ∘ (id × g) and φ' ∘ (f × id) differ, or None."""
    phi, phi2 = m.src, m.dst
    for s in phi.F.shapes:
        fs = m.f.shape(s)
        for t2 in phi2.G.shapes:
            gt = m.g.shape(t2)
            p, qg = phi.table[(s, gt)]
            left = (p, m.g.pos(t2, qg))
            p2, q2 = phi2.table[(fs, t2)]
            right = (m.f.pos(s, p2), q2)
            if left != right:
                return {"shapes": (token(s), token(t2)), "left": token(left), "right": token(right)}
    return None


def il_map_check(m: ILMap) -> bool:
    return il_map_counterexample(m) is None


def is_natural_pairing(il: InteractionLaw, X: FinSet, Y: FinSet, maps_x, maps_y) -> bool:
    """Element-level binaturality test of il_apply against fmap (used by tests)."""
    for eF in interpret(il.F, X):
        for eG in interpret(il.G, Y):
            x, y = il_apply(il, eF, eG)
            for f in maps_x:
                if il_apply(il, fmap(f, eF), eG) != (f(x), y):
                    return False
            for g in maps_y:
                if il_apply(il, eF, fmap(g, eG)) != (x, g(y)):
                    return False
    return True
