"""Stateful runners, their equivalent presentations, and handlers for contrast.

A runner of a container monad (or of the free monad on a signature) is a
table θ(s, y) = (p, y'): in state y, a computation of shape s continues at
position p and leaves the state y'.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .container import (
    Container,
    ContainerElement,
    c_id,
    flatten,
    fmap,
    morphism_apply,
)
from .dual import Dual, dual_morphism, e_iso, m_map
from .finset import ONE, DomainMismatch, FinFn, FinSet, Monoid, all_functions, check_action, identity, token
from .interaction import InteractionLaw
from .monadic.free import CanonicalMCIL, FreeMonad, Leaf, Machine, Node, TraceEvent
from .monadic.mcil import MCIL
from .monadic.monads import ContainerComonad, ContainerMonad, LawViolation
from .report import Report


@dataclass
class Runner:
    C: Container
    Y: FinSet
    theta: dict  # (shape, state) -> (position, state)
    monad: ContainerMonad | None = None
    start: object = None

    def __post_init__(self):
        for s in self.C.shapes:
            for y in self.Y:
                p, y2 = self.theta[(s, y)]
                if p not in self.C.pos(s) or y2 not in self.Y:
                    raise LawViolation(f"θ({token(s)}, {token(y)}) is out of range")

    def __call__(self, s, y):
        return self.theta[(s, y)]

    def apply(self, e: ContainerElement, y):
        """θ_X on an element of T X."""
        p, y2 = self.theta[(e.shape, y)]
        return e.payload(p), y2

    def same_table(self, other: "Runner") -> bool:
        return self.C == other.C and self.Y == other.Y and self.theta == other.theta

    def to_json(self) -> dict:
        out = {
            "state": self.Y.to_json(),
            "theta": {f"{token(s)},{token(y)}": [token(p), token(y2)] for (s, y), (p, y2) in self.theta.items()},
        }
        if self.start is not None:
            out["start"] = token(self.start)
        return out

    @staticmethod
    def from_json(C: Container, obj: dict, monad: ContainerMonad | None = None, Y: FinSet | None = None) -> "Runner":
        """Decode a runner. States stay as their tokens unless ``Y`` is given."""
        from .interaction import split_pair_key

        if Y is None:
            Y = FinSet.from_json(obj["state"])
        elif [token(y) for y in Y] != [str(e) for e in obj["state"]["elems"]]:
            raise DomainMismatch(f"state set does not match {Y.name}")
        theta = {}
        for key, (p, y2) in obj["theta"].items():
            s, y = split_pair_key(key, C.shapes, Y)
            theta[(s, y)] = (C.pos(s).by_token(p), Y.by_token(y2))
        start = Y.by_token(obj["start"]) if "start" in obj else None
        return Runner(C, Y, theta, monad, start)


def runner_law_report(r: Runner) -> Report:
    """Unit and multiplication laws of a runner of a container monad."""
    T = r.monad
    if T is None:
        return Report("runner", True, 0, details={"free": True})
    checked = 0
    for y in r.Y:
        checked += 1
        p, y2 = r.theta[(T.unit_shape, y)]
        if y2 != y:
            return Report("runner", False, checked, {"law": "unit", "state": token(y)})
    for sh in T.mult_shapes():
        s, u = sh
        m = T.mult.shape(sh)
        for y in r.Y:
            checked += 1
            p, y_out = r.theta[(m, y)]
            p1, y1 = r.theta[(s, y)]
            p2, y2 = r.theta[(u(p1), y1)]
            if (T.mult.pos(sh, p), y_out) != ((p1, p2), y2):
                return Report("runner", False, checked, {"law": "multiplication", "shape": token(sh), "state": token(y)})
    return Report("runner", True, checked)


def run(r: Runner, t, y0, trace: list | None = None):
    """Run a tree over the runner's signature from state y0."""
    y = y0
    i = 0
    while isinstance(t, Node):
        p, y = r.theta[(t.shape, y)]
        if trace is not None:
            trace.append(TraceEvent(i, token(t.shape), token(p), token(y)))
        t = t.child(p)
        i += 1
    return t.value, y


def all_runners(C: Container, Y: FinSet) -> list[Runner]:
    keys = [(s, y) for s in C.shapes for y in Y]
    opts = [[(p, y2) for p in C.pos(s) for y2 in Y] for s, _ in keys]
    return [Runner(C, Y, dict(zip(keys, combo))) for combo in itertools.product(*opts)]


# -- update lenses ------------------------------------------------------------

def update_lens_runner(Y: FinSet, lkp: Callable, upd: Callable, A: FinSet, M: Monoid, act: Callable, T: ContainerMonad | None = None) -> Runner:
    """θ(f, y) = let (b, x) ← f(lkp y) in (x, upd(y, b))."""
    from .monadic.monads import update_monad

    check_action(Y, M, upd)
    for y in Y:
        for b in M.carrier:
            if lkp(upd(y, b)) != act(lkp(y), b):
                raise LawViolation(f"lkp is not equivariant at ({token(y)}, {token(b)})")
    T = T or update_monad(A, M, act)
    theta = {}
    for s in T.C.shapes:
        _, u = s
        for y in Y:
            a = lkp(y)
            theta[(s, y)] = ((a, "*"), upd(y, u(a)))
    return Runner(T.C, Y, theta, T)


# -- the state monad presentation --------------------------------------------

@dataclass
class StateMonadMap:
    """ϑ : T → St^Y, stored as its components at the generic elements."""

    C: Container
    Y: FinSet
    components: dict  # shape -> FinFn Y -> (position, state)
    monad: ContainerMonad | None = None

    def apply(self, e: ContainerElement) -> dict:
        """ϑ_X(e) as a state transformer y ↦ (x, y')."""
        comp = self.components[e.shape]
        out = {}
        for y in self.Y:
            p, y2 = comp(y)
            out[y] = (e.payload(p), y2)
        return out


def st_unit(Y: FinSet, x) -> dict:
    return {y: (x, y) for y in Y}


def st_join(Y: FinSet, h: dict) -> dict:
    """μ^Y: run the outer transformer, then the transformer it returned."""
    out = {}
    for y in Y:
        inner, y1 = h[y]
        out[y] = inner[y1]
    return out


def state_map_report(sm: StateMonadMap) -> Report:
    T = sm.monad
    if T is None:
        return Report("state-map", True, 0, details={"free": True})
    unit = sm.apply(T.unit(0))
    if unit != st_unit(sm.Y, 0):
        return Report("state-map", False, 1, {"law": "unit"})
    checked = 1
    for sh in T.mult_shapes():
        checked += 1
        s, u = sh
        # the generic element of T T at shape (s, u): positions (p, p') ↦ (p, p')
        inner = FinFn(
            T.C.pos(s), None,
            [ContainerElement(u(p), FinFn(T.C.pos(u(p)), None, [(p, q) for q in T.C.pos(u(p))], check=False))
             for p in T.C.pos(s)],
            check=False,
        )
        tt = ContainerElement(s, inner)
        left = sm.apply(T.join(tt))
        right = st_join(sm.Y, sm.apply(fmap(sm.apply, tt)))
        if left != right:
            return Report("state-map", False, checked, {"law": "multiplication", "shape": token(sh)})
    return Report("state-map", True, checked)


def runner_to_state_map(r: Runner) -> StateMonadMap:
    comps = {}
    for s in r.C.shapes:
        comps[s] = FinFn(r.Y, None, [r.theta[(s, y)] for y in r.Y], check=False)
    return StateMonadMap(r.C, r.Y, comps, r.monad)


def state_map_to_runner(sm: StateMonadMap) -> Runner:
    """Evaluate ϑ at the generic element of each shape (payload = identity on positions)."""
    theta = {}
    for s in sm.C.shapes:
        P = sm.C.pos(s)
        gen = ContainerElement(s, FinFn(P, P, P.elems, check=False))
        h = sm.apply(gen)
        for y in sm.Y:
            theta[(s, y)] = h[y]
    return Runner(sm.C, sm.Y, theta, sm.monad)


# -- dual coalgebras ------------------------------------------------------------

@dataclass
class DualCoalgebra:
    """γ : Y → ⊥T Y; the machine answers every shape with a position and a next state."""

    C: Container
    Y: FinSet
    gamma: dict  # state -> ContainerElement of ⊥C over Y
    monad: ContainerMonad | None = None

    def machine(self, start) -> Machine:
        return Machine(Dual(self.C), self.Y, {y: y for y in self.Y}, self.gamma, start)


def runner_to_coalgebra(r: Runner) -> DualCoalgebra:
    S = r.C.shapes
    gamma = {}
    for y in r.Y:
        q = tuple(r.theta[(s, y)][0] for s in S)
        gamma[y] = ContainerElement(q, FinFn(S, r.Y, [r.theta[(s, y)][1] for s in S], check=False))
    return DualCoalgebra(r.C, r.Y, gamma, r.monad)


def coalgebra_to_runner(g: DualCoalgebra) -> Runner:
    S = g.C.shapes
    theta = {}
    for y in g.Y:
        e = g.gamma[y]
        for i, s in enumerate(S):
            theta[(s, y)] = (e.shape[i], e.payload(s))
    return Runner(g.C, g.Y, theta, g.monad)


def coalgebra_report(g: DualCoalgebra) -> Report:
    """The two coalgebra conditions: ⊥η ∘ γ = e and m ∘ ⊥Tγ ∘ γ = ⊥μ ∘ γ."""
    T = g.monad
    if T is None:
        return Report("dual-coalgebra", True, 0, details={"free": True})
    D = Dual(T.C)
    deta, e = dual_morphism(T.eta), e_iso()
    dmu, m = dual_morphism(T.mult), m_map(T.C, T.C)
    checked = 0
    for y in g.Y:
        checked += 1
        if morphism_apply(deta, g.gamma[y]) != morphism_apply(e, ContainerElement("*", FinFn(c_id().pos("*"), None, [y], check=False))):
            return Report("dual-coalgebra", False, checked, {"law": "unit", "state": token(y)})
        nested = fmap(lambda z: g.gamma[z], g.gamma[y])
        left = morphism_apply(m, flatten(D, D, nested))
        right = morphism_apply(dmu, g.gamma[y])
        if left != right:
            return Report("dual-coalgebra", False, checked, {"law": "multiplication", "state": token(y)})
    return Report("dual-coalgebra", True, checked)


# -- costate families -----------------------------------------------------------

@dataclass
class CostateFamily:
    """ζ_Y : (Y ⇒ Y) × Y → ⊥T Y, the component at Z = Y."""

    C: Container
    Y: FinSet
    zeta: dict  # (FinFn Y -> Y, state) -> ContainerElement of ⊥C over Y
    monad: ContainerMonad | None = None


def runner_to_costate_family(r: Runner) -> CostateFamily:
    g = runner_to_coalgebra(r)
    zeta = {}
    for f in all_functions(r.Y, r.Y):
        for y in r.Y:
            zeta[(f, y)] = fmap(f, g.gamma[y])
    return CostateFamily(r.C, r.Y, zeta, r.monad)


def costate_family_to_runner(cf: CostateFamily) -> Runner:
    ident = identity(cf.Y)
    return coalgebra_to_runner(DualCoalgebra(cf.C, cf.Y, {y: cf.zeta[(ident, y)] for y in cf.Y}, cf.monad))


def costate_report(cf: CostateFamily) -> Report:
    """Naturality at Z = Y, plus the unit condition e ∘ ε = ⊥η ∘ ζ."""
    checked = 0
    ident = identity(cf.Y)
    for (f, y), e in cf.zeta.items():
        checked += 1
        if e != fmap(f, cf.zeta[(ident, y)]):
            return Report("costate", False, checked, {"law": "naturality", "map": f.token(), "state": token(y)})
        if cf.monad is not None:
            got = morphism_apply(dual_morphism(cf.monad.eta), e)
            if got.payload("*") != f(y):
                return Report("costate", False, checked, {"law": "unit", "map": f.token(), "state": token(y)})
    return Report("costate", True, checked)


# -- runners from interaction laws ------------------------------------------------

@dataclass
class ComonadCoalgebra:
    D: ContainerComonad
    Y: FinSet
    gamma: dict  # state -> ContainerElement of D over Y

    def report(self) -> Report:
        checked = 0
        for y in self.Y:
            checked += 1
            e = self.gamma[y]
            if self.D.extract(e) != y:
                return Report("coalgebra", False, checked, {"law": "counit", "state": token(y)})
            if fmap(lambda z: self.gamma[z], e) != self.D.duplicate(e):
                return Report("coalgebra", False, checked, {"law": "comultiplication", "state": token(y)})
        return Report("coalgebra", True, checked)


def lens_coalgebra(D: ContainerComonad, Y: FinSet, lkp: Callable, upd: Callable, M: Monoid) -> ComonadCoalgebra:
    """An update lens as a coalgebra of A × (B ⇒ Y): y ↦ (lkp y, b ↦ upd(y, b))."""
    gamma = {}
    for y in Y:
        t = (lkp(y), _one_fn())
        P = D.C.pos(t)
        gamma[y] = ContainerElement(t, FinFn(P, Y, [upd(y, q[1]) for q in P], check=False))
    return ComonadCoalgebra(D, Y, gamma)


def _one_fn() -> FinFn:
    return FinFn(ONE, ONE, ("*",), check=False)


def mcil_to_runner_spec(m: MCIL) -> Callable[[ComonadCoalgebra], Runner]:
    """Ψ(Y, γ): θ(s, y) = (p, v(q)) where γ y = (t, v) and (p, q) = ψ(s, t)."""

    def spec(coalg: ComonadCoalgebra) -> Runner:
        rep = coalg.report()
        if not rep.ok:
            raise LawViolation("not a comonad coalgebra", rep.counterexample)
        theta = {}
        for s in m.T.C.shapes:
            for y in coalg.Y:
                e = coalg.gamma[y]
                p, q = m.law.table[(s, e.shape)]
                theta[(s, y)] = (p, e.payload(q))
        return Runner(m.T.C, coalg.Y, theta, m.T)

    return spec


def cofree_coalgebra(D: ContainerComonad, seeds: list[ContainerElement]) -> ComonadCoalgebra:
    """The part of (D Y, δ_Y) reachable from the given elements."""
    seen, todo = [], list(seeds)
    index = set()
    while todo:
        e = todo.pop()
        if e in index:
            continue
        index.add(e)
        seen.append(e)
        for inner in D.duplicate(e).payload.values:
            if inner not in index:
                todo.append(inner)
    seen.sort(key=lambda e: e.token())
    K = FinSet("DY", tuple(seen))
    return ComonadCoalgebra(D, K, {e: D.duplicate(e) for e in K})


def runner_spec_to_mcil(T: ContainerMonad, D: ContainerComonad, spec: Callable[[ComonadCoalgebra], Runner]) -> MCIL:
    """ψ(s, t) read off the runner that the runner specification assigns to the cofree coalgebra, then ε."""
    generic = {t: ContainerElement(t, FinFn(D.C.pos(t), None, D.C.pos(t).elems, check=False)) for t in D.C.shapes}
    r = spec(cofree_coalgebra(D, list(generic.values())))
    table = {}
    for s in T.C.shapes:
        for t, d in generic.items():
            p, e = r.theta[(s, d)]
            table[(s, t)] = (p, D.extract(e))
    return MCIL(T, D, InteractionLaw(T.C, D.C, table, name="from-spec"), name="from-spec")


def runner_to_machine_run(r: Runner, t, y0):
    """The same run, through the coalgebra and the canonical interaction."""
    g = runner_to_coalgebra(r)
    return CanonicalMCIL(r.C).run(t, g.machine(y0))


# -- handlers -------------------------------------------------------------------

@dataclass
class Handler:
    """An algebra of the free monad on C with carrier Z, and a seed f : X → Z."""

    C: Container
    Z: FinSet
    algebra: dict  # shape -> callable taking a FinFn P(s) -> Z
    seed: Callable

    def alpha(self, t):
        """The algebra T Z → Z: fold a tree with leaves in Z."""
        if isinstance(t, Leaf):
            return t.value
        P = self.C.pos(t.shape)
        return self.algebra[t.shape](FinFn(P, self.Z, [self.alpha(k) for _, k in t.children], check=False))


def handle(h: Handler, t):
    """The unique fold: Leaf x ↦ f x, Node(s, k) ↦ α_s(handle ∘ k)."""
    if isinstance(t, Leaf):
        return h.seed(t.value)
    P = h.C.pos(t.shape)
    return h.algebra[t.shape](FinFn(P, h.Z, [handle(h, k) for _, k in t.children], check=False))


def handler_report(h: Handler, X: FinSet, depth: int) -> Report:
    """Both triangles: h ∘ η = f and h ∘ μ = α ∘ T h, on all trees up to depth."""
    F = FreeMonad(h.C)
    checked = 0
    for x in X:
        checked += 1
        if handle(h, Leaf(x)) != h.seed(x):
            return Report("handler", False, checked, {"law": "unit", "leaf": token(x)})
    for tt in F.nested_trees(X, depth):
        checked += 1
        if handle(h, F.join(tt)) != h.alpha(F.fmap(lambda t: handle(h, t), tt)):
            return Report("handler", False, checked, {"law": "multiplication"})
    return Report("handler", True, checked)


def handler_uniqueness(h: Handler, X: FinSet, depth: int) -> int:
    """Count the maps g on trees of depth ≤ depth that satisfy both triangles.

    Every function from those trees to Z is tried; only triangle instances
    that stay inside the depth bound constrain g.
    """
    F = FreeMonad(h.C)
    trees = F.trees(X, depth)
    index = {t: i for i, t in enumerate(trees)}
    nested = [tt for tt in F.nested_trees(X, depth)]
    constraints = []
    for tt in nested:
        leaves = _leaves(tt)
        if all(l in index for l in leaves):
            constraints.append((index[F.join(tt)], tt))
    count = 0
    for vals in itertools.product(h.Z.elems, repeat=len(trees)):
        g = lambda t: vals[index[t]]  # noqa: E731
        if any(vals[index[Leaf(x)]] != h.seed(x) for x in X):
            continue
        if all(vals[i] == h.alpha(F.fmap(g, tt)) for i, tt in constraints):
            count += 1
    return count


def _leaves(t) -> list:
    if isinstance(t, Leaf):
        return [t.value]
    out = []
    for _, k in t.children:
        out.extend(_leaves(k))
    return out
