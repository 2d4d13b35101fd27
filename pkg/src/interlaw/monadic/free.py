"""Free monads as operation trees, cofree comonads as finite-state machines,
and the canonical interaction between them."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator

from ..container import Container, ContainerElement
from ..dual import Dual
from ..finset import FinFn, FinSet, token


@dataclass(frozen=True)
class Leaf:
    value: object

    def token(self) -> str:
        return f"leaf({token(self.value)})"


@dataclass(frozen=True)
class Node:
    """An operation with shape s and one subtree per position of s."""

    shape: object
    children: tuple  # of (position, tree), in position order

    def child(self, p):
        for q, t in self.children:
            if q == p:
                return t
        raise KeyError(p)

    def token(self) -> str:
        kids = ",".join(f"{token(p)}:{t.token()}" for p, t in self.children)
        return f"{token(self.shape)}[{kids}]"


FreeTree = Leaf | Node


def node(C: Container, s, kids: dict | Callable) -> Node:
    get = kids.__getitem__ if isinstance(kids, dict) else kids
    return Node(s, tuple((p, get(p)) for p in C.pos(s)))


def tree_depth(t) -> int:
    if isinstance(t, Leaf):
        return 0
    return 1 + max((tree_depth(k) for _, k in t.children), default=0)


def tree_to_json(t) -> dict:
    if isinstance(t, Leaf):
        return {"leaf": token(t.value)}
    return {"op": token(t.shape), "children": {token(p): tree_to_json(k) for p, k in t.children}}


def tree_from_json(C: Container, obj: dict, X: FinSet | None = None):
    if "leaf" in obj:
        v = obj["leaf"]
        return Leaf(X.by_token(v) if X is not None else v)
    s = C.shapes.by_token(obj["op"])
    kids = obj["children"]
    return Node(s, tuple((p, tree_from_json(C, kids[token(p)], X)) for p in C.pos(s)))


class FreeMonad:
    """Trees over a container signature; unit is Leaf, bind grafts."""

    def __init__(self, C: Container):
        self.C = C

    def unit(self, x) -> Leaf:
        return Leaf(x)

    def bind(self, t, k: Callable):
        if isinstance(t, Leaf):
            return k(t.value)
        return Node(t.shape, tuple((p, self.bind(c, k)) for p, c in t.children))

    def join(self, tt):
        return self.bind(tt, lambda inner: inner)

    def fmap(self, f: Callable, t):
        return self.bind(t, lambda x: Leaf(f(x)))

    def trees(self, leaves, depth: int) -> list:
        """All trees of depth ≤ depth whose leaves are drawn from `leaves`."""
        level = [Leaf(x) for x in leaves]
        for _ in range(depth):
            nxt = [Leaf(x) for x in leaves]
            for s in self.C.shapes:
                P = self.C.pos(s).elems
                for kids in itertools.product(level, repeat=len(P)):
                    nxt.append(Node(s, tuple(zip(P, kids))))
            level = nxt
        return level

    def nested_trees(self, X, depth: int) -> list:
        """Trees of trees whose grafted result has depth ≤ depth."""
        level = [Leaf(t) for t in self.trees(X, 0)]
        for d in range(1, depth + 1):
            nxt = [Leaf(t) for t in self.trees(X, d)]
            for s in self.C.shapes:
                P = self.C.pos(s).elems
                for kids in itertools.product(level, repeat=len(P)):
                    nxt.append(Node(s, tuple(zip(P, kids))))
            level = nxt
        return level


def free_monad(C: Container) -> FreeMonad:
    return FreeMonad(C)


class Machine:
    """An element of the cofree comonad on G: a labelled coalgebra and a current state."""

    def __init__(self, G: Container, states: FinSet, out: dict, step: dict, current):
        self.G, self.states, self.out, self.step, self.current = G, states, out, step, current
        for z in states:
            e = step[z]
            if not G.has_shape(e.shape):
                raise ValueError(f"state {token(z)} steps to a non-shape {e.shape!r}")

    def __repr__(self) -> str:
        return f"Machine({token(self.current)}/{len(self.states)})"

    def at(self, z) -> "Machine":
        return Machine(self.G, self.states, self.out, self.step, z)

    def extract(self):
        return self.out[self.current]

    def shape(self):
        return self.step[self.current].shape

    def successor(self, p) -> "Machine":
        return self.at(self.step[self.current](p))

    def duplicate(self) -> "Machine":
        return Machine(self.G, self.states, {z: self.at(z) for z in self.states}, self.step, self.current)

    def fmap(self, f: Callable) -> "Machine":
        return Machine(self.G, self.states, {z: f(self.out[z]) for z in self.states}, self.step, self.current)

    def observe(self, depth: int):
        """The behaviour tree to the given depth; labels that are machines are observed too."""
        label = self.extract()
        label = label.observe(depth) if isinstance(label, Machine) else token(label)
        if depth == 0:
            return (label,)
        s = self.shape()
        return (label, token(s), tuple(self.successor(p).observe(depth - 1) for p in self.G.pos(s)))

    def to_json(self) -> dict:
        return {
            "states": self.states.to_json(),
            "out": {token(z): token(self.out[z]) for z in self.states},
            "step": {
                token(z): {"shape": token(e.shape), "next": {token(p): token(n) for p, n in e.payload.items()}}
                for z, e in ((z, self.step[z]) for z in self.states)
            },
            "start": token(self.current),
        }

    @staticmethod
    def from_json(G: Container, obj: dict, Y: FinSet | None = None) -> "Machine":
        Z = FinSet.from_json(obj["states"])
        out = {}
        for z in Z:
            v = obj["out"][token(z)]
            out[z] = Y.by_token(v) if Y is not None else v
        step = {}
        for z in Z:
            e = obj["step"][token(z)]
            s = G.shapes.by_token(e["shape"])
            P = G.pos(s)
            step[z] = ContainerElement(s, FinFn(P, Z, [Z.by_token(e["next"][token(p)]) for p in P]))
        return Machine(G, Z, out, step, Z.by_token(obj["start"]))


def machine(G: Container, states: FinSet, out: dict | Callable, step: dict | Callable, start) -> Machine:
    """Build a machine from plain tables: step maps a state to (shape, {position: state})."""
    get_out = out.__getitem__ if isinstance(out, dict) else out
    get_step = step.__getitem__ if isinstance(step, dict) else step
    elems = {}
    for z in states:
        s, nxt = get_step(z)
        nxt_get = nxt.__getitem__ if isinstance(nxt, dict) else nxt
        P = G.pos(s)
        elems[z] = ContainerElement(s, FinFn(P, states, [nxt_get(p) for p in P], check=False))
    return Machine(G, states, {z: get_out(z) for z in states}, elems, start)


def all_machines(G: Container, states: FinSet, Y: FinSet) -> Iterator[Machine]:
    """Every machine on the given state set, labels and start state included."""
    zs = states.elems
    per_state = []
    for _ in zs:
        opts = []
        for s in G.shapes:
            P = G.pos(s)
            for nxt in itertools.product(zs, repeat=len(P)):
                opts.append(ContainerElement(s, FinFn(P, states, nxt, check=False)))
        per_state.append(opts)
    for outs in itertools.product(Y.elems, repeat=len(zs)):
        out = dict(zip(zs, outs))
        for steps in itertools.product(*per_state):
            step = dict(zip(zs, steps))
            for z0 in zs:
                yield Machine(G, states, out, step, z0)


def observably_equal(m1: Machine, m2: Machine, depth: int) -> bool:
    return m1.observe(depth) == m2.observe(depth)


@dataclass
class TraceEvent:
    step: int
    shape: str
    position: str
    state: str

    def to_json(self) -> dict:
        return {"step": self.step, "shape": self.shape, "position": self.position, "state": self.state}


class CanonicalMCIL:
    """Trees over C interacting with machines of the dual of C."""

    def __init__(self, C: Container):
        self.C = C
        self.G = Dual(C)
        self.T = FreeMonad(C)

    def run_state(self, t, m: Machine, trace: list | None = None):
        """(value, final machine)."""
        i = 0
        while isinstance(t, Node):
            q = m.shape()
            p = q[self.C.shapes.index(t.shape)]
            m = m.successor(t.shape)
            if trace is not None:
                trace.append(TraceEvent(i, token(t.shape), token(p), token(m.current)))
            t = t.child(p)
            i += 1
        return t.value, m

    def run(self, t, m: Machine, trace: list | None = None):
        x, m2 = self.run_state(t, m, trace)
        return x, m2.extract()

    def unit_counterexample(self, xs, machines):
        for x in xs:
            for m in machines:
                if self.run(Leaf(x), m) != (x, m.extract()):
                    return {"leaf": token(x), "machine": m.to_json()}
        return None

    def mult_counterexample(self, nested, machines):
        """run(join tt, m) against running tt on duplicate(m), then the inner tree on the result."""
        for m in machines:
            dm = m.duplicate()
            for tt in nested:
                left = self.run(self.T.join(tt), m)
                inner, m2 = self.run(tt, dm)
                if left != self.run(inner, m2):
                    return {"tree": tree_to_json(self.T.fmap(lambda t: t.token(), tt)), "machine": m.to_json()}
        return None


def canonical_mcil(C: Container) -> CanonicalMCIL:
    return CanonicalMCIL(C)
