"""Finite containers: shapes with position sets, read as the functor Σ_s X^{P(s)}.

Containers, their elements and the morphisms between them are the concrete
representation of every endofunctor the library works with.  Composite
containers enumerate their shapes lazily, so morphisms into or out of a big
composite can be evaluated pointwise without materializing it.
"""
from __future__ import annotations

import itertools
from typing import Any, Callable, Iterator

from .finset import (
    EMPTY,
    ONE,
    DomainMismatch,
    FinFn,
    FinSet,
    Tag,
    all_functions,
    check_size,
    coproduct,
    nat,
    product,
    token,
)


class Container:
    """A finite container ⟨S, P⟩."""

    def __init__(self, shapes: FinSet, positions: dict | Callable[[Any], FinSet], name: str = "C"):
        self._shapes = shapes
        if isinstance(positions, dict):
            missing = [s for s in shapes if s not in positions]
            if missing:
                raise DomainMismatch(f"no positions for shapes {missing[:3]!r}")
            self._pos_table = dict(positions)
            self._pos_fn = None
        else:
            self._pos_table = {}
            self._pos_fn = positions
        self.name = name

    @property
    def shapes(self) -> FinSet:
        return self._shapes

    def pos(self, s) -> FinSet:
        try:
            return self._pos_table[s]
        except KeyError:
            if self._pos_fn is None:
                raise DomainMismatch(f"{s!r} is not a shape of {self.name}") from None
            P = self._pos_fn(s)
            self._pos_table[s] = P
            return P

    def has_shape(self, s) -> bool:
        return s in self.shapes

    @property
    def positions(self) -> dict:
        return {s: self.pos(s) for s in self.shapes}

    def profile(self) -> list[int]:
        """Sorted position-set sizes, the complete isomorphism invariant."""
        return sorted(len(self.pos(s)) for s in self.shapes)

    def count(self, n: int) -> int:
        """Number of elements over an n-element carrier."""
        return sum(n ** len(self.pos(s)) for s in self.shapes)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Container) or self.shapes != other.shapes:
            return False
        return all(self.pos(s) == other.pos(s) for s in self.shapes)

    def __hash__(self) -> int:
        return hash(self.shapes)

    def __repr__(self) -> str:
        return f"Container({self.name}, |S|={len(self.shapes)})"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "shapes": self.shapes.to_json(),
            "positions": {token(s): self.pos(s).to_json() for s in self.shapes},
        }

    @staticmethod
    def from_json(obj: dict) -> "Container":
        shapes = FinSet.from_json(obj["shapes"])
        pos = obj["positions"]
        table = {}
        for s in shapes:
            if s not in pos:
                raise DomainMismatch(f"no positions for shape {s!r}")
            table[s] = FinSet.from_json(pos[s])
        return Container(shapes, table, name=obj.get("name", shapes.name))


class Composite(Container):
    """C0 ∘ C1: shapes (s0, u : P0(s0) → S1), positions (p, p1) with p1 ∈ P1(u p)."""

    def __init__(self, C0: Container, C1: Container):
        self.C0, self.C1 = C0, C1
        super().__init__(None, self._positions_of, name=f"{C0.name}∘{C1.name}")  # type: ignore[arg-type]

    def _positions_of(self, shape) -> FinSet:
        s0, u = shape
        P1 = self.C1.pos
        return FinSet("P", [(p, p1) for p in self.C0.pos(s0) for p1 in P1(u(p))])

    @property
    def shapes(self) -> FinSet:
        if self._shapes is None:
            S1 = self.C1.shapes
            n = sum(len(S1) ** len(self.C0.pos(s0)) for s0 in self.C0.shapes)
            check_size(n, "composite shapes")
            elems = [(s0, u) for s0 in self.C0.shapes for u in all_functions(self.C0.pos(s0), S1)]
            self._shapes = FinSet(self.name, elems)
        return self._shapes

    def has_shape(self, s) -> bool:
        try:
            s0, u = s
        except (TypeError, ValueError):
            return False
        return self.C0.has_shape(s0) and all(self.C1.has_shape(v) for v in u.values)


class ContainerElement:
    """An element (s, v) of C X, where v : P(s) → X."""

    __slots__ = ("shape", "payload", "_hash")

    def __init__(self, shape, payload: FinFn):
        self.shape = shape
        self.payload = payload
        self._hash = None

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, ContainerElement) and self.shape == other.shape and self.payload == other.payload

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, self.payload))
        return self._hash

    def __repr__(self) -> str:
        return f"ContainerElement({self.token()})"

    def __call__(self, p):
        return self.payload(p)

    def token(self) -> str:
        return token(self.shape) + self.payload.token()


# -- constructors -----------------------------------------------------------

def c_id() -> Container:
    return Container(ONE, {"*": ONE}, name="Id")


def c_const(A: FinSet) -> Container:
    return Container(A, {a: EMPTY for a in A}, name=f"K{A.name}")


def c_zero() -> Container:
    return c_const(EMPTY)


def c_reader(A: FinSet) -> Container:
    return Container(ONE, {"*": A}, name=f"{A.name}⇒-")


def c_writer(A: FinSet) -> Container:
    return Container(A, {a: ONE for a in A}, name=f"{A.name}×-")


def c_product(C0: Container, C1: Container) -> Container:
    shapes = product(C0.shapes, C1.shapes)
    return Container(shapes, lambda s: coproduct(C0.pos(s[0]), C1.pos(s[1])), name=f"({C0.name}×{C1.name})")


def c_coproduct(C0: Container, C1: Container) -> Container:
    shapes = coproduct(C0.shapes, C1.shapes)

    def pos(s: Tag) -> FinSet:
        return (C0 if s.tag == "inl" else C1).pos(s.value)

    return Container(shapes, pos, name=f"({C0.name}+{C1.name})")


def c_compose(C0: Container, C1: Container) -> Composite:
    return Composite(C0, C1)


def c_exponent(A: FinSet, C: Container) -> Container:
    """A ⇒ C X: shapes u : A → S, positions (a, p) with p ∈ P(u a)."""
    shapes = FinSet(f"{A.name}⇒S", all_functions(A, C.shapes))
    return Container(
        shapes,
        lambda u: FinSet("P", [(a, p) for a in A for p in C.pos(u(a))]),
        name=f"{A.name}⇒{C.name}",
    )


def c_maybe() -> Container:
    return Container(FinSet("M", ("just", "nothing")), {"just": ONE, "nothing": EMPTY}, name="Maybe")


def c_nelist(N: int) -> Container:
    """Nonempty lists of length at most N: shapes 1..N with P(n) = {0..n-1}."""
    if N < 1:
        raise ValueError("nelist bound must be at least 1")
    return Container(FinSet(f"L{N}", range(1, N + 1)), {n: nat(n) for n in range(1, N + 1)}, name=f"List+{N}")


def c_exceptions(E: FinSet) -> Container:
    """X + E as a container: one shape "val" with a position, one empty shape per error."""
    shapes = FinSet("V+E", ("val",) + tuple(E.elems))
    if len(shapes) != len(E) + 1:
        raise ValueError('error names must differ from "val"')
    return Container(shapes, lambda s: ONE if s == "val" else EMPTY, name=f"-+{E.name}")


# -- elements ---------------------------------------------------------------

def interpret(C: Container, X: FinSet) -> FinSet:
    check_size(C.count(len(X)), f"{C.name}({X.name})")
    elems = []
    for s in C.shapes:
        for v in all_functions(C.pos(s), X):
            elems.append(ContainerElement(s, v))
    return FinSet(f"{C.name}({X.name})", elems)


def element(C: Container, s, payload: dict | Callable, X: FinSet | None = None) -> ContainerElement:
    return ContainerElement(s, FinFn.from_map(C.pos(s), X, payload, check=X is not None))


def fmap(f: FinFn | Callable, e: ContainerElement) -> ContainerElement:
    v = e.payload
    if isinstance(f, FinFn):
        cod = f.cod
        idx, fv = f.dom._index, f.values
        try:
            vals = [fv[idx[x]] for x in v.values]
        except KeyError as exc:
            raise DomainMismatch(f"payload value {exc.args[0]!r} outside {f.dom.name}") from None
    else:
        cod = None
        vals = [f(x) for x in v.values]
    return ContainerElement(e.shape, FinFn(v.dom, cod, vals, check=False))


def flatten(C0: Container, C1: Container, e: ContainerElement) -> ContainerElement:
    """C0(C1 X) → (C0∘C1) X."""
    P0 = C0.pos(e.shape)
    u = FinFn(P0, None, [e.payload(p).shape for p in P0], check=False)
    shape = (e.shape, u)
    vals = [e.payload(p).payload(p1) for p in P0 for p1 in C1.pos(u(p))]
    return ContainerElement(shape, FinFn(_composite_pos(C0, C1, shape), None, vals, check=False))


def unflatten(C0: Container, C1: Container, e: ContainerElement) -> ContainerElement:
    """(C0∘C1) X → C0(C1 X)."""
    s0, u = e.shape
    P0 = C0.pos(s0)
    inner = []
    for p in P0:
        P1 = C1.pos(u(p))
        inner.append(ContainerElement(u(p), FinFn(P1, None, [e.payload((p, p1)) for p1 in P1], check=False)))
    return ContainerElement(s0, FinFn(P0, None, inner, check=False))


def _composite_pos(C0: Container, C1: Container, shape) -> FinSet:
    s0, u = shape
    return FinSet("P", [(p, p1) for p in C0.pos(s0) for p1 in C1.pos(u(p))])


def composite_shape(C0: Container, s0, inner: dict | Callable) -> tuple:
    """Build the composite shape (s0, u) from an inner-shape assignment."""
    return (s0, FinFn.from_map(C0.pos(s0), None, inner, check=False))


# -- morphisms --------------------------------------------------------------

class ContainerMorphism:
    """A container morphism src → dst.

    `shape(s)` is the image shape and `pos(s, q)` sends a position q of the
    image shape back to a position of s.  Both are evaluated pointwise and
    memoized, so morphisms between large containers stay cheap.
    """

    def __init__(self, src: Container, dst: Container, shape: Callable | dict, pos: Callable | dict, name: str = "m"):
        self.src, self.dst, self.name = src, dst, name
        if isinstance(shape, dict):
            self._shape_memo = dict(shape)
            self._shape_fn = None
        else:
            self._shape_memo = {}
            self._shape_fn = shape
        if isinstance(pos, dict):
            self._pos_memo = {s: (t if isinstance(t, dict) else t.as_dict()) for s, t in pos.items()}
            self._pos_fn = None
        else:
            self._pos_memo = {}
            self._pos_fn = pos

    def shape(self, s):
        try:
            return self._shape_memo[s]
        except KeyError:
            if self._shape_fn is None:
                raise DomainMismatch(f"{s!r} is not a shape of {self.src.name}") from None
            t = self._shape_fn(s)
            self._shape_memo[s] = t
            return t

    def pos(self, s, q):
        table = self._pos_memo.get(s)
        if table is None:
            if self._pos_fn is None:
                raise DomainMismatch(f"{s!r} is not a shape of {self.src.name}")
            table = {}
            self._pos_memo[s] = table
        try:
            return table[q]
        except KeyError:
            if self._pos_fn is None:
                raise DomainMismatch(f"{q!r} is not a position over {s!r}") from None
            p = self._pos_fn(s, q)
            table[q] = p
            return p

    @property
    def shape_map(self) -> FinFn:
        return FinFn.from_map(self.src.shapes, None, self.shape, check=False)

    @property
    def pos_map(self) -> dict:
        out = {}
        for s in self.src.shapes:
            Q = self.dst.pos(self.shape(s))
            out[s] = FinFn.from_map(Q, self.src.pos(s), lambda q, s=s: self.pos(s, q))
        return out

    def __repr__(self) -> str:
        return f"ContainerMorphism({self.name}: {self.src.name} → {self.dst.name})"


def morphism(src: Container, dst: Container, shape: Callable, pos: Callable, name: str = "m") -> ContainerMorphism:
    return ContainerMorphism(src, dst, shape, pos, name=name)


def identity_morphism(C: Container) -> ContainerMorphism:
    return ContainerMorphism(C, C, lambda s: s, lambda s, q: q, name=f"id_{C.name}")


def mcompose(n: ContainerMorphism, m: ContainerMorphism) -> ContainerMorphism:
    """n ∘ m."""
    return ContainerMorphism(
        m.src,
        n.dst,
        lambda s: n.shape(m.shape(s)),
        lambda s, q: m.pos(s, n.pos(m.shape(s), q)),
        name=f"{n.name}∘{m.name}",
    )


def morphism_apply(m: ContainerMorphism, e: ContainerElement) -> ContainerElement:
    s = e.shape
    t = m.shape(s)
    Q = m.dst.pos(t)
    vals = [e.payload(m.pos(s, q)) for q in Q]
    return ContainerElement(t, FinFn(Q, e.payload.cod, vals, check=False))


def morphism_equal(m1: ContainerMorphism, m2: ContainerMorphism, shapes=None) -> bool:
    return morphism_difference(m1, m2, shapes) is None


def morphism_difference(m1: ContainerMorphism, m2: ContainerMorphism, shapes=None):
    """First source shape (and position) where the two morphisms disagree, or None."""
    for s in m1.src.shapes if shapes is None else shapes:
        t = m1.shape(s)
        if t != m2.shape(s):
            return (s, None)
        for q in m1.dst.pos(t):
            if m1.pos(s, q) != m2.pos(s, q):
                return (s, q)
    return None


def tabulate(m: ContainerMorphism) -> ContainerMorphism:
    """A table-backed copy (forces every component)."""
    shape = {s: m.shape(s) for s in m.src.shapes}
    pos = {s: {q: m.pos(s, q) for q in m.dst.pos(shape[s])} for s in m.src.shapes}
    return ContainerMorphism(m.src, m.dst, shape, pos, name=m.name)


def whisker_right(m: ContainerMorphism, C: Container) -> ContainerMorphism:
    """m·C : F∘C → G∘C."""
    F, G = m.src, m.dst

    def shape(sh):
        s, u = sh
        t = m.shape(s)
        return (t, FinFn.from_map(G.pos(t), None, lambda q: u(m.pos(s, q)), check=False))

    def pos(sh, qq):
        q, pc = qq
        return (m.pos(sh[0], q), pc)

    return ContainerMorphism(c_compose(F, C), c_compose(G, C), shape, pos, name=f"{m.name}·{C.name}")


def whisker_left(C: Container, m: ContainerMorphism) -> ContainerMorphism:
    """C·m : C∘F → C∘G."""
    F, G = m.src, m.dst

    def shape(sh):
        s, u = sh
        return (s, FinFn(u.dom, None, [m.shape(v) for v in u.values], check=False))

    def pos(sh, qq):
        p, q = qq
        return (p, m.pos(sh[1](p), q))

    return ContainerMorphism(c_compose(C, F), c_compose(C, G), shape, pos, name=f"{C.name}·{m.name}")


def hcompose(a: ContainerMorphism, b: ContainerMorphism) -> ContainerMorphism:
    """a·b : F∘G → F'∘G' for a : F → F', b : G → G'."""
    return mcompose(whisker_right(a, b.dst), whisker_left(a.src, b))


def assoc(C0: Container, C1: Container, C2: Container) -> ContainerMorphism:
    """(C0∘C1)∘C2 → C0∘(C1∘C2)."""

    def shape(sh):
        (s0, u1), u2 = sh
        P0 = C0.pos(s0)
        inner = []
        for p0 in P0:
            s1 = u1(p0)
            P1 = C1.pos(s1)
            inner.append((s1, FinFn(P1, None, [u2((p0, p1)) for p1 in P1], check=False)))
        return (s0, FinFn(P0, None, inner, check=False))

    def pos(sh, q):
        p0, (p1, p2) = q
        return ((p0, p1), p2)

    src = c_compose(c_compose(C0, C1), C2)
    dst = c_compose(C0, c_compose(C1, C2))
    return ContainerMorphism(src, dst, shape, pos, name="assoc")


def assoc_inv(C0: Container, C1: Container, C2: Container) -> ContainerMorphism:
    """C0∘(C1∘C2) → (C0∘C1)∘C2."""

    def shape(sh):
        s0, v = sh
        P0 = C0.pos(s0)
        u1 = FinFn(P0, None, [v(p0)[0] for p0 in P0], check=False)
        P01 = FinSet("P", [(p0, p1) for p0 in P0 for p1 in C1.pos(u1(p0))])
        u2 = FinFn(P01, None, [v(p0)[1](p1) for p0, p1 in P01], check=False)
        return ((s0, u1), u2)

    def pos(sh, q):
        (p0, p1), p2 = q
        return (p0, (p1, p2))

    src = c_compose(C0, c_compose(C1, C2))
    dst = c_compose(c_compose(C0, C1), C2)
    return ContainerMorphism(src, dst, shape, pos, name="assoc⁻¹")


def lunit(C: Container) -> ContainerMorphism:
    """Id∘C → C."""
    return ContainerMorphism(c_compose(c_id(), C), C, lambda sh: sh[1]("*"), lambda sh, p: ("*", p), name="λ")


def lunit_inv(C: Container) -> ContainerMorphism:
    """C → Id∘C."""
    return ContainerMorphism(
        C, c_compose(c_id(), C), lambda s: ("*", FinFn(ONE, None, (s,), check=False)), lambda s, q: q[1], name="λ⁻¹"
    )


def runit(C: Container) -> ContainerMorphism:
    """C∘Id → C."""
    return ContainerMorphism(c_compose(C, c_id()), C, lambda sh: sh[0], lambda sh, p: (p, "*"), name="ρ")


def runit_inv(C: Container) -> ContainerMorphism:
    """C → C∘Id."""
    return ContainerMorphism(
        C,
        c_compose(C, c_id()),
        lambda s: (s, FinFn(C.pos(s), None, ("*",) * len(C.pos(s)), check=False)),
        lambda s, q: q[0],
        name="ρ⁻¹",
    )


def nat_trans_count(F: Container, G: Container) -> int:
    total = 1
    for s in F.shapes:
        total *= sum(len(F.pos(s)) ** len(G.pos(t)) for t in G.shapes)
    return total


def nat_trans_enumerate(F: Container, G: Container) -> list[ContainerMorphism]:
    """Every container morphism F → G, in canonical order."""
    check_size(nat_trans_count(F, G), "morphism enumeration")
    per_shape = []
    for s in F.shapes:
        P = F.pos(s)
        opts = []
        for t in G.shapes:
            Q = G.pos(t)
            for vals in itertools.product(P.elems, repeat=len(Q)):
                opts.append((t, dict(zip(Q.elems, vals))))
        per_shape.append(opts)
    out = []
    for choice in itertools.product(*per_shape):
        shape = {s: c[0] for s, c in zip(F.shapes, choice)}
        pos = {s: c[1] for s, c in zip(F.shapes, choice)}
        out.append(ContainerMorphism(F, G, shape, pos, name="α"))
    return out


def find_iso(C1: Container, C2: Container) -> tuple[ContainerMorphism, ContainerMorphism] | None:
    """A container isomorphism C1 ≅ C2 with its inverse, or None.

    Finite containers are isomorphic exactly when their multisets of
    position-set sizes agree; shapes are then matched in order of size.
    """
    if C1.profile() != C2.profile():
        return None
    key1 = sorted(C1.shapes, key=lambda s: len(C1.pos(s)))
    key2 = sorted(C2.shapes, key=lambda s: len(C2.pos(s)))
    fwd_shape = dict(zip(key1, key2))
    bwd_shape = dict(zip(key2, key1))
    fwd_pos, bwd_pos = {}, {}
    for s1, s2 in fwd_shape.items():
        P1, P2 = C1.pos(s1), C2.pos(s2)
        fwd_pos[s1] = dict(zip(P2.elems, P1.elems))
        bwd_pos[s2] = dict(zip(P1.elems, P2.elems))
    fwd = ContainerMorphism(C1, C2, fwd_shape, fwd_pos, name="iso")
    bwd = ContainerMorphism(C2, C1, bwd_shape, bwd_pos, name="iso⁻¹")
    return fwd, bwd


def is_iso_pair(f: ContainerMorphism, g: ContainerMorphism) -> bool:
    return morphism_equal(mcompose(g, f), identity_morphism(f.src)) and morphism_equal(
        mcompose(f, g), identity_morphism(f.dst)
    )



def small_containers(max_shapes: int, max_positions: int, min_shapes: int = 1) -> Iterator[Container]:
    """One container per isomorphism class: a multiset of position-set sizes."""
    for n in range(min_shapes, max_shapes + 1):
        for sizes in itertools.combinations_with_replacement(range(max_positions + 1), n):
            shapes = FinSet("S", [f"s{i}" for i in range(n)])
            table = {f"s{i}": nat(k) for i, k in enumerate(sizes)}
            yield Container(shapes, table, name="[" + ",".join(map(str, sizes)) + "]")
