"""Container monads and comonads, their law checks, and the registered instances."""
from __future__ import annotations

import itertools
from typing import Callable

from ..container import (
    Container,
    ContainerElement,
    ContainerMorphism,
    assoc,
    c_compose,
    c_const,
    c_exceptions,
    c_id,
    c_nelist,
    c_reader,
    c_writer,
    c_zero,
    flatten,
    hcompose,
    identity_morphism,
    lunit,
    lunit_inv,
    mcompose,
    morphism_apply,
    morphism_difference,
    runit,
    runit_inv,
    unflatten,
    whisker_left,
    whisker_right,
)
from ..finset import ONE, FinFn, FinSet, Monoid, check_action, constant, token


def _tok(x):
    return None if x is None else token(x)


class Undefined(Exception):
    """Raised by a partial multiplication outside its domain."""


class LawViolation(ValueError):
    def __init__(self, message: str, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


def _difference(m1, m2, shapes=None):
    """Like morphism_difference, but skipping shapes where either side is undefined."""
    for s in m1.src.shapes if shapes is None else shapes:
        try:
            t1 = m1.shape(s)
            t2 = m2.shape(s)
        except Undefined:
            continue
        if t1 != t2:
            return (token(s), None)
        for q in m1.dst.pos(t1):
            try:
                if m1.pos(s, q) != m2.pos(s, q):
                    return (token(s), token(q))
            except Undefined:
                continue
    return None


class ContainerMonad:
    def __init__(self, C: Container, unit_shape, mult: ContainerMorphism, name: str = "T", partial: bool = False, check: bool = True):
        self.C, self.unit_shape, self.mult, self.name, self.partial = C, unit_shape, mult, name, partial
        if not C.has_shape(unit_shape):
            raise ValueError(f"unit shape {unit_shape!r} is not a shape of {C.name}")
        self.eta = ContainerMorphism(c_id(), C, lambda s: unit_shape, lambda s, p: "*", name="η")
        if check:
            bad = self.law_counterexample()
            if bad is not None:
                raise LawViolation(f"{name} is not a monad: {bad}", bad)

    def __repr__(self) -> str:
        return f"ContainerMonad({self.name})"

    def law_counterexample(self):
        T, mu, eta = self.C, self.mult, self.eta
        ident = identity_morphism(T)
        left = mcompose(mu, mcompose(whisker_right(eta, T), lunit_inv(T)))
        bad = _difference(left, ident)
        if bad is not None:
            return {"law": "left unit", "at": bad}
        right = mcompose(mu, mcompose(whisker_left(T, eta), runit_inv(T)))
        bad = _difference(right, ident)
        if bad is not None:
            return {"law": "right unit", "at": bad}
        lhs = mcompose(mu, whisker_right(mu, T))
        rhs = mcompose(mu, mcompose(whisker_left(T, mu), assoc(T, T, T)))
        bad = _difference(lhs, rhs, self._triple_shapes())
        if bad is not None:
            return {"law": "associativity", "at": bad}
        return None

    def _triple_shapes(self):
        """Shapes of (T∘T)∘T whose inner multiplication is defined."""
        TT = c_compose(self.C, self.C)
        S = self.C.shapes.elems
        for sh in self.mult_shapes():
            P = TT.pos(sh)
            for w in itertools.product(S, repeat=len(P)):
                yield (sh, FinFn(P, None, w, check=False))

    def in_domain(self, shape) -> bool:
        try:
            self.mult.shape(shape)
            return True
        except Undefined:
            return False

    def mult_shapes(self):
        """Shapes of T∘T where the multiplication is defined."""
        return [sh for sh in c_compose(self.C, self.C).shapes if self.in_domain(sh)]

    # element level
    def unit(self, x, X: FinSet | None = None) -> ContainerElement:
        P = self.C.pos(self.unit_shape)
        return ContainerElement(self.unit_shape, constant(P, X, x))

    def join(self, e: ContainerElement) -> ContainerElement:
        return morphism_apply(self.mult, flatten(self.C, self.C, e))

    def bind(self, e: ContainerElement, k: Callable) -> ContainerElement:
        inner = FinFn(e.payload.dom, None, [k(x) for x in e.payload.values], check=False)
        return self.join(ContainerElement(e.shape, inner))


class ContainerComonad:
    def __init__(self, C: Container, counit: dict | Callable, comult: ContainerMorphism, name: str = "D", check: bool = True):
        self.C, self.comult, self.name = C, comult, name
        get = counit.__getitem__ if isinstance(counit, dict) else counit
        self.counit_table = {t: get(t) for t in C.shapes}
        self.epsilon = ContainerMorphism(C, c_id(), lambda t: "*", lambda t, q: self.counit_table[t], name="ε")
        if check:
            bad = self.law_counterexample()
            if bad is not None:
                raise LawViolation(f"{name} is not a comonad: {bad}", bad)

    def __repr__(self) -> str:
        return f"ContainerComonad({self.name})"

    def counit(self, t):
        return self.counit_table[t]

    def law_counterexample(self):
        D, d, eps = self.C, self.comult, self.epsilon
        for t in D.shapes:
            if self.counit_table[t] not in D.pos(t):
                return {"law": "counit", "at": (token(t), None)}
        ident = identity_morphism(D)
        left = mcompose(lunit(D), mcompose(whisker_right(eps, D), d))
        bad = morphism_difference(left, ident)
        if bad is not None:
            return {"law": "left counit", "at": tuple(map(_tok, bad))}
        right = mcompose(runit(D), mcompose(whisker_left(D, eps), d))
        bad = morphism_difference(right, ident)
        if bad is not None:
            return {"law": "right counit", "at": tuple(map(_tok, bad))}
        lhs = mcompose(assoc(D, D, D), mcompose(whisker_right(d, D), d))
        rhs = mcompose(whisker_left(D, d), d)
        bad = morphism_difference(lhs, rhs)
        if bad is not None:
            return {"law": "coassociativity", "at": tuple(map(_tok, bad))}
        return None

    # element level
    def extract(self, e: ContainerElement):
        return e.payload(self.counit_table[e.shape])

    def duplicate(self, e: ContainerElement) -> ContainerElement:
        return unflatten(self.C, self.C, morphism_apply(self.comult, e))


def is_monad_morphism(f: ContainerMorphism, T: ContainerMonad, T2: ContainerMonad):
    """Counterexample to f being a monad morphism T → T2, or None."""
    if f.shape(T.unit_shape) != T2.unit_shape:
        return {"law": "unit", "at": token(T.unit_shape)}
    bad = _difference(mcompose(f, T.mult), mcompose(T2.mult, hcompose(f, f)), T.mult_shapes())
    return None if bad is None else {"law": "multiplication", "at": bad}


def is_comonad_morphism(h: ContainerMorphism, D: ContainerComonad, D2: ContainerComonad):
    for t in D.C.shapes:
        if h.pos(t, D2.counit(h.shape(t))) != D.counit(t):
            return {"law": "counit", "at": token(t)}
    bad = morphism_difference(mcompose(hcompose(h, h), D.comult), mcompose(D2.comult, h))
    return None if bad is None else {"law": "comultiplication", "at": tuple(map(_tok, bad))}


# -- registered monads ------------------------------------------------------

def identity_monad() -> ContainerMonad:
    Id = c_id()
    mult = ContainerMorphism(c_compose(Id, Id), Id, lambda sh: "*", lambda sh, p: ("*", "*"), name="μ")
    return ContainerMonad(Id, "*", mult, name="Id")


def const_one_monad() -> ContainerMonad:
    """The constant-1 monad, the computation side of the final law."""
    K = c_const(ONE)
    mult = ContainerMorphism(c_compose(K, K), K, lambda sh: "*", lambda sh, p: p, name="μ")
    return ContainerMonad(K, "*", mult, name="1")


def reader_monad(A: FinSet) -> ContainerMonad:
    C = c_reader(A)
    mult = ContainerMorphism(c_compose(C, C), C, lambda sh: "*", lambda sh, a: (a, a), name="μ")
    return ContainerMonad(C, "*", mult, name=f"Reader({A.name})")


def writer_monad(M: Monoid) -> ContainerMonad:
    C = c_writer(M.carrier)
    mult = ContainerMorphism(
        c_compose(C, C), C, lambda sh: M.op(sh[0], sh[1]("*")), lambda sh, p: ("*", "*"), name="μ"
    )
    return ContainerMonad(C, M.unit, mult, name=f"Writer({M.name})")


def update_container(A: FinSet, M: Monoid) -> Container:
    """A ⇒ (B × X), as the composite of reader and writer."""
    return c_compose(c_reader(A), c_writer(M.carrier))


def update_monad(A: FinSet, M: Monoid, act: Callable) -> ContainerMonad:
    """T X = A ⇒ (B × X); the second step reads the state updated by the first."""
    check_action(A, M, act)
    C = update_container(A, M)

    def shape(sh):
        (_, u), v = sh
        w = [M.op(u(a), v((a, "*"))[1](act(a, u(a)))) for a in A]
        return ("*", FinFn(A, M.carrier, w, check=False))

    def pos(sh, q):
        (_, u), _v = sh
        a = q[0]
        return ((a, "*"), (act(a, u(a)), "*"))

    mult = ContainerMorphism(c_compose(C, C), C, shape, pos, name="μ")
    unit = ("*", constant(A, M.carrier, M.unit))
    return ContainerMonad(C, unit, mult, name=f"Update({A.name},{M.name})")


def exc_reader_container(A: FinSet, E: FinSet) -> Container:
    return c_compose(c_reader(A), c_exceptions(E))


def exc_reader_monad(A: FinSet, E: FinSet) -> ContainerMonad:
    """T X = A ⇒ (X + E): read an environment, then return or raise."""
    C = exc_reader_container(A, E)
    V = c_exceptions(E).shapes

    def shape(sh):
        (_, u), v = sh
        w = [v((a, "*"))[1](a) if u(a) == "val" else u(a) for a in A]
        return ("*", FinFn(A, V, w, check=False))

    mult = ContainerMorphism(c_compose(C, C), C, shape, lambda sh, q: (q, q), name="μ")
    return ContainerMonad(C, ("*", constant(A, V, "val")), mult, name=f"ExcReader({A.name},{E.name})")


def nelist_monad(N: int) -> ContainerMonad:
    """Nonempty lists truncated at length N; concatenations past N are undefined."""
    C = c_nelist(N)

    def shape(sh):
        n, u = sh
        total = sum(u.values)
        if total > N:
            raise Undefined(f"concatenation of length {total} exceeds {N}")
        return total

    def pos(sh, j):
        n, u = sh
        for i, k in enumerate(u.values):
            if j < k:
                return (i, j)
            j -= k
        raise Undefined("position out of range")

    mult = ContainerMorphism(c_compose(C, C), C, shape, pos, name="μ")
    return ContainerMonad(C, 1, mult, name=f"List+{N}", partial=True)


# -- registered comonads ----------------------------------------------------

def identity_comonad() -> ContainerComonad:
    Id = c_id()
    comult = ContainerMorphism(
        Id, c_compose(Id, Id), lambda t: ("*", constant(ONE, ONE, "*")), lambda t, q: "*", name="δ"
    )
    return ContainerComonad(Id, {"*": "*"}, comult, name="Id")


def zero_comonad() -> ContainerComonad:
    Z = c_zero()
    comult = ContainerMorphism(Z, c_compose(Z, Z), lambda t: None, lambda t, q: None, name="δ")
    return ContainerComonad(Z, {}, comult, name="0")


def env_comonad(A: FinSet) -> ContainerComonad:
    """A × Y: the state a is kept and copied."""
    C = c_writer(A)
    comult = ContainerMorphism(
        C, c_compose(C, C), lambda a: (a, FinFn(ONE, A, (a,), check=False)), lambda a, q: "*", name="δ"
    )
    return ContainerComonad(C, lambda a: "*", comult, name=f"{A.name}×-")


def cowriter_comonad(M: Monoid) -> ContainerComonad:
    """B ⇒ Y: extract at the unit, duplicate by multiplying positions."""
    B = M.carrier
    C = c_reader(B)
    comult = ContainerMorphism(
        C, c_compose(C, C), lambda t: ("*", constant(B, ONE, "*")), lambda t, q: M.op(q[0], q[1]), name="δ"
    )
    return ContainerComonad(C, lambda t: M.unit, comult, name=f"{M.name}⇒-")


def update_comonad_container(A: FinSet, M: Monoid) -> Container:
    return c_compose(c_writer(A), c_reader(M.carrier))


def update_comonad(A: FinSet, M: Monoid, act: Callable) -> ContainerComonad:
    """A × (B ⇒ Y) with δ(a, f) = (a, λb. (a↓b, λb'. f(b·b')))."""
    check_action(A, M, act)
    C = update_comonad_container(A, M)
    star = FinFn(ONE, ONE, ("*",), check=False)

    def shape(t):
        a, _ = t
        P = C.pos(t)
        return (t, FinFn(P, None, [(act(a, q[1]), star) for q in P], check=False))

    def pos(t, q):
        (_, b), (_, b2) = q
        return ("*", M.op(b, b2))

    comult = ContainerMorphism(C, c_compose(C, C), shape, pos, name="δ")
    return ContainerComonad(C, lambda t: ("*", M.unit), comult, name=f"Upd*({A.name},{M.name})")


def comonad_enumerate(C: Container, limit: int | None = None) -> list[ContainerComonad]:
    """Every comonad structure on C.

    The counit laws are local to each shape, so candidates for δ(t) are
    generated per shape and only coassociativity is checked globally.
    """
    shapes = list(C.shapes)
    found = []
    for eps_choice in itertools.product(*[C.pos(t).elems for t in shapes]):
        eps = dict(zip(shapes, eps_choice))
        per_shape = []
        for t in shapes:
            Q = C.pos(t)
            opts = []
            for vvals in itertools.product(shapes, repeat=len(Q)):
                v = dict(zip(Q.elems, vvals))
                if v[eps[t]] != t:
                    continue
                comp = [(q1, q2) for q1 in Q for q2 in C.pos(v[q1])]
                fixed, free = {}, []
                ok = True
                for q1, q2 in comp:
                    want = set()
                    if q1 == eps[t]:
                        want.add(q2)
                    if q2 == eps[v[q1]]:
                        want.add(q1)
                    if len(want) > 1:
                        ok = False
                        break
                    if want:
                        fixed[(q1, q2)] = want.pop()
                    else:
                        free.append((q1, q2))
                if not ok:
                    continue
                for fvals in itertools.product(Q.elems, repeat=len(free)):
                    pi = dict(fixed)
                    pi.update(zip(free, fvals))
                    opts.append((FinFn(Q, None, vvals, check=False), pi))
            per_shape.append(opts)
        for combo in itertools.product(*per_shape):
            table = dict(zip(shapes, combo))
            comult = ContainerMorphism(
                C,
                c_compose(C, C),
                lambda t, table=table: (t, table[t][0]),
                lambda t, q, table=table: table[t][1][q],
                name="δ",
            )
            D = ContainerComonad(C, eps, comult, check=False)
            if D.law_counterexample() is None:
                found.append(D)
                if limit is not None and len(found) >= limit:
                    return found
    return found
