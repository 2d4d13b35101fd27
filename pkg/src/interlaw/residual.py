"""Residual interaction: laws whose results land in a monad R that absorbs
what the machine does not service."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator

from .container import Container, ContainerElement, fmap
from .finset import DomainMismatch, FinFn, FinSet, all_functions, product, token
from .interaction import InteractionLaw
from .monadic.free import Leaf, Node, TraceEvent
from .monadic.monads import ContainerComonad, ContainerMonad
from .report import Report


class ResidualMonad:
    """A registered monad R with unit, bind and a finite enumeration of R X."""

    name = "R"

    def unit(self, x):
        raise NotImplementedError

    def bind(self, r, k: Callable):
        raise NotImplementedError

    def values(self, X) -> list:
        raise NotImplementedError

    def fmap(self, f: Callable, r):
        return self.bind(r, lambda x: self.unit(f(x)))

    def to_json(self, r):
        return token(r)


class Identity(ResidualMonad):
    name = "Identity"

    def unit(self, x):
        return x

    def bind(self, r, k):
        return k(r)

    def values(self, X):
        return list(X)


class Maybe(ResidualMonad):
    name = "Maybe"
    NOTHING = ("nothing",)

    def unit(self, x):
        return ("just", x)

    def bind(self, r, k):
        return self.NOTHING if r == self.NOTHING else k(r[1])

    def values(self, X):
        return [self.NOTHING] + [("just", x) for x in X]


class Exceptions(ResidualMonad):
    """R X = X + E, written ("val", x) and ("exc", e)."""

    def __init__(self, E: FinSet):
        self.E = E
        self.name = f"Exceptions({E.name})"

    def unit(self, x):
        return ("val", x)

    def raise_(self, e):
        return ("exc", e)

    def bind(self, r, k):
        return k(r[1]) if r[0] == "val" else r

    def values(self, X):
        return [("val", x) for x in X] + [("exc", e) for e in self.E]


class FinNondet(ResidualMonad):
    """Finite multisets as tuples sorted by token."""

    name = "FinNondet"

    def __init__(self, max_size: int = 2):
        self.max_size = max_size

    @staticmethod
    def norm(xs) -> tuple:
        return tuple(sorted(xs, key=token))

    def unit(self, x):
        return (x,)

    def bind(self, r, k):
        out = []
        for x in r:
            out.extend(k(x))
        return self.norm(out)

    def values(self, X):
        out = []
        for n in range(self.max_size + 1):
            for combo in itertools.combinations_with_replacement(list(X), n):
                out.append(self.norm(combo))
        return out


def monad_law_report(R: ResidualMonad, carriers: list, assoc_carriers: list | None = None) -> Report:
    """Unit laws on the given carriers, associativity on all Kleisli maps of the smaller ones."""
    checked = 0
    for X in carriers:
        vals = R.values(X)
        for x in X:
            for k in _kleisli_maps(R, X):
                checked += 1
                if R.bind(R.unit(x), k) != k(x):
                    return Report("residual-monad", False, checked, {"law": "left unit", "R": R.name})
        for r in vals:
            checked += 1
            if R.bind(r, R.unit) != r:
                return Report("residual-monad", False, checked, {"law": "right unit", "R": R.name})
    for X in assoc_carriers if assoc_carriers is not None else carriers:
        maps = list(_kleisli_maps(R, X))
        for r in R.values(X):
            for k in maps:
                left0 = R.bind(r, k)
                for l in maps:
                    checked += 1
                    if R.bind(left0, l) != R.bind(r, lambda x: R.bind(k(x), l)):
                        return Report("residual-monad", False, checked, {"law": "associativity", "R": R.name})
    return Report("residual-monad", True, checked)


def _kleisli_maps(R: ResidualMonad, X) -> Iterator[Callable]:
    xs = list(X)
    vals = R.values(X)
    for choice in itertools.product(vals, repeat=len(xs)):
        table = dict(zip(xs, choice))
        yield table.__getitem__


# -- residual laws ------------------------------------------------------------------

@dataclass
class ResidualLaw:
    F: Container
    G: Container
    R: ResidualMonad
    table: dict  # (s, t) -> R-value over position pairs (p, q)
    name: str = "φ"

    def __eq__(self, other) -> bool:
        return isinstance(other, ResidualLaw) and self.F == other.F and self.G == other.G and self.table == other.table

    def to_json(self) -> dict:
        return {
            "F": self.F.to_json(),
            "G": self.G.to_json(),
            "R": self.R.name,
            "table": {f"{token(s)},{token(t)}": self.R.to_json(v) for (s, t), v in self.table.items()},
        }


def residual_apply(law: ResidualLaw, eF: ContainerElement, eG: ContainerElement):
    return law.R.fmap(lambda pq: (eF.payload(pq[0]), eG.payload(pq[1])), law.table[(eF.shape, eG.shape)])


def embed(il: InteractionLaw, R: ResidualMonad) -> ResidualLaw:
    """A plain law as a residual one: every entry returned purely."""
    return ResidualLaw(il.F, il.G, R, {k: R.unit(v) for k, v in il.table.items()}, name=il.name)


def residual_identity(R: ResidualMonad) -> ResidualLaw:
    from .interaction import il_identity

    return embed(il_identity(), R)


def residual_tensor(l1: ResidualLaw, l2: ResidualLaw) -> ResidualLaw:
    """Outer layer by l1, then the inner layer by l2, sequenced with bind."""
    from .container import c_compose

    R = l1.R
    FJ, GK = c_compose(l1.F, l2.F), c_compose(l1.G, l2.G)
    table = {}
    for sh in FJ.shapes:
        s, u = sh
        for th in GK.shapes:
            t, v = th

            def inner(pq, u=u, v=v):
                p, q = pq
                return R.fmap(lambda r: ((p, r[0]), (q, r[1])), l2.table[(u(p), v(q))])

            table[(sh, th)] = R.bind(l1.table[(s, t)], inner)
    return ResidualLaw(FJ, GK, R, table, name=f"{l1.name}⊗{l2.name}")


def residual_enumerate(F: Container, G: Container, R: ResidualMonad) -> Iterator[ResidualLaw]:
    keys = [(s, t) for s in F.shapes for t in G.shapes]
    choices = [R.values(product(F.pos(s), G.pos(t))) for s, t in keys]
    for combo in itertools.product(*choices):
        yield ResidualLaw(F, G, R, dict(zip(keys, combo)))


def residual_count(F: Container, G: Container, R: ResidualMonad) -> int:
    n = 1
    for s in F.shapes:
        for t in G.shapes:
            n *= len(R.values(product(F.pos(s), G.pos(t))))
    return n


def residual_mcil_check(T: ContainerMonad, D: ContainerComonad, law: ResidualLaw) -> Report:
    """Unit: ψ(η x, d) = η^R(x, ε d). Multiplication: ψ(μ tt, d) runs the outer
    layer against δ d and binds the inner run."""
    R, tab = law.R, law.table
    checked = 0
    for t in D.C.shapes:
        checked += 1
        got = R.fmap(lambda pq: pq[1], tab[(T.unit_shape, t)])
        if got != R.unit(D.counit(t)):
            return Report("residual-mcil", False, checked, {"diagram": "unit", "shape": token(t)})
    for sh in T.mult_shapes():
        s, u = sh
        m = T.mult.shape(sh)
        for t in D.C.shapes:
            checked += 1
            left = R.fmap(lambda pq: (T.mult.pos(sh, pq[0]), pq[1]), tab[(m, t)])
            t1, v = D.comult.shape(t)

            def step(pq1, u=u, v=v, t=t):
                p1, q1 = pq1
                return R.fmap(
                    lambda pq2: ((p1, pq2[0]), D.comult.pos(t, (q1, pq2[1]))), tab[(u(p1), v(q1))]
                )

            right = R.bind(tab[(s, t1)], step)
            if left != right:
                return Report("residual-mcil", False, checked, {"diagram": "multiplication",
                                                                "shapes": [token(sh), token(t)],
                                                                "left": token(left), "right": token(right)})
    return Report("residual-mcil", True, checked)


def exceptions_law(T: ContainerMonad, D: ContainerComonad, R: Exceptions) -> ResidualLaw:
    """ψ(f, (a, y)) = case f a of inl x ↦ inl (x, y) | inr e ↦ inr e."""
    table = {}
    for s in T.C.shapes:
        _, u = s
        for a in D.C.shapes:
            r = u(a)
            table[(s, a)] = R.unit(((a, "*"), "*")) if r == "val" else R.raise_(r)
    return ResidualLaw(T.C, D.C, R, table, name="exceptions")


def exceptions_example(A: FinSet, E: FinSet):
    """T X = A ⇒ (X + E), D Y = A × Y, R = exceptions on E."""
    from .monadic.monads import env_comonad, exc_reader_monad

    T, D, R = exc_reader_monad(A, E), env_comonad(A), Exceptions(E)
    return T, D, exceptions_law(T, D, R)


# -- residual runners -------------------------------------------------------------

@dataclass
class ResidualRunner:
    C: Container
    Y: FinSet
    R: ResidualMonad
    theta: dict  # (shape, state) -> R-value over (position, state)


def residual_run(r: ResidualRunner, t, y0, trace: list | None = None, _depth: int = 0):
    """Run a tree; every continuation the residual monad takes is traced in evaluation order."""
    if isinstance(t, Leaf):
        return r.R.unit((t.value, y0))
    if not isinstance(t, Node):
        raise TypeError("not a tree")

    def k(py):
        if trace is not None:
            trace.append(TraceEvent(_depth, token(t.shape), token(py[0]), token(py[1])))
        return residual_run(r, t.child(py[0]), py[1], trace, _depth + 1)

    out = r.R.bind(r.theta[(t.shape, y0)], k)
    if trace is not None and _is_abort(r.R, r.theta[(t.shape, y0)]):
        trace.append(TraceEvent(_depth, token(t.shape), "-", "abort"))
    return out


def _is_abort(R: ResidualMonad, v) -> bool:
    return (isinstance(R, Exceptions) and v[0] == "exc") or (isinstance(R, Maybe) and v == Maybe.NOTHING) or (
        isinstance(R, FinNondet) and v == ()
    )


def residual_monad_from_json(obj) -> ResidualMonad:
    name = obj["name"] if isinstance(obj, dict) else obj
    if name == "Identity":
        return Identity()
    if name == "Maybe":
        return Maybe()
    if name == "Exceptions":
        return Exceptions(FinSet("E", [str(e) for e in obj["E"]]))
    if name == "FinNondet":
        return FinNondet(int(obj.get("max_size", 2)) if isinstance(obj, dict) else 2)
    raise DomainMismatch(f"unknown residual monad {name!r}")


def residual_value_to_json(R: ResidualMonad, v, enc: Callable = token):
    """Tagged JSON for an R-value whose payloads are pairs."""
    pair = lambda xy: [enc(xy[0]), enc(xy[1])]  # noqa: E731
    if isinstance(R, Identity):
        return pair(v)
    if isinstance(R, Maybe):
        return "nothing" if v == Maybe.NOTHING else {"just": pair(v[1])}
    if isinstance(R, Exceptions):
        return {"val": pair(v[1])} if v[0] == "val" else {"raise": token(v[1])}
    if isinstance(R, FinNondet):
        return {"choices": [pair(xy) for xy in v]}
    raise TypeError(R)


def residual_value_from_json(R: ResidualMonad, obj, dec: Callable):
    pair = lambda xs: dec(xs[0], xs[1])  # noqa: E731
    if isinstance(R, Identity):
        return pair(obj)
    if isinstance(R, Maybe):
        return Maybe.NOTHING if obj == "nothing" else R.unit(pair(obj["just"]))
    if isinstance(R, Exceptions):
        return R.unit(pair(obj["val"])) if "val" in obj else R.raise_(R.E.by_token(obj["raise"]))
    if isinstance(R, FinNondet):
        return R.norm(pair(xs) for xs in obj["choices"])
    raise TypeError(R)


def residual_runner_to_json(r: ResidualRunner) -> dict:
    out = {"R": _residual_name_json(r.R), "state": r.Y.to_json(),
           "theta": {f"{token(s)},{token(y)}": residual_value_to_json(r.R, v) for (s, y), v in r.theta.items()}}
    return out


def _residual_name_json(R: ResidualMonad):
    if isinstance(R, Exceptions):
        return {"name": "Exceptions", "E": [token(e) for e in R.E]}
    if isinstance(R, FinNondet):
        return {"name": "FinNondet", "max_size": R.max_size}
    return {"name": R.name}


def residual_runner_from_json(C: Container, obj: dict, Y: FinSet | None = None) -> ResidualRunner:
    """Decode a residual runner; as with plain runners, pass ``Y`` to recover non-string states."""
    from .interaction import split_pair_key

    R = residual_monad_from_json(obj["R"])
    if Y is None:
        Y = FinSet.from_json(obj["state"])
    elif [token(y) for y in Y] != [str(e) for e in obj["state"]["elems"]]:
        raise DomainMismatch(f"state set does not match {Y.name}")
    theta = {}
    for key, v in obj["theta"].items():
        s, y = split_pair_key(key, C.shapes, Y)
        theta[(s, y)] = residual_value_from_json(R, v, lambda p, y2, s=s: (C.pos(s).by_token(p), Y.by_token(y2)))
    missing = [(s, y) for s in C.shapes for y in Y if (s, y) not in theta]
    if missing:
        raise DomainMismatch(f"residual runner has no entry for {token(missing[0])}")
    return ResidualRunner(C, Y, R, theta)


@dataclass
class ResidualStateMap:
    """ϑ : T → St^{R,Y}, St^{R,Y} X = Y ⇒ R(X × Y), at the generic elements."""

    C: Container
    Y: FinSet
    R: ResidualMonad
    components: dict  # shape -> {state: R-value over (position, state)}

    def apply(self, e: ContainerElement) -> dict:
        return {y: self.R.fmap(lambda py: (e.payload(py[0]), py[1]), self.components[e.shape][y]) for y in self.Y}


def residual_runner_to_state_map(r: ResidualRunner) -> ResidualStateMap:
    return ResidualStateMap(r.C, r.Y, r.R, {s: {y: r.theta[(s, y)] for y in r.Y} for s in r.C.shapes})


def residual_state_map_to_runner(sm: ResidualStateMap) -> ResidualRunner:
    theta = {}
    for s in sm.C.shapes:
        P = sm.C.pos(s)
        h = sm.apply(ContainerElement(s, FinFn(P, P, P.elems, check=False)))
        for y in sm.Y:
            theta[(s, y)] = h[y]
    return ResidualRunner(sm.C, sm.Y, sm.R, theta)


# -- naturality ----------------------------------------------------------------------

def pure_naturality_check(law: ResidualLaw, carriers: list) -> Report:
    """φ ∘ (F f × G g) = R(f × g) ∘ φ for all pure maps between the given carriers."""
    from .container import interpret

    R = law.R
    checked = 0
    for X, X2, Y, Y2 in itertools.product(carriers, repeat=4):
        fs = all_functions(X, X2)
        gs = all_functions(Y, Y2)
        for eF in interpret(law.F, X):
            for eG in interpret(law.G, Y):
                base = residual_apply(law, eF, eG)
                for f in fs:
                    for g in gs:
                        checked += 1
                        left = residual_apply(law, fmap(f, eF), fmap(g, eG))
                        right = R.fmap(lambda xy: (f(xy[0]), g(xy[1])), base)
                        if left != right:
                            return Report("pure-naturality", False, checked, {"F": token(eF), "G": token(eG)})
    return Report("pure-naturality", True, checked)


def sequence(R: ResidualMonad, e: ContainerElement) -> object:
    """F(R X) → R(F X): choose an outcome at every position, in position order."""
    P = e.payload.dom
    acc = R.unit(())
    for p in P:
        acc = R.bind(acc, lambda xs, p=p: R.fmap(lambda x: xs + (x,), e.payload(p)))
    return R.fmap(lambda xs: ContainerElement(e.shape, FinFn(P, None, xs, check=False)), acc)


def kleisli_square(law: ResidualLaw, k: Callable, eF: ContainerElement, eG: ContainerElement):
    """Both sides of naturality along a Kleisli map k : X → R X on the computation side.

    Left: lift k through F, then interact with each outcome.
    Right: interact first, then apply k to the returned value.
    """
    R = law.R
    left = R.bind(sequence(R, fmap(k, eF)), lambda e2: residual_apply(law, e2, eG))
    right = R.bind(residual_apply(law, eF, eG), lambda xy: R.fmap(lambda x2: (x2, xy[1]), k(xy[0])))
    return left, right


def strong_square_counterexample(law: ResidualLaw, k: Callable, X: FinSet, Y: FinSet):
    from .container import interpret

    for eF in interpret(law.F, X):
        for eG in interpret(law.G, Y):
            left, right = kleisli_square(law, k, eF, eG)
            if left != right:
                return {"F": token(eF), "G": token(eG), "left": token(left), "right": token(right),
                        "left_size": len(left), "right_size": len(right)}
    return None
