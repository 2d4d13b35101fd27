"""Brute-force functor semantics over a truncated universe of finite sets.

The universe U_k has the sets {0..n-1} for n ≤ k and every function between
them.  Functors are plain object/morphism tables, so quotient functors (which
are not containers) can be built directly.  Natural families are found by a
propagating search: choosing the component at one element forces its images
under every universe map, and contradictions prune the search early.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .container import Container, fmap, interpret
from .finset import FinFn, FinSet, nat, product

Map = tuple  # (src size, tgt size, values)


class Universe:
    def __init__(self, k: int = 3):
        self.k = k
        self.objects = list(range(k + 1))
        self.sets = {n: nat(n) for n in self.objects}
        self.maps: list[Map] = []
        self.maps_from: dict[int, list[Map]] = {n: [] for n in self.objects}
        for a in self.objects:
            for b in self.objects:
                for vals in itertools.product(range(b), repeat=a):
                    f = (a, b, vals)
                    self.maps.append(f)
                    self.maps_from[a].append(f)

    def identity(self, n: int) -> Map:
        return (n, n, tuple(range(n)))

    @staticmethod
    def compose(g: Map, f: Map) -> Map:
        return (f[0], g[1], tuple(g[2][x] for x in f[2]))

    def as_finfn(self, f: Map) -> FinFn:
        return FinFn(self.sets[f[0]], self.sets[f[1]], f[2], check=False)


class FinFunctor:
    """An endofunctor on a universe, given by tables."""

    def __init__(self, U: Universe, obj: dict[int, FinSet], act: Callable[[Map, Any], Any], name: str = "F", check: bool = True):
        self.U, self.obj, self.name = U, obj, name
        self.tables: dict[Map, dict] = {}
        for f in U.maps:
            self.tables[f] = {e: act(f, e) for e in obj[f[0]]}
        if check:
            self.check_functor()

    def __call__(self, f: Map, e):
        return self.tables[f][e]

    def size(self, n: int) -> int:
        return len(self.obj[n])

    def check_functor(self) -> None:
        U = self.U
        for n in U.objects:
            idn = self.tables[U.identity(n)]
            for e in self.obj[n]:
                if idn[e] != e:
                    raise ValueError(f"{self.name} does not preserve the identity on {n}")
        for f in U.maps:
            tf = self.tables[f]
            for e in self.obj[f[0]]:
                if tf[e] not in self.obj[f[1]]:
                    raise ValueError(f"{self.name} maps outside its object at {f}")
            for g in U.maps_from[f[1]]:
                tg, tgf = self.tables[g], self.tables[U.compose(g, f)]
                for e in self.obj[f[0]]:
                    if tg[tf[e]] != tgf[e]:
                        raise ValueError(f"{self.name} does not preserve composition at {g}∘{f}")


def from_container(C: Container, U: Universe) -> FinFunctor:
    obj = {n: interpret(C, U.sets[n]) for n in U.objects}
    fns = {f: U.as_finfn(f) for f in U.maps}
    return FinFunctor(U, obj, lambda f, e: fmap(fns[f], e), name=C.name)


def constant_functor(U: Universe, A: FinSet, name: str | None = None) -> FinFunctor:
    return FinFunctor(U, {n: A for n in U.objects}, lambda f, e: e, name=name or f"K{A.name}")


def identity_functor(U: Universe) -> FinFunctor:
    return FinFunctor(U, dict(U.sets), lambda f, e: f[2][e], name="Id")


def unordered_pairs(U: Universe) -> FinFunctor:
    """X×X quotiented by the swap, with sorted pairs as representatives."""
    obj = {n: FinSet(f"P{n}", [(a, b) for a in range(n) for b in range(a, n)]) for n in U.objects}

    def act(f, e):
        x, y = f[2][e[0]], f[2][e[1]]
        return (x, y) if x <= y else (y, x)

    return FinFunctor(U, obj, act, name="Pair/swap")


def squares(U: Universe) -> FinFunctor:
    """X×X (ordered pairs)."""
    obj = {n: product(U.sets[n], U.sets[n]) for n in U.objects}
    return FinFunctor(U, obj, lambda f, e: (f[2][e[0]], f[2][e[1]]), name="X×X")


def functor_product(F: FinFunctor, G: FinFunctor) -> FinFunctor:
    obj = {n: product(F.obj[n], G.obj[n]) for n in F.U.objects}
    return FinFunctor(F.U, obj, lambda f, e: (F(f, e[0]), G(f, e[1])), name=f"{F.name}×{G.name}", check=False)


# -- the propagating search -------------------------------------------------

def _solve(objects, maps_from, src_elems, src_act, tgt_elems, tgt_act, injective=False, first=False):
    """Enumerate families (val at every (object, element)) commuting with every map.

    Objects are processed in the given order; a variable's candidates are
    filtered by its images under maps into already-processed objects.
    """
    order = {o: i for i, o in enumerate(objects)}
    earlier = {o: [(mk, t) for mk, t in maps_from(o) if order[t] < order[o]] for o in objects}
    index = {}
    for o in objects:
        idx: dict = {}
        for c in tgt_elems(o):
            sig = tuple(tgt_act(mk, c) for mk, _ in earlier[o])
            idx.setdefault(sig, []).append(c)
        index[o] = idx
    variables = [(o, e) for o in objects for e in src_elems(o)]
    outgoing = {o: maps_from(o) for o in objects}
    val: dict = {}
    used = {o: set() for o in objects}
    trail: list = []

    def assign(o, e, c) -> bool:
        stack = [(o, e, c)]
        while stack:
            o, e, c = stack.pop()
            key = (o, e)
            old = val.get(key, _MISSING)
            if old is not _MISSING:
                if old != c:
                    return False
                continue
            if injective:
                if c in used[o]:
                    return False
                used[o].add(c)
            val[key] = c
            trail.append(key)
            for mk, t in outgoing[o]:
                stack.append((t, src_act(mk, e), tgt_act(mk, c)))
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            key = trail.pop()
            c = val.pop(key)
            if injective:
                used[key[0]].discard(c)

    solutions = []
    n = len(variables)

    def next_free(i):
        while i < n and variables[i] in val:
            i += 1
        return i

    def candidates(i):
        o, e = variables[i]
        need = tuple(val[(t, src_act(mk, e))] for mk, t in earlier[o])
        return iter(index[o].get(need, ()))

    i = next_free(0)
    if i == n:
        return [dict(val)]
    stack = [(i, candidates(i), 0)]
    while stack:
        i, it, mark = stack[-1]
        undo(mark)
        o, e = variables[i]
        for c in it:
            if assign(o, e, c):
                break
            undo(mark)
        else:
            stack.pop()
            continue
        j = next_free(i + 1)
        if j == n:
            solutions.append(dict(val))
            if first:
                return solutions
            continue
        stack.append((j, candidates(j), len(trail)))
    return solutions


_MISSING = object()


class Family:
    """An interned natural family (compared by identity once built)."""

    __slots__ = ("values",)

    def __init__(self, values: tuple):
        self.values = values

    def token(self) -> str:
        return "⟨" + ",".join(f"{x}.{y}" for x, y in self.values) + "⟩"


@dataclass
class NatFamily:
    """Components of a natural family, one dict per object."""

    components: dict = field(default_factory=dict)

    def __call__(self, o, e):
        return self.components[o][e]


def _family(sol: dict, objects) -> NatFamily:
    comps = {o: {} for o in objects}
    for (o, e), c in sol.items():
        comps[o][e] = c
    return NatFamily(comps)


def nat_transformations(F: FinFunctor, H: FinFunctor, injective: bool = False, first: bool = False) -> list[NatFamily]:
    U = F.U
    sols = _solve(
        U.objects,
        lambda n: [(f, f[1]) for f in U.maps_from[n]],
        lambda n: F.obj[n].elems,
        F.__call__,
        lambda n: H.obj[n].elems,
        H.__call__,
        injective=injective,
        first=first,
    )
    return [_family(s, U.objects) for s in sols]


def find_natural_iso(F: FinFunctor, H: FinFunctor) -> NatFamily | None:
    if any(F.size(n) != H.size(n) for n in F.U.objects):
        return None
    found = nat_transformations(F, H, injective=True, first=True)
    return found[0] if found else None


def is_natural(alpha: NatFamily, F: FinFunctor, H: FinFunctor) -> bool:
    for f in F.U.maps:
        a, b = alpha.components[f[0]], alpha.components[f[1]]
        for e in F.obj[f[0]]:
            if b[F(f, e)] != H(f, a[e]):
                return False
    return True


def end_dual(G: FinFunctor) -> FinFunctor:
    """X ↦ natural families G Y → X × Y over the universe."""
    U = G.U
    Ys = [n for n in U.objects]
    variables = [(n, e) for n in Ys for e in G.obj[n]]
    obj, lookup = {}, {}
    for x in U.objects:
        X = U.sets[x]
        sols = _solve(
            Ys,
            lambda n: [(f, f[1]) for f in U.maps_from[n]],
            lambda n: G.obj[n].elems,
            G.__call__,
            lambda n, X=X: product(X, U.sets[n]).elems,
            lambda f, c: (c[0], f[2][c[1]]),
        )
        fams = [Family(tuple(s[v] for v in variables)) for s in sols]
        obj[x] = FinSet(f"⊥{G.name}({x})", fams)
        lookup[x] = {f.values: f for f in fams}

    def act(h, fam):
        return lookup[h[1]][tuple((h[2][c[0]], c[1]) for c in fam.values)]

    return FinFunctor(U, obj, act, name=f"∫⊥{G.name}")


def interaction_families(F: FinFunctor, G: FinFunctor, first: bool = False) -> list[NatFamily]:
    """Binatural families F X × G Y → X × Y over U × U."""
    U = F.U
    objects = sorted(itertools.product(U.objects, U.objects), key=lambda o: (o[0] + o[1], o[0]))

    def maps_from(o):
        a, b = o
        out = [(("L", f), (f[1], b)) for f in U.maps_from[a]]
        out += [(("R", g), (a, g[1])) for g in U.maps_from[b]]
        return out

    def src_act(mk, e):
        side, f = mk
        return (F(f, e[0]), e[1]) if side == "L" else (e[0], G(f, e[1]))

    def tgt_act(mk, c):
        side, f = mk
        return (f[2][c[0]], c[1]) if side == "L" else (c[0], f[2][c[1]])

    sols = _solve(
        objects,
        maps_from,
        lambda o: list(itertools.product(F.obj[o[0]].elems, G.obj[o[1]].elems)),
        src_act,
        lambda o: list(itertools.product(range(o[0]), range(o[1]))),
        tgt_act,
        first=first,
    )
    return [_family(s, objects) for s in sols]


def is_binatural(fam: NatFamily, F: FinFunctor, G: FinFunctor) -> bool:
    """Independent re-check against every pair of universe maps."""
    U = F.U
    for h in U.maps:
        for g in U.maps:
            src = fam.components[(h[0], g[0])]
            dst = fam.components[(h[1], g[1])]
            for (eF, eG), (x, y) in src.items():
                if dst[(F(h, eF), G(g, eG))] != (h[2][x], g[2][y]):
                    return False
    return True


def is_nonzero(G: FinFunctor) -> bool:
    return any(G.size(n) > 0 for n in G.U.objects)


def operation_family(U: Universe, arity: int, F: FinFunctor, op: Callable[[tuple], Any]) -> NatFamily:
    """The family X^arity → F X given by op on argument tuples."""
    comps = {}
    for n in U.objects:
        comps[n] = {args: op(args) for args in itertools.product(range(n), repeat=arity)}
    return NatFamily(comps)


def _operation_is_natural(U: Universe, arity: int, F: FinFunctor, c: NatFamily) -> bool:
    for f in U.maps:
        for args, v in c.components[f[0]].items():
            image = tuple(f[2][a] for a in args)
            if c.components[f[1]][image] != F(f, v):
                return False
    return True


def _search_witness(F: FinFunctor, candidates: Iterable[FinFunctor]) -> dict:
    checked, witness = [], None
    for G in candidates:
        if not is_nonzero(G):
            continue
        fams = interaction_families(F, G, first=True)
        checked.append(G.name)
        if fams:
            witness = G.name
            break
    return {"checked": checked, "witness": witness, "degenerate": witness is None}


def check_nullary_degeneracy(F: FinFunctor, c: NatFamily | None, candidates: Iterable[FinFunctor]) -> dict:
    """Search for a non-zero G interacting with F; with a nullary c none should exist."""
    report = {"operation": c is not None}
    if c is not None:
        report["operation_natural"] = _operation_is_natural(F.U, 0, F, c)
    report.update(_search_witness(F, candidates))
    return report


def check_commutative_degeneracy(F: FinFunctor, c: NatFamily | None, candidates: Iterable[FinFunctor]) -> dict:
    report = {"operation": c is not None}
    if c is not None:
        U = F.U
        report["operation_natural"] = _operation_is_natural(U, 2, F, c)
        report["commutative"] = all(
            comp[(a, b)] == comp[(b, a)] for comp in c.components.values() for (a, b) in comp
        )
    report.update(_search_witness(F, candidates))
    return report


def container_family(U: Universe, max_shapes: int = 3, max_positions: int = 2) -> list[FinFunctor]:
    """Functors of all containers with 1..max_shapes shapes and position counts up to max_positions."""
    out = []
    for k in range(1, max_shapes + 1):
        for profile in itertools.combinations_with_replacement(range(max_positions + 1), k):
            shapes = FinSet("S", [f"s{i}" for i in range(k)])
            C = Container(shapes, {f"s{i}": nat(p) for i, p in enumerate(profile)}, name="C" + "".join(map(str, profile)))
            out.append(from_container(C, U))
    return out
