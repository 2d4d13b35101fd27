"""Finite sets, tabulated functions, and the set calculus used for enumeration.

Elements are ordinary hashable Python values built from strings, ints, tuples,
`Tag` values and `FinFn` tables.  Every element has a canonical string token
(see `token`) which is what gets written to JSON and golden files.
"""
from __future__ import annotations

import itertools
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Iterator

DEFAULT_SIZE_GUARD = 10**6
_guard = [DEFAULT_SIZE_GUARD]


class SizeGuardError(RuntimeError):
    """A constructed set would exceed the configured size guard."""


class DomainMismatch(ValueError):
    """Two finite structures were combined along non-matching sets."""


def size_guard() -> int:
    return _guard[0]


def set_size_guard(limit: int) -> None:
    _guard[0] = int(limit)


@contextmanager
def guarded(limit: int):
    old = _guard[0]
    _guard[0] = int(limit)
    try:
        yield
    finally:
        _guard[0] = old


def check_size(n: int, what: str = "set") -> None:
    if n > _guard[0]:
        raise SizeGuardError(f"{what} would have {n} elements (guard {_guard[0]})")


@dataclass(frozen=True)
class Tag:
    """A coproduct injection: `Tag("inl", a)` is rendered `inl·a`."""

    tag: str
    value: Any

    def token(self) -> str:
        return f"{self.tag}·{token(self.value)}"


def inl(x: Any) -> Tag:
    return Tag("inl", x)


def inr(x: Any) -> Tag:
    return Tag("inr", x)


def token(x: Any) -> str:
    """Canonical string rendering of an element."""
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, tuple):
        return "(" + ",".join(token(v) for v in x) + ")"
    tok = getattr(x, "token", None)
    if tok is not None:
        return tok()
    raise TypeError(f"no token for {x!r}")


class FinSet:
    """An ordered finite set of distinct hashable elements."""

    __slots__ = ("name", "elems", "_index", "_hash", "_by_token")

    def __init__(self, name: str, elems: Iterable[Hashable]):
        elems = tuple(elems)
        index = {x: i for i, x in enumerate(elems)}
        if len(index) != len(elems):
            raise ValueError(f"FinSet {name!r} has repeated elements")
        self.name = name
        self.elems = elems
        self._index = index
        self._hash = None
        self._by_token = None

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self) -> Iterator:
        return iter(self.elems)

    def __contains__(self, x) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    def __getitem__(self, i: int):
        return self.elems[i]

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise DomainMismatch(f"{x!r} is not an element of {self.name}") from None

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, FinSet) and self.elems == other.elems

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.elems)
        return self._hash

    def __repr__(self) -> str:
        shown = ", ".join(token(x) for x in self.elems[:6])
        more = ", ..." if len(self.elems) > 6 else ""
        return f"FinSet({self.name!r}, {{{shown}{more}}})"

    def by_token(self, tok: str):
        """Look an element up by its token."""
        if self._by_token is None:
            table = {}
            for x in self.elems:
                t = token(x)
                if t in table:
                    raise ValueError(f"token {t!r} is ambiguous in {self.name}")
                table[t] = x
            self._by_token = table
        try:
            return self._by_token[tok]
        except KeyError:
            raise DomainMismatch(f"unknown element {tok!r} of {self.name}") from None

    def to_json(self) -> dict:
        return {"name": self.name, "elems": [token(x) for x in self.elems]}

    @staticmethod
    def from_json(obj: dict) -> "FinSet":
        return FinSet(obj.get("name", "?"), [str(e) for e in obj["elems"]])


def fset(name: str, *elems) -> FinSet:
    return FinSet(name, elems)


def nat(n: int) -> FinSet:
    """The canonical n-element set {0, ..., n-1}."""
    return FinSet(str(n), range(n))


EMPTY = FinSet("0", ())
ONE = FinSet("1", ("*",))


class FinFn:
    """A tabulated total function. Values are stored in domain order.

    Equality compares domain and values; the codomain is a typing label and
    may be omitted (None) for maps built pointwise into huge sets.
    """

    __slots__ = ("dom", "cod", "values", "_hash")

    def __init__(self, dom: FinSet, cod: FinSet | None, values: Iterable, check: bool = True):
        values = tuple(values)
        if len(values) != len(dom):
            raise DomainMismatch(f"table for {dom.name} has {len(values)} entries")
        if check and cod is not None:
            for v in values:
                if v not in cod:
                    raise DomainMismatch(f"{v!r} is not in codomain {cod.name}")
        self.dom = dom
        self.cod = cod
        self.values = values
        self._hash = None

    @staticmethod
    def from_map(dom: FinSet, cod: FinSet | None, f: Callable | dict, check: bool = True) -> "FinFn":
        get = f.__getitem__ if isinstance(f, dict) else f
        return FinFn(dom, cod, (get(x) for x in dom.elems), check=check)

    def __call__(self, x):
        return self.values[self.dom.index(x)]

    def items(self):
        return zip(self.dom.elems, self.values)

    def as_dict(self) -> dict:
        return dict(zip(self.dom.elems, self.values))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FinFn) or self.values != other.values:
            return False
        return self.dom is other.dom or self.dom.elems == other.dom.elems

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((len(self.values), self.values))
        return self._hash

    def __repr__(self) -> str:
        return f"FinFn({self.token()})"

    def token(self) -> str:
        return "{" + ",".join(f"{token(k)}:{token(v)}" for k, v in self.items()) + "}"

    def to_json(self) -> dict:
        return {
            "dom": self.dom.name,
            "cod": self.cod.name if self.cod is not None else None,
            "table": {token(k): token(v) for k, v in self.items()},
        }

    @staticmethod
    def from_json(obj: dict, dom: FinSet, cod: FinSet) -> "FinFn":
        table = obj["table"]
        return FinFn(dom, cod, (cod.by_token(table[token(x)]) for x in dom))


def identity(A: FinSet) -> FinFn:
    return FinFn(A, A, A.elems, check=False)


def compose(g: FinFn, f: FinFn) -> FinFn:
    """g ∘ f."""
    if f.cod is not None and g.dom != f.cod:
        raise DomainMismatch(f"cannot compose: cod {f.cod.name} vs dom {g.dom.name}")
    idx = g.dom._index
    gv = g.values
    try:
        vals = [gv[idx[v]] for v in f.values]
    except KeyError as exc:
        raise DomainMismatch(f"value {exc.args[0]!r} outside {g.dom.name}") from None
    return FinFn(f.dom, g.cod, vals, check=False)


def constant(A: FinSet, B: FinSet | None, b) -> FinFn:
    return FinFn(A, B, (b,) * len(A), check=False)


def product(A: FinSet, B: FinSet, name: str | None = None) -> FinSet:
    check_size(len(A) * len(B), "product")
    return FinSet(name or f"{A.name}×{B.name}", itertools.product(A.elems, B.elems))


def coproduct(A: FinSet, B: FinSet, name: str | None = None) -> FinSet:
    check_size(len(A) + len(B), "coproduct")
    elems = [inl(a) for a in A] + [inr(b) for b in B]
    return FinSet(name or f"{A.name}+{B.name}", elems)


def exponent(A: FinSet, B: FinSet, name: str | None = None) -> FinSet:
    """All functions A → B, in lexicographic order of their value tables."""
    check_size(len(B) ** len(A), "exponent")
    fns = (FinFn(A, B, vals, check=False) for vals in itertools.product(B.elems, repeat=len(A)))
    return FinSet(name or f"{A.name}⇒{B.name}", fns)


def all_functions(A: FinSet, B: FinSet) -> Iterator[FinFn]:
    check_size(len(B) ** len(A), "exponent")
    for vals in itertools.product(B.elems, repeat=len(A)):
        yield FinFn(A, B, vals, check=False)


def dependent_product(index: FinSet, fibre: Callable[[Any], FinSet]) -> Iterator[tuple]:
    """Tuples (v_i)_{i ∈ index} with v_i ∈ fibre(i), lexicographic over index order."""
    fibres = [fibre(i).elems for i in index]
    n = 1
    for f in fibres:
        n *= len(f)
    check_size(n, "dependent product")
    return itertools.product(*fibres)


@dataclass(frozen=True)
class Monoid:
    """A finite monoid given by its carrier, unit and multiplication table."""

    carrier: FinSet
    unit: Any
    op: Callable[[Any, Any], Any] = field(compare=False)
    name: str = "B"

    def __post_init__(self):
        B = self.carrier
        if self.unit not in B:
            raise ValueError("monoid unit is not in the carrier")
        for a in B:
            if self.op(self.unit, a) != a or self.op(a, self.unit) != a:
                raise ValueError(f"{self.unit!r} is not a unit for {a!r}")
            for b in B:
                if self.op(a, b) not in B:
                    raise ValueError("monoid operation leaves the carrier")
                for c in B:
                    if self.op(self.op(a, b), c) != self.op(a, self.op(b, c)):
                        raise ValueError("monoid operation is not associative")


def cyclic_monoid(n: int) -> Monoid:
    """ℤ/n under addition, on carrier {0..n-1}."""
    return Monoid(nat(n), 0, lambda a, b: (a + b) % n, name=f"Z{n}")


def trivial_monoid() -> Monoid:
    return Monoid(FinSet("1", (0,)), 0, lambda a, b: 0, name="1")


def check_action(A: FinSet, M: Monoid, act: Callable[[Any, Any], Any]) -> None:
    """Raise unless act : A × B → A is a right monoid action."""
    for a in A:
        if act(a, M.unit) != a:
            raise ValueError(f"action does not fix {a!r} at the unit")
        for b in M.carrier:
            if act(a, b) not in A:
                raise ValueError("action leaves the carrier")
            for c in M.carrier:
                if act(act(a, b), c) != act(a, M.op(b, c)):
                    raise ValueError(f"action is not compatible at ({a!r},{b!r},{c!r})")
