"""A finite session-type grammar, its syntactic dual, and its container reading."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Union

from .container import Container, c_coproduct, c_exponent, c_id, c_product, c_writer, c_compose
from .finset import FinSet


@dataclass(frozen=True)
class Return:
    pass


@dataclass(frozen=True)
class InternalChoice:
    left: "SessionType"
    right: "SessionType"


@dataclass(frozen=True)
class ExternalChoice:
    left: "SessionType"
    right: "SessionType"


@dataclass(frozen=True)
class Output:
    A: FinSet
    rest: "SessionType"


@dataclass(frozen=True)
class Input:
    A: FinSet
    rest: "SessionType"


SessionType = Union[Return, InternalChoice, ExternalChoice, Output, Input]


def session_dual(t: SessionType) -> SessionType:
    if isinstance(t, Return):
        return t
    if isinstance(t, InternalChoice):
        return ExternalChoice(session_dual(t.left), session_dual(t.right))
    if isinstance(t, ExternalChoice):
        return InternalChoice(session_dual(t.left), session_dual(t.right))
    if isinstance(t, Output):
        return Input(t.A, session_dual(t.rest))
    if isinstance(t, Input):
        return Output(t.A, session_dual(t.rest))
    raise TypeError(f"not a session type: {t!r}")


def session_to_container(t: SessionType) -> Container:
    """Return ↦ Id, internal choice ↦ +, external choice ↦ ×, A×−, A⇒−."""
    if isinstance(t, Return):
        return c_id()
    if isinstance(t, InternalChoice):
        return c_coproduct(session_to_container(t.left), session_to_container(t.right))
    if isinstance(t, ExternalChoice):
        return c_product(session_to_container(t.left), session_to_container(t.right))
    if isinstance(t, Output):
        return c_compose(c_writer(t.A), session_to_container(t.rest))
    if isinstance(t, Input):
        return c_exponent(t.A, session_to_container(t.rest))
    raise TypeError(f"not a session type: {t!r}")


def depth(t: SessionType) -> int:
    if isinstance(t, Return):
        return 1
    if isinstance(t, (InternalChoice, ExternalChoice)):
        return 1 + max(depth(t.left), depth(t.right))
    return 1 + depth(t.rest)


def uses_input(t: SessionType) -> bool:
    if isinstance(t, Return):
        return False
    if isinstance(t, Input):
        return True
    if isinstance(t, Output):
        return uses_input(t.rest)
    return uses_input(t.left) or uses_input(t.right)


def enumerate_sessions(max_depth: int, alphabets: tuple[FinSet, ...], input_free: bool = False) -> Iterator[SessionType]:
    """All grammar trees of depth at most max_depth over the given message sets."""
    if max_depth < 1:
        return
    yield Return()
    if max_depth == 1:
        return
    smaller = list(enumerate_sessions(max_depth - 1, alphabets, input_free))
    for l, r in itertools.product(smaller, repeat=2):
        yield InternalChoice(l, r)
        yield ExternalChoice(l, r)
    for A in alphabets:
        for rest in smaller:
            yield Output(A, rest)
            if not input_free:
                yield Input(A, rest)


def to_json(t: SessionType) -> dict:
    if isinstance(t, Return):
        return {"kind": "return"}
    if isinstance(t, (InternalChoice, ExternalChoice)):
        kind = "internal" if isinstance(t, InternalChoice) else "external"
        return {"kind": kind, "left": to_json(t.left), "right": to_json(t.right)}
    kind = "output" if isinstance(t, Output) else "input"
    return {"kind": kind, "A": t.A.to_json(), "rest": to_json(t.rest)}


def from_json(obj: dict) -> SessionType:
    kind = obj.get("kind")
    if kind == "return":
        return Return()
    if kind in ("internal", "external"):
        cls = InternalChoice if kind == "internal" else ExternalChoice
        return cls(from_json(obj["left"]), from_json(obj["right"]))
    if kind in ("output", "input"):
        cls = Output if kind == "output" else Input
        return cls(FinSet.from_json(obj["A"]), from_json(obj["rest"]))
    raise ValueError(f"unknown session kind {kind!r}")
