"""Bundled run scenarios and the loader that executes them.

A scenario document holds a signature, a tree over it, and exactly one of
``machine`` (a machine of the dual), ``runner`` or ``residual_runner``.
"""
from __future__ import annotations

import json
from importlib import resources

from .catalogue import signature
from .container import c_coproduct, c_const, c_reader
from .dual import Dual
from .finset import DomainMismatch, FinSet, inl, inr, token
from .monadic.free import CanonicalMCIL, Leaf, Machine, machine, node, tree_from_json, tree_to_json
from .residual import (
    Exceptions,
    ResidualRunner,
    residual_run,
    residual_runner_from_json,
    residual_runner_to_json,
    residual_value_to_json,
)
from .runners import Runner, run, update_lens_runner

BUNDLED = ("reader", "update", "exceptions")


def build_reader() -> dict:
    sig = {"catalogue": "reader", "A": ["a", "b"]}
    C = signature(sig)
    G = Dual(C)
    Z = FinSet("Z", ["z0", "z1"])
    m = machine(G, Z, {"z0": "y0", "z1": "y1"},
                {"z0": (("b",), {"*": "z1"}), "z1": (("a",), {"*": "z0"})}, "z0")
    t = node(C, "*", {"a": Leaf("x_a"), "b": Leaf("x_b")})
    return {"name": "reader", "signature": sig, "tree": tree_to_json(t), "machine": m.to_json()}


def build_update() -> dict:
    from .catalogue import _params

    sig = {"catalogue": "update", "A": ["a", "b"], "monoid": {"cyclic": 2}, "action": "shift"}
    A, M, act = _params(sig)
    C = signature(sig)
    Y = FinSet("Y", [(a, n) for a in A for n in (0, 1)])
    r = update_lens_runner(Y, lambda y: y[0], lambda y, b: (act(y[0], b), (y[1] + b) % 2), A, M, act)
    shapes = C.shapes.elems
    flip, keep = shapes[-1], shapes[0]  # every state toggled, nothing written
    t = node(C, flip, lambda p: node(C, keep if p[0] == "a" else flip, lambda q: Leaf(f"x{token(p[0])}{token(q[0])}")))
    out = r.to_json()
    out["start"] = token(("a", 0))
    return {"name": "update", "signature": sig, "tree": tree_to_json(t), "runner": out}


def build_exceptions() -> dict:
    E = FinSet("E", ["e1", "e2"])
    A = FinSet("A", ["a", "b"])
    sig = {"catalogue": "coproduct", "left": {"catalogue": "reader", "A": ["a", "b"]},
           "right": {"catalogue": "const", "A": ["e1", "e2"]}}
    C = c_coproduct(c_reader(A), c_const(E))
    R = Exceptions(E)
    theta = {}
    for y in A:
        theta[(inl("*"), y)] = R.unit((y, y))
        for e in E:
            theta[(inr(e), y)] = R.raise_(e)
    r = ResidualRunner(C, A, R, theta)
    t = node(C, inl("*"), {"a": Leaf("ok"), "b": node(C, inr("e1"), {})})
    out = residual_runner_to_json(r)
    out["start"] = "b"
    return {"name": "exceptions", "signature": sig, "tree": tree_to_json(t), "residual_runner": out}


BUILDERS = {"reader": build_reader, "update": build_update, "exceptions": build_exceptions}


def bundled(name: str) -> dict:
    if name not in BUNDLED:
        raise DomainMismatch(f"no bundled scenario {name!r}")
    text = resources.files("interlaw").joinpath("scenarios", f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def dumps(obj) -> str:
    """The one serialisation used for every file the tools write."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def run_scenario(doc: dict) -> dict:
    """Execute a scenario document; the result is plain JSON."""
    for key in ("signature", "tree"):
        if key not in doc:
            raise DomainMismatch(f"scenario is missing {key!r}")
    C = signature(doc["signature"])
    t = tree_from_json(C, doc["tree"])
    trace: list = []
    kinds = [k for k in ("machine", "runner", "residual_runner") if k in doc]
    if len(kinds) != 1:
        raise DomainMismatch("scenario needs exactly one of machine, runner, residual_runner")
    kind = kinds[0]
    if kind == "machine":
        m = Machine.from_json(Dual(C), doc["machine"])
        x, y = CanonicalMCIL(C).run(t, m, trace)
        result = {"value": token(x), "state": token(y)}
    elif kind == "runner":
        r = Runner.from_json(C, doc["runner"])
        if r.start is None:
            raise DomainMismatch("runner has no start state")
        x, y = run(r, t, r.start, trace)
        result = {"value": token(x), "state": token(y)}
    else:
        obj = doc["residual_runner"]
        r = residual_runner_from_json(C, obj)
        if "start" not in obj:
            raise DomainMismatch("residual runner has no start state")
        out = residual_run(r, t, r.Y.by_token(obj["start"]), trace)
        result = residual_value_to_json(r.R, out)
    return {
        "scenario": doc.get("name", "?"),
        "kind": kind,
        "result": result,
        "trace": [e.to_json() for e in trace],
    }
