"""Build signatures and registered instances from small JSON descriptions.

A signature is either a full container document (``{"shapes": ..., "positions": ...}``)
or a catalogue reference such as ``{"catalogue": "reader", "A": ["a", "b"]}``.
"""
from __future__ import annotations

from typing import Callable

from .container import (
    Container,
    c_compose,
    c_const,
    c_coproduct,
    c_exceptions,
    c_id,
    c_maybe,
    c_nelist,
    c_product,
    c_reader,
    c_writer,
    c_zero,
)
from .finset import ONE, DomainMismatch, FinSet, Monoid, cyclic_monoid, nat, trivial_monoid


def finset(spec, name: str = "A") -> FinSet:
    if isinstance(spec, int):
        return nat(spec)
    if isinstance(spec, list):
        return FinSet(name, [str(x) for x in spec])
    if isinstance(spec, dict) and "elems" in spec:
        return FinSet.from_json(spec)
    raise DomainMismatch(f"cannot read a finite set from {spec!r}")


def monoid(spec) -> Monoid:
    if spec in (None, "trivial"):
        return trivial_monoid()
    if isinstance(spec, dict) and "cyclic" in spec:
        return cyclic_monoid(int(spec["cyclic"]))
    raise DomainMismatch(f"unknown monoid {spec!r}")


def action(spec, A: FinSet, M: Monoid) -> Callable:
    """"shift" moves an element of A along by the monoid value (cyclic monoids only)."""
    if spec in (None, "trivial"):
        return lambda a, b: a
    if spec == "shift":
        elems = A.elems
        return lambda a, b: elems[(elems.index(a) + int(b)) % len(elems)]
    raise DomainMismatch(f"unknown action {spec!r}")


def _params(spec: dict):
    A = finset(spec.get("A", 2), "A")
    M = monoid(spec.get("monoid", {"cyclic": 2}))
    return A, M, action(spec.get("action", "shift"), A, M)


def signature(spec: dict) -> Container:
    if not isinstance(spec, dict):
        raise DomainMismatch("a signature must be a JSON object")
    if "catalogue" not in spec:
        return Container.from_json(spec)
    name = spec["catalogue"]
    if name == "id":
        return c_id()
    if name == "one":
        return c_const(ONE)
    if name == "zero":
        return c_zero()
    if name == "const":
        return c_const(finset(spec["A"]))
    if name == "reader":
        return c_reader(finset(spec.get("A", 2)))
    if name == "writer":
        return c_writer(finset(spec.get("A", 2)))
    if name == "maybe":
        return c_maybe()
    if name == "nelist":
        return c_nelist(int(spec.get("N", 3)))
    if name == "exceptions":
        return c_exceptions(finset(spec.get("E", ["e1"]), "E"))
    if name == "product":
        return c_product(signature(spec["left"]), signature(spec["right"]))
    if name == "coproduct":
        return c_coproduct(signature(spec["left"]), signature(spec["right"]))
    if name == "compose":
        return c_compose(signature(spec["outer"]), signature(spec["inner"]))
    if name == "update":
        from .monadic.monads import update_container

        A, M, _ = _params(spec)
        return update_container(A, M)
    raise DomainMismatch(f"unknown catalogue entry {name!r}")


def expected_dual(spec: dict) -> Container | None:
    """The dual the catalogue predicts, where it predicts one."""
    if not isinstance(spec, dict) or "catalogue" not in spec:
        return None
    name = spec["catalogue"]
    table = {
        "id": lambda: c_id(),
        "one": lambda: c_zero(),
        "zero": lambda: c_const(ONE),
        "maybe": lambda: c_zero(),
        "reader": lambda: c_writer(finset(spec.get("A", 2))),
        "writer": lambda: c_reader(finset(spec.get("A", 2))),
    }
    if name in table:
        return table[name]()
    if name == "coproduct":
        from .dual import dual

        return c_product(dual(signature(spec["left"])), dual(signature(spec["right"])))
    if name == "nelist":
        return nelist_dual_expected(int(spec.get("N", 3)))
    if name == "update":
        A, M, _ = _params(spec)
        return c_compose(c_exponent_reader(A, M.carrier), c_writer(A))
    return None


def nelist_dual_expected(N: int) -> Container:
    """The product over lengths n of [n] × X: one index per length, one position per length."""
    import itertools

    shapes = FinSet("Πn.[n]", list(itertools.product(*(range(n) for n in range(1, N + 1)))))
    lengths = FinSet("N", range(1, N + 1))
    return Container(shapes, {s: lengths for s in shapes}, name=f"Π[n]×-{N}")


def c_exponent_reader(A: FinSet, B: FinSet) -> Container:
    """(A ⇒ B) ⇒ (-), one shape with the function space as positions."""
    from .finset import exponent

    return c_reader(exponent(A, B))


def mcil_instance(spec: dict):
    """A registered monad-comonad interaction law, optionally with a replaced table."""
    from .interaction import InteractionLaw, split_pair_key
    from .monadic.mcil import MCIL, identity_mcil, mcil_final, reader_mcil, update_mcil, writer_mcil

    name = spec.get("instance", "update")
    if name == "reader":
        m = reader_mcil(finset(spec.get("A", 2)))
    elif name == "writer":
        m = writer_mcil(monoid(spec.get("monoid", {"cyclic": 2})))
    elif name == "update":
        m = update_mcil(*_params(spec))
    elif name == "identity":
        m = identity_mcil()
    elif name == "final":
        m = mcil_final()
    else:
        raise DomainMismatch(f"unknown instance {name!r}")
    if "table" not in spec:
        return m
    T, D = m.T, m.D
    table = dict(m.law.table)
    for key, pq in spec["table"].items():
        s, t = split_pair_key(key, T.C.shapes, D.C.shapes)
        p, q = pq
        table[(s, t)] = (T.C.pos(s).by_token(p), D.C.pos(t).by_token(q))
    return MCIL(T, D, InteractionLaw(T.C, D.C, table, name=m.law.name), name=m.name, check=False)
