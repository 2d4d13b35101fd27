import pytest
from hypothesis import given, strategies as st

from interlaw.container import c_maybe, c_reader, c_writer
from interlaw.finset import cyclic_monoid, fset, nat
from interlaw.interaction import il_enumerate, il_tensor
from interlaw.monadic import Leaf, node
from interlaw.monadic.mcil import reader_mcil, update_mcil, writer_mcil
from interlaw.residual import (
    Exceptions,
    FinNondet,
    Identity,
    Maybe,
    ResidualLaw,
    ResidualRunner,
    embed,
    exceptions_example,
    monad_law_report,
    pure_naturality_check,
    residual_count,
    residual_mcil_check,
    residual_run,
    residual_runner_from_json,
    residual_runner_to_json,
    residual_runner_to_state_map,
    residual_state_map_to_runner,
    residual_tensor,
    residual_value_from_json,
    residual_value_to_json,
    strong_square_counterexample,
)

A = fset("A", "a", "b")
E = fset("E", "e1", "e2")
Z2 = cyclic_monoid(2)


def shift(a, b):
    return a if b == 0 else ("b" if a == "a" else "a")


MONADS = [Identity(), Maybe(), Exceptions(E), FinNondet()]


@pytest.mark.parametrize("R", MONADS, ids=lambda R: R.name)
def test_residual_monad_laws(R):
    assert monad_law_report(R, [nat(1), nat(2), nat(3)], [nat(1), nat(2)]).ok


@given(st.lists(st.integers(0, 2), max_size=2))
def test_nondet_is_order_insensitive(xs):
    R = FinNondet()
    assert R.norm(xs) == R.norm(reversed(xs))
    assert R.bind(R.norm(xs), R.unit) == R.norm(xs)


@pytest.fixture(scope="module")
def exc():
    return exceptions_example(A, E)


def test_exceptions_law_is_monad_comonad(exc):
    T, D, law = exc
    assert residual_mcil_check(T, D, law).ok


def test_exceptions_mutation_fails(exc):
    T, D, law = exc
    tab = dict(law.table)
    key = next(k for k, v in tab.items() if v[0] == "val")
    tab[key] = ("exc", "e1")
    assert not residual_mcil_check(T, D, ResidualLaw(T.C, D.C, law.R, tab)).ok


def test_exceptions_law_pure_natural(exc):
    assert pure_naturality_check(exc[2], [nat(1), nat(2)]).ok


@pytest.mark.parametrize("make", [lambda: reader_mcil(A), lambda: writer_mcil(Z2), lambda: update_mcil(A, Z2, shift)],
                         ids=["reader", "writer", "update"])
def test_plain_laws_embed(make):
    m = make()
    e = embed(m.law, Identity())
    assert e.table == m.law.table
    assert residual_mcil_check(m.T, m.D, e).ok
    assert residual_mcil_check(m.T, m.D, embed(m.law, Maybe())).ok


def test_embedding_commutes_with_tensor():
    rl, wl = reader_mcil(A).law, writer_mcil(Z2).law
    R = Maybe()
    assert residual_tensor(embed(rl, R), embed(wl, R)).table == embed(il_tensor(rl, wl), R).table


def test_maybe_escapes_degeneracy():
    # No plain law between Maybe and a writer, but partiality admits some.
    assert len(list(il_enumerate(c_maybe(), c_writer(A)))) == 0
    assert residual_count(c_maybe(), c_writer(A), Maybe()) == 4


def _nondet_reader_law():
    R = FinNondet()
    return ResidualLaw(c_reader(A), c_writer(A), R, {("*", a): ((a, "*"),) for a in A})


def test_strong_square_fails_for_nondeterminism():
    law = _nondet_reader_law()
    assert pure_naturality_check(law, [nat(1), nat(2)]).ok
    ce = strong_square_counterexample(law, lambda x: (x, x), nat(2), nat(1))
    assert ce is not None
    assert (ce["left_size"], ce["right_size"]) == (4, 2)


@pytest.fixture(scope="module")
def nondet_runner():
    C = c_reader(A)
    return ResidualRunner(C, nat(2), FinNondet(), {("*", y): (("a", y), ("b", 1 - y)) for y in (0, 1)})


def test_nondet_run_explores_all_branches(nondet_runner):
    C = nondet_runner.C
    t = node(C, "*", {"a": node(C, "*", {"a": Leaf(0), "b": Leaf(1)}),
                      "b": node(C, "*", {"a": Leaf(2), "b": Leaf(3)})})
    trace = []
    assert residual_run(nondet_runner, t, 0, trace) == ((0, 0), (1, 1), (2, 1), (3, 0))
    assert len(trace) == 6  # two at the root, two under each child


def test_exception_run_aborts():
    C = c_reader(A)
    R = Exceptions(E)
    r = ResidualRunner(C, A, R, {("*", "a"): R.unit(("a", "a")), ("*", "b"): R.raise_("e2")})
    t = node(C, "*", {"a": Leaf("x"), "b": Leaf("y")})
    trace = []
    assert residual_run(r, t, "a") == ("val", ("x", "a"))
    assert residual_run(r, t, "b", trace) == ("exc", "e2")
    assert [e.to_json()["state"] for e in trace] == ["abort"]


def test_runner_state_map_round_trip(nondet_runner):
    sm = residual_runner_to_state_map(nondet_runner)
    assert residual_state_map_to_runner(sm).theta == nondet_runner.theta


def test_runner_json_round_trip(nondet_runner):
    obj = residual_runner_to_json(nondet_runner)
    back = residual_runner_from_json(nondet_runner.C, obj, Y=nat(2))
    assert back.theta == nondet_runner.theta
    assert residual_runner_to_json(residual_runner_from_json(nondet_runner.C, obj)) == obj


@pytest.mark.parametrize("R,v", [(Identity(), (0, 1)), (Maybe(), ("nothing",)), (Maybe(), ("just", (1, 0))),
                                 (Exceptions(E), ("exc", "e1")), (Exceptions(E), ("val", (0, 0))),
                                 (FinNondet(), ((0, 1), (1, 1)))], ids=str)
def test_value_json_round_trip(R, v):
    dec = lambda p, y: (int(p), int(y))  # noqa: E731
    assert residual_value_from_json(R, residual_value_to_json(R, v), dec) == v
