from hypothesis import given, settings
from hypothesis import strategies as st

from interlaw.container import ContainerElement, c_maybe, c_nelist, c_reader, c_writer
from interlaw.dual import Dual, dual_pairing
from interlaw.finset import FinFn, fset, nat
from interlaw.interaction import il_apply
from interlaw.monadic.free import (
    FreeMonad,
    Leaf,
    Machine,
    Node,
    all_machines,
    canonical_mcil,
    machine,
    node,
    observably_equal,
    tree_depth,
    tree_from_json,
    tree_to_json,
)

X = fset("X", "x0", "x1")
SIGS = [c_reader(nat(2)), c_writer(nat(2)), c_maybe(), c_nelist(2)]


def trees(C, leaves, depth):
    if depth == 0:
        return st.sampled_from(leaves).map(Leaf)
    sub = trees(C, leaves, depth - 1)

    @st.composite
    def op(draw):
        s = draw(st.sampled_from(C.shapes.elems))
        return Node(s, tuple((p, draw(sub)) for p in C.pos(s)))

    return st.one_of(sub, op())


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(SIGS).flatmap(lambda C: st.tuples(st.just(C), trees(C, X.elems, 3))))
def test_free_monad_laws(Ct):
    C, t = Ct
    F = FreeMonad(C)
    k = lambda x: node(C, C.shapes[0], lambda p: Leaf(x))  # noqa: E731
    assert F.bind(Leaf("x0"), k) == k("x0")
    assert F.bind(t, Leaf) == t
    h = lambda x: Leaf(x + "!")  # noqa: E731
    assert F.bind(F.bind(t, k), h) == F.bind(t, lambda x: F.bind(k(x), h))
    assert tree_from_json(C, tree_to_json(t)) == t


def test_tree_enumeration_depths():
    F = FreeMonad(c_maybe())
    assert [len(F.trees(X, d)) for d in range(4)] == [2, 5, 8, 11]
    assert max(tree_depth(t) for t in F.trees(X, 3)) == 3
    assert all(tree_depth(F.join(tt)) <= 2 for tt in F.nested_trees(X, 2))


def _two_state_machines(C, Y):
    return list(all_machines(Dual(C), fset("Z", "z0", "z1"), Y))


def test_machine_json_and_comonad_laws():
    C = c_reader(nat(2))
    Y = fset("Y", "y0", "y1")
    for m in _two_state_machines(C, Y)[:40]:
        back = Machine.from_json(Dual(C), m.to_json())
        assert observably_equal(back, m, 3)
        assert m.duplicate().extract().observe(3) == m.observe(3)
        assert observably_equal(m.duplicate().fmap(lambda k: k.extract()), m, 3)


def test_depth_one_run_is_the_step_law():
    for C in (c_reader(nat(2)), c_nelist(2)):
        law = dual_pairing(C)
        cm = canonical_mcil(C)
        Y = fset("Y", "y0", "y1")
        for m in _two_state_machines(C, Y)[:30]:
            for s in C.shapes:
                t = node(C, s, lambda p: Leaf(("x", p)))
                x, y = cm.run(t, m)
                q = m.shape()
                eF = ContainerElement(s, FinFn(C.pos(s), None, [("x", p) for p in C.pos(s)], check=False))
                eG = ContainerElement(q, FinFn(C.shapes, None, [m.successor(s2).extract() for s2 in C.shapes],
                                               check=False))
                assert (x, y) == il_apply(law, eF, eG)


def test_trace_length_is_path_depth():
    C = c_reader(nat(2))
    G = Dual(C)
    m = machine(G, fset("Z", "z"), {"z": "y"}, {"z": ((1,), {"*": "z"})}, "z")
    t = node(C, "*", {0: Leaf("a"), 1: node(C, "*", {0: Leaf("b"), 1: Leaf("c")})})
    trace = []
    assert canonical_mcil(C).run(t, m, trace) == ("c", "y")
    assert len(trace) == 2
    assert [e.position for e in trace] == ["1", "1"]
    trace = []
    canonical_mcil(C).run(Leaf("a"), m, trace)
    assert trace == []
