"""The fifteen acceptance criteria as plain functions returning (ok, detail).

Shared by tests/test_acceptance.py and runnable directly:

    python3 tests/acceptance_checks.py
"""
from __future__ import annotations

import filecmp
import itertools
import os
import subprocess
import sys
import tempfile
import time

from interlaw.container import (
    c_compose,
    c_const,
    c_coproduct,
    c_id,
    c_maybe,
    c_nelist,
    c_product,
    c_reader,
    c_writer,
    c_zero,
    find_iso,
    is_iso_pair,
    small_containers,
)
from interlaw.dual import dual
from interlaw.finset import ONE, cyclic_monoid, fset, nat
from interlaw.interaction import il_enumerate

A = fset("A", "a", "b")
B = fset("B", 0, 1)
Z2 = cyclic_monoid(2)


def shift(a, b):
    return a if b == 0 else ("b" if a == "a" else "a")


def catalogue():
    """(label, container, expected dual) for the eight catalogue entries."""
    from interlaw.catalogue import c_exponent_reader, nelist_dual_expected

    R, W = c_reader(A), c_writer(B)
    return [
        ("Id", c_id(), c_id()),
        ("1", c_const(ONE), c_zero()),
        ("0", c_zero(), c_const(ONE)),
        ("A×-", c_writer(A), c_reader(A)),
        ("A⇒-", c_reader(A), c_writer(A)),
        ("G0+G1", c_coproduct(R, W), c_product(dual(R), dual(W))),
        ("nelist(3)", c_nelist(3), nelist_dual_expected(3)),
        ("update", c_compose(c_reader(A), c_writer(B)), c_compose(c_exponent_reader(A, B), c_writer(A))),
    ]


def criterion_1():
    t = time.time()
    rows = []
    for label, C, expect in catalogue():
        iso = find_iso(dual(C), expect)
        rows.append((label, iso is not None and is_iso_pair(*iso)))
    secs = time.time() - t
    ok = all(r for _, r in rows) and secs < 1.0
    return ok, f"{sum(r for _, r in rows)}/8 isomorphisms exhibited in {secs:.2f}s"


def criterion_2():
    from interlaw.finmodel import Universe, end_dual, find_natural_iso, from_container

    t = time.time()
    U = Universe(3)
    good = 0
    for _, C, _ in catalogue():
        if find_natural_iso(end_dual(from_container(C, U)), from_container(dual(C), U)) is not None:
            good += 1
    secs = time.time() - t
    return good == 8 and secs < 60, f"{good}/8 natural isos at k=3 in {secs:.1f}s"


def criterion_3():
    t = time.time()
    family = list(small_containers(3, 3))
    nonempty = [G.name for G in family if next(il_enumerate(c_maybe(), G), None) is not None]
    secs = time.time() - t
    return not nonempty and secs < 5, f"{len(family)} containers, {len(nonempty)} with a law, {secs:.2f}s"


def criterion_4():
    from interlaw.finmodel import (
        Universe,
        container_family,
        functor_product,
        identity_functor,
        interaction_families,
        is_nonzero,
        squares,
        unordered_pairs,
    )

    t = time.time()
    U = Universe(3)
    P = unordered_pairs(U)
    family = container_family(U) + [P, functor_product(P, identity_functor(U)), squares(U)]
    family = [G for G in family if is_nonzero(G)]
    found = [G.name for G in family if interaction_families(P, G, first=True)]
    secs = time.time() - t
    return not found and secs < 60, f"{len(family)} nonzero functors, {len(found)} interacting, {secs:.1f}s"


def mcil_instances():
    from interlaw.monadic.mcil import reader_mcil, update_mcil, writer_mcil

    return [reader_mcil(nat(1)), reader_mcil(A), reader_mcil(nat(3)), writer_mcil(Z2), update_mcil(A, Z2, shift)]


def invalid_mutations(limit: int = 5):
    """Single-entry mutations that the independent oracle rejects, taken round-robin over the instances."""
    from interlaw.monadic.mcil import mcil_check_via_dual, single_entry_mutations

    pools = []
    for m in mcil_instances():
        pools.append([(m, key, law) for key, law in single_entry_mutations(m.law)
                      if not mcil_check_via_dual(m.T, m.D, law).ok])
    picked = []
    while len(picked) < limit and any(pools):
        for pool in pools:
            if pool and len(picked) < limit:
                picked.append(pool.pop(0))
    return picked


def criterion_5():
    from interlaw.monadic.mcil import mcil_check

    passing = [mcil_check(m.T, m.D, m.law).ok for m in mcil_instances()]
    muts = invalid_mutations(5)
    caught = [r for r in (mcil_check(m.T, m.D, law) for m, _, law in muts) if not r.ok and r.counterexample]
    ok = all(passing) and len(muts) == 5 and len(caught) == 5
    return ok, f"{sum(passing)}/{len(passing)} canonical laws pass; {len(caught)}/5 mutations rejected with counterexample"


def criterion_6():
    from interlaw.monadic.mcil import reader_mcil, update_as_composite, update_mcil, writer_mcil
    from interlaw.monadic.mcil import env_cowriter_kappa, mcil_composite, reader_writer_lambda

    direct = update_mcil(A, Z2, shift)
    comp = mcil_composite(reader_mcil(A), writer_mcil(Z2), reader_writer_lambda(A, Z2, shift),
                          env_cowriter_kappa(A, Z2, shift))
    same = comp.law.table == direct.law.table and update_as_composite(A, Z2, shift).law.table == direct.law.table
    return same, f"{len(direct.law.table)} table entries compared"


def criterion_7():
    from interlaw.monadic.free import all_machines, canonical_mcil

    X = fset("X", "x0", "x1")
    Y = fset("Y", "y0", "y1")
    bad = []
    counted = 0
    for C in (c_reader(nat(2)), c_writer(nat(2))):
        cm = canonical_mcil(C)
        G = dual(C)
        for Xc in (fset("X", "x0"), X):
            for Yc in (fset("Y", "y0"), Y):
                machines = []
                for n in (1, 2):
                    machines += list(all_machines(G, fset("Z", *[f"z{i}" for i in range(n)]), Yc))
                nested = cm.T.nested_trees(Xc, 2)
                counted += len(machines) * len(nested)
                if cm.unit_counterexample(Xc, machines) or cm.mult_counterexample(nested, machines):
                    bad.append(C.name)
    return not bad, f"{counted} (machine, nested tree) pairs checked"


def nelist_clauses(N: int = 4, ymax: int = 3):
    """Compare ψ with the three defining clauses on every list and machine element."""
    from interlaw.container import ContainerElement
    from interlaw.finset import FinFn
    from interlaw.monadic.sweedler import FST, sweedler_nelist

    inst = sweedler_nelist(N)
    m = inst.law
    X = nat(2)
    checked = 0
    for ny in range(1, ymax + 1):
        Y = nat(ny)
        for n in range(1, N + 1):
            for xs in itertools.product(X.elems, repeat=n):
                xs = list(xs)
                e = ContainerElement(n, FinFn(nat(n), X, xs, check=False))
                for tag in ("inl", "inr"):
                    P = inst.D.C.pos(tag)
                    for y in Y:
                        for y2 in Y:
                            d = ContainerElement(tag, FinFn(P, Y, [y if p == FST else y2 for p in P], check=False))
                            if n == 1:
                                want = (xs[0], y)
                            elif tag == "inl":
                                want = (xs[0], y2)
                            else:
                                want = (xs[-1], y2)
                            checked += 1
                            if m.apply(e, d) != want:
                                return False, checked
    return True, checked


def criterion_8():
    from interlaw.container import Container
    from interlaw.monadic.monads import comonad_enumerate, identity_comonad, zero_comonad
    from interlaw.monadic.sweedler import (
        coequation_checks,
        head_or_last_report,
        nelist_cooperation,
        sweedler_nelist,
    )

    t = time.time()
    inst = sweedler_nelist(4)
    laws_ok = inst.D.law_counterexample() is None
    clauses_ok, n_clauses = nelist_clauses(4, 3)
    co = coequation_checks(inst.D, nelist_cooperation())
    co_ok = co["coassoc"] and co["left_corect"] and co["right_corect"]
    two = fset("P", "fst", "snd")
    comonads = [identity_comonad(), zero_comonad(), inst.D]
    for C in (
        Container(fset("S", "l"), {"l": two}),
        Container(fset("S", "l", "r"), {"l": ONE, "r": ONE}),
        Container(fset("S", "l", "r"), {"l": two, "r": two}),
        Container(fset("S", "l"), {"l": nat(3)}),
    ):
        comonads += comonad_enumerate(C)
    hl = head_or_last_report(4, comonads)
    secs = time.time() - t
    ok = laws_ok and clauses_ok and co_ok and hl.ok and secs < 30
    return ok, (f"comonad laws {laws_ok}; {n_clauses} clause checks; coequations {co_ok}; "
                f"{len(comonads)} comonads, {hl.checked} induced values head/last; {secs:.1f}s")


def criterion_9():
    from interlaw.monadic.mcil import update_mcil
    from interlaw.monadic.sweedler import sweedler_squares, sweedler_update

    inst = sweedler_update(A, Z2, shift)
    rep = sweedler_squares(inst)
    same = inst.law.law.table == update_mcil(A, Z2, shift).law.table
    return rep.ok and same and inst.D.law_counterexample() is None, f"{rep.checked} square checks"


def criterion_10():
    from interlaw.monadic.free import FreeMonad
    from interlaw.runners import (
        all_runners,
        coalgebra_to_runner,
        costate_family_to_runner,
        run,
        runner_to_coalgebra,
        runner_to_costate_family,
        runner_to_machine_run,
        runner_to_state_map,
        state_map_to_runner,
        update_lens_runner,
    )

    Y = fset("Y", *[(a, i) for a in "ab" for i in (0, 1)])
    lens = update_lens_runner(Y, lambda y: y[0], lambda y, b: (shift(y[0], b), (y[1] + b) % 2), A, Z2, shift)
    Yr = fset("Y", "y0", "y1")
    reader_runners = all_runners(c_reader(nat(2)), Yr) + all_runners(c_reader(nat(1)), Yr)

    def round_trips(r):
        return (state_map_to_runner(runner_to_state_map(r)).same_table(r)
                and coalgebra_to_runner(runner_to_coalgebra(r)).same_table(r)
                and costate_family_to_runner(runner_to_costate_family(r)).same_table(r))

    trips = [round_trips(r) for r in [lens] + reader_runners]
    X = fset("X", "x0", "x1")
    disagree = 0
    runs = 0
    for r in reader_runners:
        for t in FreeMonad(r.C).trees(X, 2):
            for y0 in r.Y:
                runs += 1
                disagree += run(r, t, y0) != runner_to_machine_run(r, t, y0)
    ok = all(trips) and len(reader_runners) == 20 and disagree == 0
    return ok, f"{sum(trips)}/{len(trips)} runners round-trip; {runs} runs, {disagree} disagreements"


def criterion_11():
    from interlaw.monadic.mcil import update_mcil
    from interlaw.runners import mcil_to_runner_spec, runner_spec_to_mcil

    m = update_mcil(A, Z2, shift)
    back = runner_spec_to_mcil(m.T, m.D, mcil_to_runner_spec(m))
    return back.law.table == m.law.table, f"{len(m.law.table)} entries"


def criterion_12():
    from interlaw.container import c_writer as cw
    from interlaw.residual import (
        FinNondet,
        Identity,
        Maybe,
        ResidualLaw,
        embed,
        exceptions_example,
        pure_naturality_check,
        residual_enumerate,
        residual_mcil_check,
        residual_runner_to_state_map,
        residual_state_map_to_runner,
        ResidualRunner,
        strong_square_counterexample,
    )

    E = fset("E", "e1", "e2")
    T, D, law = exceptions_example(A, E)
    exc_ok = residual_mcil_check(T, D, law).ok

    R = FinNondet()
    C = c_reader(A)
    Y = nat(2)
    theta = {("*", y): R.norm([("a", y), ("b", 1 - y)]) for y in Y}
    rr = ResidualRunner(C, Y, R, theta)
    trip = residual_state_map_to_runner(residual_runner_to_state_map(rr)).theta == rr.theta

    embeds = []
    for m in mcil_instances():
        e = embed(m.law, Identity())
        embeds.append(e.table == m.law.table and residual_mcil_check(m.T, m.D, e).ok)

    carriers = [nat(1), nat(2)]
    table_laws = [law] + [embed(m.law, Identity()) for m in mcil_instances()[:2]]
    table_laws += list(residual_enumerate(c_maybe(), cw(A), Maybe()))
    table_laws += list(residual_enumerate(c_reader(A), cw(A), R))
    natural = [pure_naturality_check(lw, carriers).ok for lw in table_laws]

    nd = ResidualLaw(c_reader(A), cw(A), R, {("*", a): ((a, "*"),) for a in A})
    cex = strong_square_counterexample(nd, lambda x: (x, x), nat(2), nat(1))
    ok = exc_ok and trip and all(embeds) and all(natural) and cex is not None
    return ok, (f"exceptions {exc_ok}; round trip {trip}; {sum(embeds)}/{len(embeds)} embeddings; "
                f"{sum(natural)}/{len(natural)} laws natural; strong square sizes "
                f"{cex and (cex['left_size'], cex['right_size'])}")


def criterion_13():
    from interlaw.runners import Handler, handler_report, handler_uniqueness

    X, Z = nat(2), nat(2)
    h = Handler(c_maybe(), Z, {"just": lambda k: k("*"), "nothing": lambda k: 1}, lambda x: x)
    rep = handler_report(h, X, 3)
    n = handler_uniqueness(h, X, 3)
    return rep.ok and n == 1, f"{rep.checked} triangle instances; {n} fold(s) found"


def session_facts():
    from interlaw.session import (
        ExternalChoice,
        Input,
        InternalChoice,
        Output,
        Return,
        enumerate_sessions,
        session_dual,
        session_to_container,
    )

    alphabets = (A,)
    trees = list(enumerate_sessions(3, alphabets))
    involution = all(session_dual(session_dual(t)) == t for t in trees)
    free = list(enumerate_sessions(3, alphabets, input_free=True))
    mismatched = [t for t in free if find_iso(session_to_container(session_dual(t)), dual(session_to_container(t))) is None]
    probe = Input(A, Output(fset("B", "c", "d"), Return()))
    probe_iso = find_iso(session_to_container(session_dual(probe)), dual(session_to_container(probe)))
    smallest = ExternalChoice(Return(), InternalChoice(Return(), Return()))
    return {
        "trees": len(trees),
        "involution": involution,
        "input_free": len(free),
        "mismatched": mismatched,
        "probe_fails": probe_iso is None,
        "smallest": smallest,
    }


def criterion_14():
    f = session_facts()
    ok = f["involution"] and not f["mismatched"] and f["probe_fails"]
    return ok, (f"involution on {f['trees']} trees {f['involution']}; "
                f"{len(f['mismatched'])}/{f['input_free']} input-free trees lack container-of-dual ≅ dual-of-container; "
                f"input discrepancy exhibited {f['probe_fails']}")


def criterion_15():
    env = dict(os.environ)
    with tempfile.TemporaryDirectory() as tmp:
        dirs = [os.path.join(tmp, "first"), os.path.join(tmp, "second")]
        for d in dirs:
            for name in ("reader", "update", "exceptions"):
                proc = subprocess.run([sys.executable, "-m", "interlaw.cli", "run", name, "--golden", d],
                                      capture_output=True, env=env, cwd=tmp)
                if proc.returncode != 0:
                    return False, proc.stderr.decode()
        names = sorted(os.listdir(dirs[0]))
        match, mismatch, errors = filecmp.cmpfiles(dirs[0], dirs[1], names, shallow=False)
        return len(names) == 3 and not mismatch and not errors, f"{len(match)}/3 golden traces identical"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 16)}


def main() -> int:
    failed = 0
    for i, fn in CRITERIA.items():
        ok, detail = fn()
        failed += not ok
        print(f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
