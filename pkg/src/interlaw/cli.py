"""Command-line front end.

Exit codes: 0 pass, 1 law failure, 2 input error, 3 size-guard abort.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .config import Bounds, load_bounds
from .finset import DomainMismatch, SizeGuardError, set_size_guard, token
from .report import Report, combine
from .scenarios import BUNDLED, bundled, dumps, run_scenario

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _emit(args, obj: dict, text: str | None = None) -> None:
    if args.json or text is None:
        sys.stdout.write(dumps(obj))
    else:
        print(text)


# -- dual ---------------------------------------------------------------------------

def cmd_dual(args, bounds: Bounds) -> int:
    from .catalogue import expected_dual, signature
    from .container import find_iso
    from .dual import dual

    spec = _load(args.container)
    C = signature(spec)
    D = dual(C)
    out = {"input": C.to_json(), "dual": D.to_json(), "shapes": len(D.shapes)}
    code = EXIT_OK
    expect = expected_dual(spec)
    if expect is not None:
        iso = find_iso(D, expect)
        if iso is None:
            out["iso"] = None
            code = EXIT_FAIL
        else:
            fwd, _ = iso
            out["iso"] = {"expected": expect.name, "shape_map": {token(s): token(fwd.shape(s)) for s in D.shapes}}
    text = f"dual of {C.name}: {len(D.shapes)} shape(s)"
    if expect is not None:
        text += f"; {'isomorphic to' if code == EXIT_OK else 'NOT isomorphic to'} {expect.name}"
    _emit(args, out, text)
    return code


# -- run ------------------------------------------------------------------------------

def _scenario_doc(args) -> dict:
    if len(args.inputs) == 1:
        name = args.inputs[0]
        if name in BUNDLED and not os.path.exists(name):
            return bundled(name)
        return _load(name)
    if len(args.inputs) == 3:
        sig, tree, other = (_load(p) for p in args.inputs)
        doc = {"name": os.path.splitext(os.path.basename(args.inputs[1]))[0], "signature": sig, "tree": tree}
        for key in ("machine", "runner", "residual_runner"):
            if isinstance(other, dict) and key in other:
                doc[key] = other[key]
                break
        else:
            kind = "machine" if isinstance(other, dict) and "step" in other else (
                "residual_runner" if isinstance(other, dict) and "R" in other else "runner")
            doc[kind] = other
        return doc
    raise InputError("run takes a scenario (name or file) or three files: signature tree machine|runner")


def cmd_run(args, bounds: Bounds) -> int:
    doc = _scenario_doc(args)
    out = run_scenario(doc)
    if args.golden:
        os.makedirs(args.golden, exist_ok=True)
        path = os.path.join(args.golden, f"{out['scenario']}.trace.json")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(dumps(out))
    lines = [f"{out['scenario']}: result {json.dumps(out['result'], sort_keys=True)}"]
    for e in out["trace"]:
        lines.append(f"  step {e['step']}: {e['shape']} -> {e['position']} [{e['state']}]")
    _emit(args, out, "\n".join(lines))
    return EXIT_OK


# -- check ----------------------------------------------------------------------------

def _suite_ffil(target, bounds: Bounds) -> Report:
    from .container import c_reader, c_writer
    from .dual import il_to_morphism, morphism_to_il
    from .finset import all_functions, nat
    from .interaction import InteractionLaw, il_count, il_enumerate, is_natural_pairing

    if target is not None:
        laws = [InteractionLaw.from_json(target)]
    else:
        A = nat(2)
        F, G = c_reader(A), c_writer(A)
        laws = list(il_enumerate(F, G))
        if len(laws) != il_count(F, G):
            return Report("ffil", False, len(laws), {"count": len(laws), "expected": il_count(F, G)})
    checked = 0
    for il in laws:
        checked += 1
        if morphism_to_il(il_to_morphism(il)).table != il.table:
            return Report("ffil", False, checked, {"law": il.to_json(), "reason": "dual transpose round trip"})
        for n in range(1, min(bounds.max_carrier, 2) + 1):
            X = nat(n)
            maps = list(all_functions(X, X))
            checked += 1
            if not is_natural_pairing(il, X, X, maps, maps):
                return Report("ffil", False, checked, {"law": il.to_json(), "reason": "not natural", "carrier": n})
    return Report("ffil", True, checked)


def _suite_mcil(target, bounds: Bounds) -> Report:
    from .catalogue import mcil_instance
    from .monadic.mcil import mcil_check, mcil_check_via_dual

    m = mcil_instance(target or {"instance": "update"})
    r1 = mcil_check(m.T, m.D, m.law)
    r2 = mcil_check_via_dual(m.T, m.D, m.law)
    return combine("mcil", [r1, r2])


def _suite_runner(target, bounds: Bounds) -> Report:
    from .catalogue import _params
    from .finset import FinSet
    from .runners import (
        coalgebra_report,
        coalgebra_to_runner,
        costate_family_to_runner,
        runner_law_report,
        runner_to_coalgebra,
        runner_to_costate_family,
        runner_to_state_map,
        state_map_report,
        state_map_to_runner,
        update_lens_runner,
    )

    spec = target or {"A": ["a", "b"], "monoid": {"cyclic": 2}, "action": "shift"}
    A, M, act = _params(spec)
    Y = FinSet("Y", [(a, n) for a in A for n in range(len(M.carrier))])
    r = update_lens_runner(Y, lambda y: y[0], lambda y, b: (act(y[0], b), M.op(y[1], b)), A, M, act)
    reps = [runner_law_report(r)]
    sm = runner_to_state_map(r)
    reps.append(state_map_report(sm))
    co = runner_to_coalgebra(r)
    reps.append(coalgebra_report(co))
    trips = {
        "state-map": state_map_to_runner(sm).same_table(r),
        "coalgebra": coalgebra_to_runner(co).same_table(r),
        "costate": costate_family_to_runner(runner_to_costate_family(r)).same_table(r),
    }
    for k, ok in trips.items():
        reps.append(Report(f"round-trip:{k}", ok, 1))
    return combine("runner", reps)


def _suite_residual(target, bounds: Bounds) -> Report:
    from .catalogue import finset
    from .residual import exceptions_example, pure_naturality_check, residual_mcil_check
    from .finset import nat

    spec = target or {}
    A = finset(spec.get("A", ["a", "b"]), "A")
    E = finset(spec.get("E", ["e1", "e2"]), "E")
    T, D, law = exceptions_example(A, E)
    carriers = [nat(n) for n in range(1, min(bounds.max_carrier, 2) + 1)]
    return combine("residual", [residual_mcil_check(T, D, law), pure_naturality_check(law, carriers)])


def _suite_degeneracy(target, bounds: Bounds) -> Report:
    from .catalogue import signature
    from .container import small_containers
    from .interaction import il_count

    spec = target or {"functor": {"catalogue": "maybe"}}
    F = signature(spec.get("functor", spec))
    n = bounds.max_carrier
    witnesses = []
    checked = 0
    for G in small_containers(n, n):
        checked += 1
        if il_count(F, G) > 0:
            witnesses.append(G.name)
    verdict = "no interacting functor" if not witnesses else f"{len(witnesses)} interacting functor(s)"
    expect_none = spec.get("expect", "none") == "none"
    ok = (not witnesses) if expect_none else bool(witnesses)
    return Report("degeneracy", ok, checked, None if ok else {"witnesses": witnesses[:5]},
                  {"functor": F.name, "verdict": verdict})


def _suite_sweedler(target, bounds: Bounds) -> Report:
    from .catalogue import _params
    from .monadic.sweedler import sweedler_nelist, sweedler_squares, sweedler_update

    spec = target or {}
    N = int(spec.get("N", bounds.max_depth))
    reps = [sweedler_squares(sweedler_nelist(N))]
    reps.append(sweedler_squares(sweedler_update(*_params(spec.get("update", {})))))
    return combine("sweedler", reps)


def _suite_coequations(target, bounds: Bounds) -> Report:
    from .monadic.sweedler import coequation_checks, nelist_cooperation, nelist_sweedler_comonad

    res = coequation_checks(nelist_sweedler_comonad(), nelist_cooperation())
    ok = res["coassoc"] and res["left_corect"] and res["right_corect"]
    return Report("coequations", ok, 3, res.get("counterexample"),
                  {k: res[k] for k in ("coassoc", "left_corect", "right_corect")})


SUITES = {
    "ffil": _suite_ffil,
    "mcil": _suite_mcil,
    "runner": _suite_runner,
    "residual": _suite_residual,
    "degeneracy": _suite_degeneracy,
    "sweedler": _suite_sweedler,
    "coequations": _suite_coequations,
}


def cmd_check(args, bounds: Bounds) -> int:
    if args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    targets = [_load(p) for p in args.targets] or [None]
    reports = [SUITES[args.suite](t, bounds) for t in targets]
    rep = reports[0] if len(reports) == 1 else combine(args.suite, reports)
    text = f"{args.suite}: {'PASS' if rep.ok else 'FAIL'} ({rep.checked} checks)"
    if rep.details.get("verdict"):
        text += f" - {rep.details['verdict']}"
    if not rep.ok:
        text += "\ncounterexample: " + json.dumps(rep.counterexample, sort_keys=True, ensure_ascii=False)
    _emit(args, rep.to_json(), text)
    return EXIT_OK if rep.ok else EXIT_FAIL


# -- enumerate ----------------------------------------------------------------------

def cmd_enumerate(args, bounds: Bounds) -> int:
    from .catalogue import signature
    from .interaction import il_count, il_enumerate

    F, G = signature(_load(args.F)), signature(_load(args.G))
    n = il_count(F, G)
    limit = args.limit if args.limit is not None else bounds.size_guard
    if n > limit:
        raise SizeGuardError(f"{n} laws exceed the limit {limit}")
    out = {"F": F.name, "G": G.name, "count": n}
    if args.dump:
        out["laws"] = [il.to_json() for il in il_enumerate(F, G)]
    _emit(args, out, f"{F.name} ⋈ {G.name}: {n} law(s)")
    return EXIT_OK


# -- entry point ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bounds", default=argparse.SUPPRESS,
                        help="JSON file with max_carrier, max_depth, universe_k, size_guard")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    p = argparse.ArgumentParser(prog="interlaw", description="Executable interaction laws over finite containers.",
                                parents=[common])
    p.set_defaults(bounds=None, json=False)
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dual", parents=[common], help="compute the dual of a container")
    d.add_argument("container")

    r = sub.add_parser("run", parents=[common], help="run a tree against a machine or runner")
    r.add_argument("inputs", nargs="+", help=f"bundled scenario ({', '.join(BUNDLED)}) or file(s)")
    r.add_argument("--golden", metavar="DIR", help="write the trace to DIR/<scenario>.trace.json")

    c = sub.add_parser("check", parents=[common], help="run a law suite")
    c.add_argument("suite", help=", ".join(SUITES))
    c.add_argument("targets", nargs="*")

    e = sub.add_parser("enumerate", parents=[common], help="count functor-functor interaction laws")
    e.add_argument("F")
    e.add_argument("G")
    e.add_argument("--limit", type=int)
    e.add_argument("--dump", action="store_true")
    return p


COMMANDS = {"dual": cmd_dual, "run": cmd_run, "check": cmd_check, "enumerate": cmd_enumerate}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = getattr(args, "json", False)
    try:
        bounds = load_bounds(args.bounds)
        set_size_guard(bounds.size_guard)
        return COMMANDS[args.command](args, bounds)
    except SizeGuardError as exc:
        return _error(as_json, "size-guard", str(exc), EXIT_GUARD)
    except (InputError, DomainMismatch, KeyError, ValueError, TypeError) as exc:
        return _error(as_json, "input", str(exc), EXIT_INPUT)


def _error(as_json: bool, kind: str, msg: str, code: int) -> int:
    if as_json:
        sys.stdout.write(dumps({"error": {"kind": kind, "message": msg}}))
    else:
        print(f"error ({kind}): {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
