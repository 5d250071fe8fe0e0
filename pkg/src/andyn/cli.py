"""Command-line front end.  Every command prints JSON on standard output.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import arith, io
from .demos import demos
from .errors import AndynError
from .graphs import GadgetFamily, PortedGraph, delta, glue, graph_to_dict
from .logic import evaluate
from .networks import NetworkDescriptor, expand_dynamics
from .pump import assemble_gadgets, find_pump, random_contexts, verify_pump
from .reduce import ReductionOutput, compile_reduction, load_prop, verify_reduction
from .treedec import glue_td, is_valid_decomposition, td_to_dict, width


class VerificationFailed(Exception):
    def __init__(self, payload):
        super().__init__("verification failed")
        self.payload = payload


def _emit(obj, args) -> None:
    print(json.dumps(obj, indent=2 if args.pretty else None, sort_keys=True))


# ------------------------------------------------------------------ handlers

def cmd_dyn_expand(args):
    d = NetworkDescriptor.from_dict(io.read_json(args.descriptor))
    return graph_to_dict(expand_dynamics(d))


def cmd_mc_check(args):
    psi = io.read_formula(args.psi)
    return {"result": evaluate(psi, io.load_graph(args.graph).graph)}


def cmd_glue(args):
    if args.word:
        members = {}
        for spec in args.member:
            key, _, path = spec.partition("=")
            members[key] = io.load_graph(path)
        k = next(iter(members.values())).k if members else 0
        return graph_to_dict(delta(GadgetFamily(k, members), list(args.word)))
    if not args.files:
        raise AndynError("give graph files, or --member KEY=FILE entries with --word")
    out: PortedGraph = io.load_graph(args.files[0])
    for path in args.files[1:]:
        out = glue(out, io.load_graph(path))
    return graph_to_dict(out)


def cmd_td_validate(args):
    t = io.load_td(args.td)
    valid = is_valid_decomposition(t, io.load_graph(args.graph).graph)
    result = {"valid": valid, "width": width(t)}
    if not valid:
        raise VerificationFailed(result)
    return result


def cmd_td_glue(args):
    out = io.load_td(args.files[0])
    for path in args.files[1:]:
        out = glue_td(out, io.load_td(path))
    return td_to_dict(out)


def cmd_arith_solve(args):
    lines = [{"K": w.K, "N": w.N} for w in arith.find_solutions(args.a, args.b, args.q, args.nmax)]
    cp = arith.coprime_power(args.a, args.q)
    per = arith.periodicity(args.a, args.b, args.q) if args.b >= 1 else None
    gs = arith.geometric_sequence(args.a, args.b, args.q)
    lines.append({
        "coprime_power": {"eta": cp.eta, "a_prime": cp.a_prime},
        "periodicity": None if per is None else {"mu": per[0], "kappa": per[1]},
        "geometric_sequence": None if gs is None else {"N0": gs.N0, "mu": gs.mu},
    })
    return lines


def _contexts(args, k):
    return random_contexts(k, count=args.contexts, seed=args.seed)


def cmd_pump_find(args):
    model = io.load_graph(args.model).graph
    t = io.load_td(args.decomp)
    triple = find_pump(model, t, io.read_formula(args.psi), _contexts(args, t.k + 1),
                       deterministic=args.deterministic, disjoint_ports=args.disjoint_ports)
    if triple is None:
        raise VerificationFailed({"found": False})
    if args.output:
        io.save_triple(args.output, triple)
    return {"found": True, "sizes": [len(triple.g1), len(triple.g2), len(triple.g3)], "k": triple.k}


def cmd_pump_verify(args):
    fixture = Path(args.fixture)
    triple = io.load_triple(fixture)
    psi = io.read_formula(args.psi or str(fixture / "psi.txt"))
    expected_path = fixture / "expected.json"
    expected = io.read_json(expected_path) if expected_path.exists() else {}
    l_max = args.l_max if args.l_max is not None else expected.get("l_max", 8)
    functional = args.functional or expected.get("require_functional", False)
    verdict = verify_pump(triple, psi, l_max, functional)
    result = {"verdict": verdict, "l_max": l_max, "require_functional": functional}
    if "verdict" in expected:
        result["expected"] = expected["verdict"]
    if not verdict or result.get("expected", verdict) != verdict:
        raise VerificationFailed(result)
    return result


def cmd_pump_assemble(args):
    triple = io.load_triple(args.fixture)
    g = assemble_gadgets(triple, io.load_graph(args.omega).graph, args.q)
    if args.output:
        io.save_gadgets(args.output, g)
    return {"alpha": g.alpha, "a": g.a, "b": g.b, "sizes": [len(getattr(g, n)) for n in io.GADGET_NAMES]}


def _gadgets(args):
    if args.demo:
        return demos()[args.demo].gadgets
    if not args.gadgets:
        raise AndynError("give --gadgets DIR or --demo NAME")
    return io.load_gadgets(args.gadgets)


def cmd_reduce_build(args):
    g = _gadgets(args)
    text = Path(args.formula).read_text() if Path(args.formula).is_file() else args.formula
    S = load_prop(text, args.s)
    out = compile_reduction(g, S, args.kind, args.mode, args.orient)
    doc = out.to_dict()
    doc["gadgets"] = io.gadgets_to_dict(g)
    if args.output:
        io.write_json(args.output, doc, pretty=False)
        return {"written": args.output, "n": out.layout.n, "size": out.layout.total,
                "gates": len(out.descriptor.circuit), "expected_word": out.expected_word}
    return doc


def cmd_reduce_verify(args):
    doc = io.read_json(args.output)
    out = ReductionOutput.from_dict(doc)
    g = io.load_gadgets(args.gadgets) if args.gadgets else io.gadgets_from_dict(doc["gadgets"])
    report = verify_reduction(out, g, io.read_formula(args.psi))
    if not report.ok:
        raise VerificationFailed(report.to_dict())
    return report.to_dict()


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent JSON output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized corpora")

    p = argparse.ArgumentParser(prog="andyn", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    dyn = sub.add_parser("dyn").add_subparsers(dest="action", required=True)
    x = dyn.add_parser("expand", parents=[common], help="network descriptor -> dynamics graph")
    x.add_argument("--descriptor", required=True)
    x.set_defaults(func=cmd_dyn_expand)

    mc = sub.add_parser("mc").add_subparsers(dest="action", required=True)
    x = mc.add_parser("check", parents=[common], help="evaluate a closed formula on a graph")
    x.add_argument("--psi", required=True, help="formula file or formula text")
    x.add_argument("--graph", required=True)
    x.set_defaults(func=cmd_mc_check)

    x = sub.add_parser("glue", parents=[common], help="glue graph files left to right")
    x.add_argument("files", nargs="*")
    x.add_argument("--member", action="append", default=[], metavar="KEY=FILE")
    x.add_argument("--word")
    x.set_defaults(func=cmd_glue)

    td = sub.add_parser("td").add_subparsers(dest="action", required=True)
    x = td.add_parser("validate", parents=[common])
    x.add_argument("--td", required=True)
    x.add_argument("--graph", required=True)
    x.set_defaults(func=cmd_td_validate)
    x = td.add_parser("glue", parents=[common])
    x.add_argument("files", nargs="+")
    x.set_defaults(func=cmd_td_glue)

    ar = sub.add_parser("arith").add_subparsers(dest="action", required=True)
    x = ar.add_parser("solve", parents=[common], help="solutions of a*K + b = q**N, as JSON lines")
    x.add_argument("--a", type=int, required=True)
    x.add_argument("--b", type=int, required=True)
    x.add_argument("--q", type=int, required=True)
    x.add_argument("--nmax", type=int, default=64)
    x.set_defaults(func=cmd_arith_solve, lines=True)

    pu = sub.add_parser("pump").add_subparsers(dest="action", required=True)
    x = pu.add_parser("find", parents=[common])
    x.add_argument("--model", required=True)
    x.add_argument("--decomp", required=True)
    x.add_argument("--psi", required=True)
    x.add_argument("--contexts", type=int, default=16)
    x.add_argument("--deterministic", action="store_true")
    x.add_argument("--disjoint-ports", action="store_true")
    x.add_argument("-o", "--output")
    x.set_defaults(func=cmd_pump_find)
    x = pu.add_parser("verify", parents=[common])
    x.add_argument("--fixture", required=True)
    x.add_argument("--psi")
    x.add_argument("--l-max", type=int)
    x.add_argument("--functional", action="store_true")
    x.set_defaults(func=cmd_pump_verify)
    x = pu.add_parser("assemble", parents=[common])
    x.add_argument("--fixture", required=True)
    x.add_argument("--omega", required=True)
    x.add_argument("--q", type=int)
    x.add_argument("-o", "--output")
    x.set_defaults(func=cmd_pump_assemble)

    re_ = sub.add_parser("reduce").add_subparsers(dest="action", required=True)
    x = re_.add_parser("build", parents=[common])
    x.add_argument("--gadgets")
    x.add_argument("--demo", choices=sorted(demos()))
    x.add_argument("--formula", required=True, help="formula file (infix or DIMACS) or formula text")
    x.add_argument("--s", type=int, help="number of variables, if larger than the highest index")
    x.add_argument("--mode", default="boolean", help="boolean or q:<q>")
    x.add_argument("--kind", choices=("an", "nan"), default="an")
    x.add_argument("--orient", choices=("sat", "unsat"), default="sat")
    x.add_argument("-o", "--output")
    x.set_defaults(func=cmd_reduce_build)
    x = re_.add_parser("verify", parents=[common])
    x.add_argument("--output", required=True, help="file written by 'reduce build'")
    x.add_argument("--psi", required=True)
    x.add_argument("--gadgets")
    x.set_defaults(func=cmd_reduce_verify)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    random.seed(args.seed)
    try:
        result = args.func(args)
    except VerificationFailed as exc:
        _emit(exc.payload, args)
        return 1
    except (AndynError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"andyn: error: {exc}", file=sys.stderr)
        return 2
    if getattr(args, "lines", False):
        for line in result:
            print(json.dumps(line, sort_keys=True))
    else:
        _emit(result, args)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
