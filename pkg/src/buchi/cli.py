"""Command line front end.

Exit status is 0 for success or a true verdict, 1 for false, unsatisfiable
or no witness, and 2 for usage and parse errors.
"""
from __future__ import annotations

import argparse
import sys

from . import automata as fa
from .axioms import axiom_list, check_axioms, render_bound_instance
from .compiler import OpenFormulaError, compile_formula
from .corpus import load_corpus, oracle_check
from .decision import decide, min_witness, solutions, verify_bound
from .syntax import ParseError, free_vars, parse

OK, FALSE, USAGE = 0, 1, 2


def _formula(args):
    return parse(args.formula)


def cmd_decide(args):
    verdict = decide(_formula(args), args.base, audit=args.no_minimize)
    print("true" if verdict else "false")
    return OK if verdict else FALSE


def cmd_witness(args):
    w = min_witness(_formula(args), args.base, audit=args.no_minimize)
    print("none" if w is None else w)
    return FALSE if w is None else OK


def cmd_solutions(args):
    phi = _formula(args)
    sols = solutions(phi, args.base, limit=args.max, audit=args.no_minimize)
    for s in sols:
        if isinstance(s, tuple):
            print(" ".join(f"{v}={n}" for v, n in zip(free_vars(phi), s)))
        else:
            print(s)
    return OK if sols else FALSE


def cmd_compile(args):
    phi = _formula(args)
    cf = compile_formula(phi, args.base, audit=args.no_minimize)
    if args.dot:
        print(fa.to_dot(cf.automaton, track_names=cf.var_order), end="")
    elif args.serialize:
        print(fa.dumps(cf.automaton), end="")
    else:
        print(f"tracks: {' '.join(cf.var_order) or '-'}")
        print(f"states: {cf.states}")
        print(cf.report.dumps())
    return OK


def cmd_bound_check(args):
    phi = _formula(args)
    report = verify_bound(phi, args.base)
    print(render_bound_instance(phi, args.base))
    print(report.dumps(), end="")
    return OK if report.ok else FALSE


def cmd_axioms(args):
    axioms = axiom_list(args.base)
    if not args.check:
        for a in axioms:
            print(f"{a.label}\t{a.text()}\tunchecked")
        return OK
    verdicts = check_axioms(axioms, args.base)
    for v in verdicts:
        print(v.line())
    return OK if all(v.holds for v in verdicts) else FALSE


def cmd_selftest(args):
    entries = load_corpus(args.corpus)
    failures = 0
    for e in entries:
        bases = (args.base,) if args.base_given else e.bases
        for p in bases:
            bad = oracle_check(e, p, n_max=args.n_max, bound=args.oracle_bound)
            failures += bool(bad)
            print(f"{'ok' if not bad else 'FAIL'}\tp={p}\tline {e.line}\t{e.text}")
            for m in bad[:5]:
                print(f"  {m}", file=sys.stderr)
    print(f"{failures} failing checks")
    return OK if failures == 0 else FALSE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--base", "-p", type=int, default=None, help="base p >= 2 (default 2)")
    common.add_argument("--no-minimize", action="store_true", help="audit mode: keep unminimized automata")
    common.add_argument("--oracle-bound", type=int, default=None, metavar="B", help="quantifier bound for selftest")

    parser = argparse.ArgumentParser(prog="buchi", description="Decision procedure for (N, S, +, 0, V_p).")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help, formula=True):
        sp = sub.add_parser(name, parents=[common], help=help)
        if formula:
            sp.add_argument("formula")
        sp.set_defaults(func=fn)
        return sp

    add("decide", cmd_decide, "decide a sentence")
    add("witness", cmd_witness, "least solution of a one-variable formula")
    add("solutions", cmd_solutions, "list solutions up to --max").add_argument("--max", type=int, default=100)
    sp = add("compile", cmd_compile, "compile and print the automaton")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--dot", action="store_true")
    g.add_argument("--serialize", action="store_true")
    add("bound-check", cmd_bound_check, "audit the witness bound of a one-variable formula")
    add("axioms", cmd_axioms, "list the fixed axioms", formula=False).add_argument("--check", action="store_true")
    sp = add("selftest", cmd_selftest, "compare automata with the bounded oracle on a corpus", formula=False)
    sp.add_argument("corpus", nargs="?", default=None, help="corpus file (default: bundled corpus)")
    sp.add_argument("--n-max", type=int, default=2000)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.base_given = args.base is not None
    if args.base is None:
        args.base = 2
    if args.base < 2:
        parser.error("--base must be at least 2")
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        if e.text:
            print(f"  {e.text}\n  {' ' * e.pos}^", file=sys.stderr)
        return USAGE
    except (OpenFormulaError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
