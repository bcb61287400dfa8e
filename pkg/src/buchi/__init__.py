"""Automata-based decision procedure for Büchi arithmetic (N, S, +, 0, V_p)."""
from .automata import Automaton
from .axioms import axiom_list, check_base_axioms, render_bound_instance
from .bounds import Exact, Tower, TowerInt, cmp, n_phi, power, tower2
from .compiler import CompiledFormula, compile_flat, compile_formula, compile_sentence
from .decision import bounded_eval, decide, min_witness, solutions, verify_bound
from .encoding import DigitWord, digits, v_p, value, zip_pad
from .syntax import ParseError, complexity, flatten, free_vars, parse, pretty, render

__all__ = [
    "Automaton",
    "DigitWord",
    "CompiledFormula",
    "Exact",
    "ParseError",
    "Tower",
    "TowerInt",
    "axiom_list",
    "bounded_eval",
    "check_base_axioms",
    "cmp",
    "compile_flat",
    "compile_formula",
    "compile_sentence",
    "complexity",
    "decide",
    "digits",
    "flatten",
    "free_vars",
    "min_witness",
    "n_phi",
    "parse",
    "power",
    "pretty",
    "render",
    "render_bound_instance",
    "solutions",
    "tower2",
    "v_p",
    "value",
    "verify_bound",
    "zip_pad",
]
