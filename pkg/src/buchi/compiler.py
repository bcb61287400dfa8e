"""Compile flat formulas to padding-closed DFAs, auditing state counts on the way.

The recursion mirrors the classical automata-theoretic argument: atoms are
the base automata, negation swaps accepting states, conjunction cylindrifies
both sides onto the union of their variables and takes the product,
disjunction and implication are reduced to those two, an existential
quantifier erases a track and determinizes, and a universal one is
``!E x. !psi``.

With ``audit=True`` nothing is minimized and every node records whether its
state count stays within ``tower2(N, 3)``, N being the node's number of
binary connectives and quantifiers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

from . import automata as fa
from .base_automata import add_automaton, eq_automaton, succ_automaton, v_automaton
from .bounds import TowerInt, cmp, tower2
from .syntax import (
    AddEq,
    And,
    Exists,
    Forall,
    Imp,
    Not,
    Or,
    SuccEq,
    VarEq,
    VpEq,
    complexity,
    flatten,
    free_vars,
    is_flat,
    render,
)

_ATOM_AUTOMATA = {VarEq: eq_automaton, SuccEq: succ_automaton, AddEq: add_automaton, VpEq: v_automaton}


@dataclass
class ReportNode:
    fragment: str
    n_connectives: int
    states: int
    bound: TowerInt
    children: List["ReportNode"] = field(default_factory=list)

    @property
    def bound_ok(self) -> bool:
        return cmp(self.states, self.bound) <= 0

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def violations(self) -> List["ReportNode"]:
        return [node for node in self.walk() if not node.bound_ok]

    def dumps(self, indent: int = 0, width: int = 60) -> str:
        frag = self.fragment if len(self.fragment) <= width else self.fragment[: width - 3] + "..."
        line = (
            f"{'  ' * indent}N={self.n_connectives} states={self.states} "
            f"bound={self.bound} ok={str(self.bound_ok).lower()} :: {frag}"
        )
        return "\n".join([line] + [c.dumps(indent + 1, width) for c in self.children])


@dataclass
class CompiledFormula:
    automaton: fa.Automaton
    var_order: Tuple[str, ...]
    report: ReportNode
    audit: bool = False

    @property
    def states(self) -> int:
        return self.automaton.n_states


def _align(M: fa.Automaton, vars_: Tuple[str, ...], target: Tuple[str, ...]) -> fa.Automaton:
    if vars_ == target:
        return M
    return fa.cylindrify(M, [target.index(v) for v in vars_], len(target))


class _Compiler:
    def __init__(self, p: int, audit: bool):
        self.p = p
        self.audit = audit

    def tidy(self, M):
        return M if self.audit else fa.minimize(M)

    def node(self, phi, M, vars_, children):
        n = complexity(phi).n_connectives
        return M, vars_, ReportNode(render(phi), n, M.n_states, tower2(n, 3), children)

    def exists(self, M, vars_, x):
        i = vars_.index(x)
        E = fa.determinize(fa.zero_saturate(fa.project(M, i)))
        return self.tidy(E), vars_[:i] + vars_[i + 1 :]

    def conjunction(self, A, av, B, bv):
        # both operands already deterministic
        union = tuple(sorted(set(av) | set(bv)))
        M = fa.intersect(_align(A, av, union), _align(B, bv, union))
        return self.tidy(M), union

    def run(self, phi):
        if isinstance(phi, tuple(_ATOM_AUTOMATA)):
            args = phi.args
            vars_ = tuple(sorted(args))
            M = _align(_ATOM_AUTOMATA[type(phi)](self.p), args, vars_)
            return self.node(phi, M, vars_, [])
        if isinstance(phi, Not):
            M, vars_, r = self.run(phi.phi)
            return self.node(phi, fa.complement(M), vars_, [r])
        if isinstance(phi, (And, Or, Imp)):
            A, av, ra = self.run(phi.phi)
            B, bv, rb = self.run(phi.psi)
            if isinstance(phi, And):
                M, vars_ = self.conjunction(A, av, B, bv)
            elif isinstance(phi, Or):
                M, vars_ = self.conjunction(fa.complement(A), av, fa.complement(B), bv)
                M = fa.complement(M)
            else:
                M, vars_ = self.conjunction(A, av, fa.complement(B), bv)
                M = fa.complement(M)
            return self.node(phi, M, vars_, [ra, rb])
        if isinstance(phi, Exists):
            M, vars_, r = self.run(phi.phi)
            if phi.var in vars_:
                M, vars_ = self.exists(M, vars_, phi.var)
            return self.node(phi, M, vars_, [r])
        if isinstance(phi, Forall):
            M, vars_, r = self.run(phi.phi)
            if phi.var in vars_:
                M, vars_ = self.exists(fa.complement(M), vars_, phi.var)
                M = fa.complement(M)
            return self.node(phi, M, vars_, [r])
        raise TypeError(f"not a flat formula: {phi!r}")


def compile_flat(phi, p: int = 2, audit: bool = False) -> CompiledFormula:
    """Compile a flat formula; track i of the result is ``var_order[i]``."""
    if not is_flat(phi):
        raise ValueError("compile_flat needs a flat formula; use compile_formula or flatten first")
    M, vars_, report = _Compiler(p, audit).run(phi)
    assert vars_ == free_vars(phi)
    return CompiledFormula(M, vars_, report, audit)


def compile_formula(phi, p: int = 2, audit: bool = False) -> CompiledFormula:
    """Flatten if necessary, then compile."""
    return compile_flat(phi if is_flat(phi) else flatten(phi), p, audit)


class OpenFormulaError(ValueError):
    """A sentence was required but the formula has free variables."""


def compile_sentence(phi, p: int = 2, audit: bool = False) -> CompiledFormula:
    fv = free_vars(phi)
    if fv:
        raise OpenFormulaError(f"formula has free variables: {', '.join(fv)}")
    return compile_formula(phi, p, audit)
