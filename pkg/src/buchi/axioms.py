"""The axioms S0-S2, A0-A1, V0-V3 and the bound scheme, checked in the standard model."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .bounds import TowerInt, n_phi
from .decision import decide, verify_bound
from .syntax import (
    Add,
    Eq,
    Exists,
    Imp,
    Not,
    Or,
    Succ,
    Var,
    Vp,
    Zero,
    complexity,
    conj,
    free_vars,
    numeral,
    parse,
    pretty,
    scalar,
    universal_closure,
)


@dataclass(frozen=True)
class AxiomInstance:
    label: str
    sentence: object
    numeral_bound: Optional[TowerInt] = None

    def text(self) -> str:
        return pretty(self.sentence)


def axiom_list(p: int) -> List[AxiomInstance]:
    """The nine fixed axioms as universally closed sentences."""
    if p < 2:
        raise ValueError("base must be >= 2")
    x, y = Var("x"), Var("y")
    one = numeral(1)
    forms = [
        ("S0", Imp(Eq(Succ(x), Succ(y)), Eq(x, y))),
        ("S1", Not(Eq(Zero(), Succ(x)))),
        ("S2", Or(Eq(x, Zero()), Exists("y", Eq(x, Succ(y))))),
        ("A0", Eq(Add(x, Zero()), x)),
        ("A1", Eq(Add(x, Succ(y)), Succ(Add(x, y)))),
        ("V0", Eq(Vp(Zero()), Zero())),
        ("V1", Eq(Vp(one), one)),
        ("V2", Eq(Vp(scalar(p, x)), scalar(p, Vp(x)))),
        ("V3", conj(*(Eq(Vp(Add(scalar(p, x), numeral(i))), one) for i in range(1, p)))),
    ]
    return [AxiomInstance(label, universal_closure(phi)) for label, phi in forms]


@dataclass
class AxiomVerdict:
    axiom: AxiomInstance
    holds: bool

    def line(self) -> str:
        return f"{self.axiom.label}\t{self.axiom.text()}\t{'true' if self.holds else 'false'}"


def check_axioms(axioms: List[AxiomInstance], p: int) -> List[AxiomVerdict]:
    return [AxiomVerdict(a, decide(a.sentence, p)) for a in axioms]


def check_base_axioms(p: int) -> List[AxiomVerdict]:
    return check_axioms(axiom_list(p), p)


def bound_instance(phi, p: int) -> AxiomInstance:
    """The scheme instance for a one-variable formula, with its symbolic numeral bound."""
    fv = free_vars(phi)
    if len(fv) != 1:
        raise ValueError("the bound scheme applies to formulas with exactly one free variable")
    length = complexity(phi).length
    return AxiomInstance(f"Bound[{pretty(phi)}]", phi, n_phi(p, length))


def render_bound_instance(phi, p: int) -> str:
    """``E x. phi -> E x <= [n]. phi`` with n printed in tower notation."""
    inst = bound_instance(phi, p)
    x = free_vars(phi)[0]
    body = pretty(phi)
    return f"E {x}. {body} -> E {x} <= [{inst.numeral_bound}]. {body}"


def check_bound_instance(phi, p: int) -> bool:
    """Semantic check through the witness chain ``witness < p**states <= n_phi``."""
    return verify_bound(phi, p).ok


def parse_axiom(text: str, label: str = "custom") -> AxiomInstance:
    return AxiomInstance(label, universal_closure(parse(text)))


