"""Formulas over the signature (S, +, 0, V): AST, parser, renderer, flattening.

Grammar (ASCII)::

    formula := iff
    iff     := imp ('<->' imp)*
    imp     := or ('->' imp)?              right associative
    or      := and ('|' and)*
    and     := unary ('&' unary)*
    unary   := '!' unary | quant | atom | '(' formula ')'
    quant   := ('E' | 'A' | 'exists' | 'forall') VAR '.' formula
    atom    := term ('=' | '<=' | '<') term
    term    := mul ('+' mul)*
    mul     := NUM '*' prim | prim
    prim    := NUM | VAR | 'S' '(' term ')' | 'V' '(' term ')' | '(' term ')'

Numerals, ``k*t``, ``<=`` and ``<`` are expanded while parsing, so the AST only
contains the official symbols.  ``<->`` is kept as :class:`Iff` and removed by
:func:`desugar`.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Dict, Iterator, Tuple, Union

# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Succ:
    t: "Term"


@dataclass(frozen=True)
class Add:
    t: "Term"
    s: "Term"


@dataclass(frozen=True)
class Vp:
    t: "Term"


Term = Union[Zero, Var, Succ, Add, Vp]

# ------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Eq:
    t: Term
    s: Term


@dataclass(frozen=True)
class Not:
    phi: "Formula"


@dataclass(frozen=True)
class And:
    phi: "Formula"
    psi: "Formula"


@dataclass(frozen=True)
class Or:
    phi: "Formula"
    psi: "Formula"


@dataclass(frozen=True)
class Imp:
    phi: "Formula"
    psi: "Formula"


@dataclass(frozen=True)
class Iff:
    phi: "Formula"
    psi: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    phi: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    phi: "Formula"


# flat atoms: every argument is a variable and the arguments are pairwise distinct


@dataclass(frozen=True)
class VarEq:
    x: str
    y: str

    @property
    def args(self):
        return (self.x, self.y)


@dataclass(frozen=True)
class SuccEq:
    """``S(x) = y``"""

    x: str
    y: str

    @property
    def args(self):
        return (self.x, self.y)


@dataclass(frozen=True)
class AddEq:
    """``x + y = z``"""

    x: str
    y: str
    z: str

    @property
    def args(self):
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class VpEq:
    """``V(x) = y``"""

    x: str
    y: str

    @property
    def args(self):
        return (self.x, self.y)


FLAT_ATOMS = (VarEq, SuccEq, AddEq, VpEq)
BINARY = (And, Or, Imp, Iff)
QUANTIFIERS = (Exists, Forall)

Formula = Union[Eq, Not, And, Or, Imp, Iff, Exists, Forall, VarEq, SuccEq, AddEq, VpEq]


def numeral(n: int) -> Term:
    t: Term = Zero()
    for _ in range(n):
        t = Succ(t)
    return t


def scalar(k: int, t: Term) -> Term:
    """``k t``: the left-nested sum of k copies of t (0 for k = 0)."""
    if k == 0:
        return Zero()
    out = t
    for _ in range(k - 1):
        out = Add(out, t)
    return out


def conj(*parts: Formula) -> Formula:
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def as_numeral(t: Term):
    """n if t is S^n(0), else None."""
    n = 0
    while isinstance(t, Succ):
        t, n = t.t, n + 1
    return n if isinstance(t, Zero) else None


# ------------------------------------------------------------ variables


def term_vars(t: Term) -> set:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Zero):
        return set()
    if isinstance(t, Add):
        return term_vars(t.t) | term_vars(t.s)
    return term_vars(t.t)


def _free(phi) -> set:
    if isinstance(phi, Eq):
        return term_vars(phi.t) | term_vars(phi.s)
    if isinstance(phi, FLAT_ATOMS):
        return set(phi.args)
    if isinstance(phi, Not):
        return _free(phi.phi)
    if isinstance(phi, BINARY):
        return _free(phi.phi) | _free(phi.psi)
    if isinstance(phi, QUANTIFIERS):
        return _free(phi.phi) - {phi.var}
    raise TypeError(f"not a formula: {phi!r}")


def free_vars(phi) -> Tuple[str, ...]:
    """Free variables in track order (lexicographic by name)."""
    return tuple(sorted(_free(phi)))


def is_quantifier_free(phi) -> bool:
    if isinstance(phi, QUANTIFIERS):
        return False
    if isinstance(phi, Not):
        return is_quantifier_free(phi.phi)
    if isinstance(phi, BINARY):
        return is_quantifier_free(phi.phi) and is_quantifier_free(phi.psi)
    return True


# ------------------------------------------------------------- rendering


def render_term(t: Term) -> str:
    n = as_numeral(t)
    if n is not None:
        return str(n)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Succ):
        return f"S({render_term(t.t)})"
    if isinstance(t, Vp):
        return f"V({render_term(t.t)})"
    return f"({render_term(t.t)} + {render_term(t.s)})"


_OPS = {And: "&", Or: "|", Imp: "->", Iff: "<->"}


def render(phi) -> str:
    """Canonical, fully parenthesized text; ``parse(render(phi)) == phi``."""
    if isinstance(phi, Eq):
        return f"({render_term(phi.t)} = {render_term(phi.s)})"
    if isinstance(phi, VarEq):
        return f"({phi.x} = {phi.y})"
    if isinstance(phi, SuccEq):
        return f"(S({phi.x}) = {phi.y})"
    if isinstance(phi, AddEq):
        return f"(({phi.x} + {phi.y}) = {phi.z})"
    if isinstance(phi, VpEq):
        return f"(V({phi.x}) = {phi.y})"
    if isinstance(phi, Not):
        return f"!{render(phi.phi)}"
    if isinstance(phi, BINARY):
        return f"({render(phi.phi)} {_OPS[type(phi)]} {render(phi.psi)})"
    if isinstance(phi, QUANTIFIERS):
        q = "E" if isinstance(phi, Exists) else "A"
        return f"({q} {phi.var}. {render(phi.phi)})"
    raise TypeError(f"not a formula: {phi!r}")


_LEVEL = {Iff: 0, Imp: 1, Or: 2, And: 3}


def pretty_term(t: Term, nested: bool = False) -> str:
    n = as_numeral(t)
    if n is not None:
        return str(n)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Succ):
        return f"S({pretty_term(t.t)})"
    if isinstance(t, Vp):
        return f"V({pretty_term(t.t)})"
    s = f"{pretty_term(t.t)} + {pretty_term(t.s, nested=True)}"
    return f"({s})" if nested else s


def pretty(phi, level: int = 0, tail: bool = True) -> str:
    """Text with as few parentheses as the grammar allows; parses back to phi.

    ``tail`` says whether nothing follows in the enclosing text, which decides
    if a quantifier (whose scope runs to the right) needs parentheses.
    """
    if isinstance(phi, Eq):
        return f"{pretty_term(phi.t)} = {pretty_term(phi.s)}"
    if isinstance(phi, FLAT_ATOMS):
        return render(phi)[1:-1]
    if isinstance(phi, Not):
        if isinstance(phi.phi, (Eq,) + FLAT_ATOMS):
            return f"!({pretty(phi.phi)})"
        return "!" + pretty(phi.phi, 4, tail)
    if isinstance(phi, QUANTIFIERS):
        q = "E" if isinstance(phi, Exists) else "A"
        text = f"{q} {phi.var}. {pretty(phi.phi, 0, True)}"
        return text if tail else f"({text})"
    if isinstance(phi, BINARY):
        own = _LEVEL[type(phi)]
        if own < level:
            return f"({pretty(phi, 0, True)})"
        if isinstance(phi, Imp):
            left, right = own + 1, own
        else:
            left, right = own, own + 1
        return f"{pretty(phi.phi, left, False)} {_OPS[type(phi)]} {pretty(phi.psi, right, tail)}"
    raise TypeError(f"not a formula: {phi!r}")


# ------------------------------------------------------------- measures


@dataclass(frozen=True)
class Complexity:
    n_connectives: int
    length: int


def desugar(phi):
    """Replace ``a <-> b`` by ``(a -> b) & (b -> a)`` everywhere."""
    if isinstance(phi, Iff):
        a, b = desugar(phi.phi), desugar(phi.psi)
        return And(Imp(a, b), Imp(b, a))
    if isinstance(phi, Not):
        return Not(desugar(phi.phi))
    if isinstance(phi, BINARY):
        return type(phi)(desugar(phi.phi), desugar(phi.psi))
    if isinstance(phi, QUANTIFIERS):
        return type(phi)(phi.var, desugar(phi.phi))
    return phi


def _term_length(t: Term) -> int:
    # tokens of the expanded rendering: S ( t ) / V ( t ) / ( t + s )
    if isinstance(t, (Zero, Var)):
        return 1
    if isinstance(t, Add):
        return 3 + _term_length(t.t) + _term_length(t.s)
    return 3 + _term_length(t.t)


def _measure(phi) -> Tuple[int, int]:
    if isinstance(phi, Eq):
        return 0, 3 + _term_length(phi.t) + _term_length(phi.s)
    if isinstance(phi, FLAT_ATOMS):
        return 0, len(tokenize_expanded(render(phi)))
    if isinstance(phi, Not):
        n, length = _measure(phi.phi)
        return n, length + 1
    if isinstance(phi, BINARY):
        n0, l0 = _measure(phi.phi)
        n1, l1 = _measure(phi.psi)
        return n0 + n1 + 1, l0 + l1 + 3
    if isinstance(phi, QUANTIFIERS):
        n, length = _measure(phi.phi)
        return n + 1, length + 5
    raise TypeError(f"not a formula: {phi!r}")


def complexity(phi) -> Complexity:
    """Connective/quantifier count (negation excluded) and token length.

    The length counts tokens of the canonical rendering of the ``<->``-free
    formula with every numeral written out as ``S(...S(0)...)``.
    """
    n, length = _measure(desugar(phi))
    return Complexity(n, length)


def tokenize_expanded(text: str):
    """Tokens of a rendering, with numerals spelled as S-chains (helper for tests)."""
    out = []
    for tok in re.findall(r"<->|->|<=|[A-Za-z_#][A-Za-z0-9_#]*|\d+|\S", text):
        if tok.isdigit():
            n = int(tok)
            out.extend(["S", "("] * n + ["0"] + [")"] * n)
        else:
            out.append(tok)
    return out


# --------------------------------------------------------------- parsing


class ParseError(ValueError):
    """Syntax error; ``pos`` is the character offset in the input."""

    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos
        self.text = text


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op><->|->|<=|[()=<+*!&|.]))"
)
_KEYWORDS = {"S", "V", "E", "A", "exists", "forall"}


def _tokenize(text: str):
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            if rest.strip() == "":
                break
            bad = pos + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        tok = m.group(kind)
        start = m.start(kind)
        if kind == "name" and tok not in _KEYWORDS and not re.fullmatch(r"[a-z][A-Za-z0-9_]*", tok):
            raise ParseError(f"bad identifier {tok!r}", start, text)
        toks.append((kind, tok, start))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def error(self, message):
        kind, tok, pos = self.peek()
        found = "end of input" if kind == "eof" else repr(tok)
        raise ParseError(f"{message}, found {found}", pos, self.text)

    def accept(self, tok) -> bool:
        if self.peek()[1] == tok and self.peek()[0] != "eof":
            self.i += 1
            return True
        return False

    def expect(self, tok):
        if not self.accept(tok):
            self.error(f"expected {tok!r}")

    def variable(self) -> str:
        kind, tok, _ = self.peek()
        if kind != "name" or tok in _KEYWORDS:
            self.error("expected a variable")
        self.i += 1
        return tok

    # formulas

    def formula(self):
        phi = self.imp()
        while self.accept("<->"):
            phi = Iff(phi, self.imp())
        return phi

    def imp(self):
        phi = self.disj()
        if self.accept("->"):
            return Imp(phi, self.imp())
        return phi

    def disj(self):
        phi = self.conj()
        while self.accept("|"):
            phi = Or(phi, self.conj())
        return phi

    def conj(self):
        phi = self.unary()
        while self.accept("&"):
            phi = And(phi, self.unary())
        return phi

    def unary(self):
        kind, tok, _ = self.peek()
        if self.accept("!"):
            return Not(self.unary())
        if kind == "name" and tok in ("E", "A", "exists", "forall"):
            self.i += 1
            x = self.variable()
            self.expect(".")
            body = self.formula()
            return Exists(x, body) if tok in ("E", "exists") else Forall(x, body)
        if tok == "(" and kind == "op":
            start = self.i
            try:
                return self.atom()
            except ParseError as atom_err:
                self.i = start
                self.expect("(")
                try:
                    phi = self.formula()
                    self.expect(")")
                except ParseError as formula_err:
                    # report whichever reading got further
                    raise max(atom_err, formula_err, key=lambda e: e.pos) from None
                return phi
        return self.atom()

    def atom(self):
        t = self.term()
        if self.accept("="):
            return Eq(t, self.term())
        if self.accept("<="):
            return _le(t, self.term())
        if self.accept("<"):
            return _le(Succ(t), self.term())
        self.error("expected '=', '<=' or '<'")

    # terms

    def term(self):
        t = self.mul()
        while self.accept("+"):
            t = Add(t, self.mul())
        return t

    def mul(self):
        kind, tok, _ = self.peek()
        if kind == "num" and self.toks[self.i + 1][1] == "*":
            self.i += 2
            return scalar(int(tok), self.prim())
        return self.prim()

    def prim(self):
        kind, tok, _ = self.peek()
        if kind == "num":
            self.i += 1
            return numeral(int(tok))
        if kind == "name" and tok in ("S", "V"):
            self.i += 1
            self.expect("(")
            t = self.term()
            self.expect(")")
            return Succ(t) if tok == "S" else Vp(t)
        if kind == "name" and tok not in _KEYWORDS:
            self.i += 1
            return Var(tok)
        if self.accept("("):
            t = self.term()
            self.expect(")")
            return t
        self.error("expected a term")


def _le(t: Term, s: Term) -> Formula:
    used = term_vars(t) | term_vars(s)
    z = next(n for n in itertools.chain(["z"], (f"z{i}" for i in itertools.count(1))) if n not in used)
    return Exists(z, Eq(Add(t, Var(z)), s))


def parse(text: str) -> Formula:
    p = _Parser(text)
    phi = p.formula()
    if p.peek()[0] != "eof":
        p.error("unexpected trailing input")
    return phi


# -------------------------------------------------------------- flattening


class _Names:
    def __init__(self):
        self.count = itertools.count()

    def bound(self, x: str) -> str:
        return f"{x}#{next(self.count)}"

    def fresh(self) -> str:
        return f"#{next(self.count)}"


def _subst(t: Term, ren: Dict[str, str]) -> Term:
    if isinstance(t, Var):
        return Var(ren.get(t.name, t.name))
    if isinstance(t, Zero):
        return t
    if isinstance(t, Add):
        return Add(_subst(t.t, ren), _subst(t.s, ren))
    return type(t)(_subst(t.t, ren))


def flatten(phi):
    """Equivalent formula whose atoms are VarEq/SuccEq/AddEq/VpEq over distinct variables.

    Bound variables are renamed apart (``x#3``) and every compound subterm gets
    a fresh existentially bound name (``#7``).  ``x = 0`` is expressed as
    ``!E c. S(c) = x``.
    """
    names = _Names()
    return _flat(desugar(phi), {}, names)


def _flat(phi, ren, names):
    if isinstance(phi, Eq):
        return _flat_eq(_subst(phi.t, ren), _subst(phi.s, ren), names)
    if isinstance(phi, FLAT_ATOMS):
        return type(phi)(*(ren.get(a, a) for a in phi.args))
    if isinstance(phi, Not):
        return Not(_flat(phi.phi, ren, names))
    if isinstance(phi, BINARY):
        return type(phi)(_flat(phi.phi, ren, names), _flat(phi.psi, ren, names))
    if isinstance(phi, QUANTIFIERS):
        x = names.bound(phi.var)
        return type(phi)(x, _flat(phi.phi, {**ren, phi.var: x}, names))
    raise TypeError(f"not a formula: {phi!r}")


def _flat_eq(t, s, names):
    if isinstance(s, Var):
        return _define(t, s.name, names)
    if isinstance(t, Var):
        return _define(s, t.name, names)
    u = names.fresh()
    return Exists(u, And(_define(t, u, names), _define(s, u, names)))


def _define(t: Term, v: str, names) -> Formula:
    """Flat formula stating ``v = t``."""
    if isinstance(t, Var):
        if t.name == v:
            c = names.fresh()
            return Exists(c, VarEq(v, c))
        return VarEq(t.name, v)
    if isinstance(t, Zero):
        c = names.fresh()
        return Not(Exists(c, SuccEq(c, v)))
    if isinstance(t, Succ):
        return _apply(SuccEq, [t.t], v, names)
    if isinstance(t, Vp):
        return _apply(VpEq, [t.t], v, names)
    return _apply(AddEq, [t.t, t.s], v, names)


def _apply(atom, args, v, names):
    # name compound arguments, sharing identical ones
    named = {}
    defs = []
    arg_names = []
    for a in args:
        if isinstance(a, Var):
            arg_names.append(a.name)
        elif a in named:
            arg_names.append(named[a])
        else:
            u = names.fresh()
            named[a] = u
            defs.append((u, a))
            arg_names.append(u)
    # repeated variables get linked copies
    seen = set()
    copies = []
    final = []
    for x in arg_names + [v]:
        if x in seen:
            c = names.fresh()
            copies.append((c, x))
            final.append(c)
        else:
            seen.add(x)
            final.append(x)
    body: Formula = atom(*final)
    for c, x in reversed(copies):
        body = Exists(c, And(VarEq(x, c), body))
    for u, a in reversed(defs):
        body = Exists(u, And(_define(a, u, names), body))
    return body


def atoms(phi) -> Iterator:
    if isinstance(phi, (Eq,) + FLAT_ATOMS):
        yield phi
    elif isinstance(phi, Not):
        yield from atoms(phi.phi)
    elif isinstance(phi, BINARY):
        yield from atoms(phi.phi)
        yield from atoms(phi.psi)
    elif isinstance(phi, QUANTIFIERS):
        yield from atoms(phi.phi)


def is_flat(phi) -> bool:
    if isinstance(phi, Iff):
        return False
    return all(isinstance(a, FLAT_ATOMS) and len(set(a.args)) == len(a.args) for a in atoms(phi))


def universal_closure(phi) -> Formula:
    for x in reversed(free_vars(phi)):
        phi = Forall(x, phi)
    return phi
