"""Deciding sentences, extracting witnesses, and the bounded brute-force oracle."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from . import automata as fa
from .bounds import TowerInt, cmp, n_phi, power, tower2
from .compiler import CompiledFormula, OpenFormulaError, compile_formula, compile_sentence
from .encoding import v_p, value
from .syntax import (
    Add,
    AddEq,
    And,
    Eq,
    Exists,
    Forall,
    Iff,
    Imp,
    Not,
    Or,
    Succ,
    SuccEq,
    Var,
    VarEq,
    Vp,
    VpEq,
    Zero,
    complexity,
    flatten,
    free_vars,
    is_quantifier_free,
    term_vars,
)


class UnboundVariable(KeyError):
    pass


def decide(phi, p: int = 2, audit: bool = False) -> bool:
    """Truth of a sentence in (N, S, +, 0, V_p)."""
    cf = compile_sentence(phi, p, audit)
    # arity 0 and padding closed: nonempty iff the empty word is accepted
    return bool(cf.automaton.accepting[cf.automaton.initial_state])


def _one_var(phi):
    fv = free_vars(phi)
    if len(fv) != 1:
        raise ValueError(f"expected exactly one free variable, found {len(fv)}: {fv}")
    return fv[0]


def _least(cf: CompiledFormula) -> Optional[int]:
    w = fa.least_accepted(cf.automaton)
    return None if w is None else value(w)[0]


def min_witness(phi, p: int = 2, audit: bool = False) -> Optional[int]:
    """Least n with phi(n), or None when phi is unsatisfiable."""
    _one_var(phi)
    return _least(compile_formula(phi, p, audit))


def solutions(phi, p: int = 2, limit: int = 100, audit: bool = False) -> list:
    """All solutions with every component <= limit, ascending.

    One free variable gives a list of ints, several give tuples ordered by
    their free variables' names.
    """
    fv = free_vars(phi)
    if len(fv) > 3:
        raise ValueError("solutions supports at most three free variables")
    M = compile_formula(phi, p, audit).automaton
    k = len(fv)
    if k == 0:
        return [()] if M.accepting[M.initial_state] else []
    live = fa.coreachable(M)
    table = fa.digit_table(p, k)
    length = len(np.base_repr(limit, p)) if limit > 0 else 0
    states = np.array([M.initial_state], dtype=np.int64)
    vals = np.zeros((1, k), dtype=np.int64)
    scale = 1
    for _ in range(length):
        s = M.delta[states].reshape(-1)
        v = (vals[:, None, :] + table[None, :, :] * scale).reshape(-1, k)
        keep = live[s] & (v <= limit).all(axis=1)
        states, vals = s[keep], v[keep]
        scale *= p
    vals = vals[M.accepting[states]]
    rows = sorted({tuple(int(x) for x in row) for row in vals})
    return [r[0] for r in rows] if k == 1 else rows


@dataclass
class BoundReport:
    formula: object
    base: int
    states: int
    min_witness: Optional[int]
    p_pow_states: TowerInt
    n_phi: TowerInt
    length: int
    n_connectives_flat: int
    witness_le_p_pow_states: bool
    witness_le_n_phi: bool
    states_le_tower: bool
    flat_le_length: bool
    node_violations: int

    @property
    def ok(self) -> bool:
        return self.witness_le_p_pow_states and self.witness_le_n_phi and self.states_le_tower

    def dumps(self) -> str:
        w = "none" if self.min_witness is None else str(self.min_witness)
        rows = [
            ("base", self.base),
            ("length", self.length),
            ("n_connectives_flat", self.n_connectives_flat),
            ("states", self.states),
            ("min_witness", w),
            ("p_pow_states", self.p_pow_states),
            ("n_phi", self.n_phi),
            ("witness_lt_p_pow_states", self.witness_le_p_pow_states),
            ("witness_le_n_phi", self.witness_le_n_phi),
            ("states_le_tower", self.states_le_tower),
            ("flat_le_length", self.flat_le_length),
            ("node_violations", self.node_violations),
        ]
        return "\n".join(f"{k}: {str(v).lower() if isinstance(v, bool) else v}" for k, v in rows) + "\n"


def verify_bound(phi, p: int = 2) -> BoundReport:
    """Check the witness chain ``witness < p**states <= p**(2_|phi|^3)`` with an unminimized DFA."""
    _one_var(phi)
    flat = flatten(phi)
    cf = compile_formula(flat, p, audit=True)
    states = cf.states
    length = complexity(phi).length
    n_flat = complexity(flat).n_connectives
    w = _least(cf)
    pps = power(p, states)
    bound = n_phi(p, length)
    return BoundReport(
        formula=phi,
        base=p,
        states=states,
        min_witness=w,
        p_pow_states=pps,
        n_phi=bound,
        length=length,
        n_connectives_flat=n_flat,
        # strict: a witness has at most `states - 1` digits
        witness_le_p_pow_states=w is None or cmp(w, pps) < 0,
        witness_le_n_phi=w is None or cmp(w, bound) <= 0,
        states_le_tower=cmp(states, tower2(length, 3)) <= 0,
        flat_le_length=n_flat <= length,
        node_violations=len(cf.report.violations()),
    )


# -- closed terms and quantifier-free sentences -----------------------------


def eval_closed_term(t, p: int = 2) -> int:
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Var):
        raise OpenFormulaError(f"term mentions variable {t.name}")
    if isinstance(t, Succ):
        return eval_closed_term(t.t, p) + 1
    if isinstance(t, Add):
        return eval_closed_term(t.t, p) + eval_closed_term(t.s, p)
    if isinstance(t, Vp):
        return v_p(eval_closed_term(t.t, p), p)
    raise TypeError(f"not a term: {t!r}")


def decide_qf_sentence(theta, p: int = 2) -> bool:
    if not is_quantifier_free(theta):
        raise ValueError("formula has a quantifier")
    if free_vars(theta):
        raise OpenFormulaError(f"formula has free variables: {', '.join(free_vars(theta))}")
    return _qf(theta, p)


def _qf(theta, p):
    if isinstance(theta, Eq):
        return eval_closed_term(theta.t, p) == eval_closed_term(theta.s, p)
    if isinstance(theta, Not):
        return not _qf(theta.phi, p)
    a, b = _qf(theta.phi, p), _qf(theta.psi, p)
    if isinstance(theta, And):
        return a and b
    if isinstance(theta, Or):
        return a or b
    if isinstance(theta, Imp):
        return (not a) or b
    if isinstance(theta, Iff):
        return a == b
    raise TypeError(f"not a formula: {theta!r}")


# -- bounded brute-force evaluation -----------------------------------------


def _vp_array(a, p):
    a = np.asarray(a, dtype=np.int64)
    out = np.where(a > 0, 1, 0).astype(np.int64)
    m = a.copy()
    mask = (m > 0) & (m % p == 0)
    while mask.any():
        out = np.where(mask, out * p, out)
        m = np.where(mask, m // p, m)
        mask = (m > 0) & (m % p == 0)
    return out


class _Evaluator:
    """Evaluate with every variable bound to an array; each quantifier adds an axis."""

    def __init__(self, B: int, p: int, fast: bool):
        self.B = B
        self.p = p
        self.fast = fast

    def term(self, t, env, nd):
        if isinstance(t, Zero):
            return np.zeros((1,) * nd, dtype=np.int64)
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise UnboundVariable(t.name) from None
        if isinstance(t, Succ):
            return self.term(t.t, env, nd) + 1
        if isinstance(t, Add):
            return self.term(t.t, env, nd) + self.term(t.s, env, nd)
        return _vp_array(self.term(t.t, env, nd), self.p)

    def var(self, x, env):
        try:
            return env[x]
        except KeyError:
            raise UnboundVariable(x) from None

    def formula(self, phi, env, nd):
        if isinstance(phi, Eq):
            return self.term(phi.t, env, nd) == self.term(phi.s, env, nd)
        if isinstance(phi, VarEq):
            return self.var(phi.x, env) == self.var(phi.y, env)
        if isinstance(phi, SuccEq):
            return self.var(phi.x, env) + 1 == self.var(phi.y, env)
        if isinstance(phi, AddEq):
            return self.var(phi.x, env) + self.var(phi.y, env) == self.var(phi.z, env)
        if isinstance(phi, VpEq):
            return _vp_array(self.var(phi.x, env), self.p) == self.var(phi.y, env)
        if isinstance(phi, Not):
            return ~self.formula(phi.phi, env, nd)
        if isinstance(phi, (And, Or, Imp, Iff)):
            a = self.formula(phi.phi, env, nd)
            b = self.formula(phi.psi, env, nd)
            if isinstance(phi, And):
                return a & b
            if isinstance(phi, Or):
                return a | b
            if isinstance(phi, Imp):
                return ~a | b
            return a == b
        if isinstance(phi, (Exists, Forall)):
            if self.fast and isinstance(phi, Exists):
                solved = self.one_point(phi.var, phi.phi, env, nd)
                if solved is not None:
                    return solved
            inner = {k: v[..., None] for k, v in env.items()}
            inner[phi.var] = np.arange(self.B + 1, dtype=np.int64).reshape((1,) * nd + (-1,))
            body = self.formula(phi.phi, inner, nd + 1)
            body = np.broadcast_to(body, np.broadcast_shapes(body.shape, inner[phi.var].shape))
            return body.any(axis=-1) if isinstance(phi, Exists) else body.all(axis=-1)
        raise TypeError(f"not a formula: {phi!r}")

    # E u. E v. ... (c & ...): solve each bound variable from a conjunct that pins it
    # to a function of already known values instead of scanning [0, B]

    def one_point(self, u, body, env, nd):
        block = [u]
        while isinstance(body, Exists) and body.var not in block:
            block.append(body.var)
            body = body.phi
        conjuncts = _split_and(body)
        # (E w. f) & g  ==  E w. (f & g)  when w is not free in g
        moved = True
        while moved:
            moved = False
            for i, c in enumerate(conjuncts):
                if not isinstance(c, Exists) or c.var in block:
                    continue
                if any(c.var in free_vars(d) for j, d in enumerate(conjuncts) if j != i):
                    continue
                block.append(c.var)
                conjuncts = conjuncts[:i] + conjuncts[i + 1 :] + _split_and(c.phi)
                moved = True
                break
        inner = dict(env)
        pending = list(block)
        ok = None
        progress = True
        while pending and progress:
            progress = False
            for v in pending:
                for i, c in enumerate(conjuncts):
                    others = _atom_vars(c)
                    if others is None or v not in others:
                        continue
                    if any(w in pending for w in others - {v}):
                        continue
                    val = self.isolate(c, v, inner, nd)
                    if val is None:
                        continue
                    # names made by flatten denote term values, which exist whatever B is
                    fits = (val >= 0) if v.startswith("#") else (val >= 0) & (val <= self.B)
                    ok = fits if ok is None else ok & fits
                    inner[v] = np.maximum(val, 0)
                    del conjuncts[i]
                    pending.remove(v)
                    progress = True
                    break
                if progress:
                    break
        if ok is None:
            return None
        if conjuncts:
            rest = conjuncts[0]
            for c in conjuncts[1:]:
                rest = And(rest, c)
            for v in reversed(pending):
                rest = Exists(v, rest)
            ok = ok & self.formula(rest, inner, nd)
        # with no conjuncts left, unsolved variables range over the nonempty 0..B
        return ok

    def isolate(self, c, u, env, nd):
        """Value forced on u by atom c (negative when there is none), or None."""
        ev = lambda t: self.term(t, env, nd)  # noqa: E731
        get = lambda x: self.var(x, env)  # noqa: E731
        if _zero_pin(c) == u:
            # for u in 0..B, no w in 0..B has S(w) = u exactly when u = 0
            return np.zeros((1,) * nd, dtype=np.int64)
        if isinstance(c, Eq):
            for lhs, rhs in ((c.t, c.s), (c.s, c.t)):
                if u in term_vars(rhs):
                    continue
                if lhs == Var(u):
                    return ev(rhs)
                if isinstance(lhs, Succ) and lhs.t == Var(u):
                    return ev(rhs) - 1
                if isinstance(lhs, Add):
                    for a, b in ((lhs.t, lhs.s), (lhs.s, lhs.t)):
                        if a == Var(u) and u not in term_vars(b):
                            return ev(rhs) - ev(b)
            return None
        if isinstance(c, VarEq) and u in c.args and c.x != c.y:
            return get(c.y if c.x == u else c.x)
        if isinstance(c, SuccEq) and u in c.args and c.x != c.y:
            return get(c.x) + 1 if c.y == u else get(c.y) - 1
        if isinstance(c, AddEq) and list(c.args).count(u) == 1:
            if c.z == u:
                return get(c.x) + get(c.y)
            other = c.y if c.x == u else c.x
            return get(c.z) - get(other)
        if isinstance(c, VpEq) and c.y == u and c.x != u:
            return _vp_array(get(c.x), self.p)
        return None


def _split_and(f):
    out = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, And):
            stack.extend([g.psi, g.phi])
        else:
            out.append(g)
    return out


def _zero_pin(c):
    """v if c is ``!E w. S(w) = v`` (the flat spelling of v = 0), else None."""
    if isinstance(c, Not) and isinstance(c.phi, Exists):
        inner = c.phi.phi
        if isinstance(inner, SuccEq) and inner.x == c.phi.var and inner.y != inner.x:
            return inner.y
    return None


def _atom_vars(c):
    if _zero_pin(c) is not None:
        return {_zero_pin(c)}
    if isinstance(c, Eq):
        return term_vars(c.t) | term_vars(c.s)
    if isinstance(c, (VarEq, SuccEq, AddEq, VpEq)):
        return set(c.args)
    return None


def bounded_eval(phi, env: Dict[str, int], B: int, p: int = 2, fast: bool = True) -> bool:
    """Truth of phi under env with every quantifier ranging over 0..B.

    This agrees with the standard model only when every witness and
    counterexample the evaluation needs is at most B.
    """
    arrays = {k: np.asarray(v, dtype=np.int64) for k, v in env.items()}
    return bool(_Evaluator(B, p, fast).formula(phi, arrays, 0))


def bounded_eval_many(phi, var: str, values, B: int, p: int = 2, fast: bool = True, chunk: int = 256) -> np.ndarray:
    """``bounded_eval(phi, {var: n}, B, p)`` for every n in values (one free variable)."""
    values = np.asarray(values, dtype=np.int64).reshape(-1)
    ev = _Evaluator(B, p, fast)
    out = np.empty(values.shape[0], dtype=bool)
    for start in range(0, len(values), chunk):
        block = values[start : start + chunk]
        res = ev.formula(phi, {var: block}, 1)
        out[start : start + chunk] = np.broadcast_to(res, block.shape)
    return out


def accepts_numbers(cf: CompiledFormula, values) -> np.ndarray:
    """Automaton membership of each number for a one-variable compiled formula."""
    return fa.accepts_tuples(cf.automaton, np.asarray(values, dtype=np.int64).reshape(-1, 1))


def solutions_oracle(phi, p: int, limit: int, B: int) -> List[int]:
    var = _one_var(phi)
    ns = np.arange(limit + 1)
    return [int(n) for n in ns[bounded_eval_many(phi, var, ns, B, p)]]
