"""DFAs for the four atomic relations x = y, S(x) = y, x + y = z and V_p(x) = y.

Each one reads least significant digits first, is complete (the dead state is
counted), and accepts a word exactly when it accepts the word with trailing
zero letters appended.
"""
from __future__ import annotations

import numpy as np

from .automata import Automaton, digit_table


def eq_automaton(p: int) -> Automaton:
    """{(n, n)}: state 0 = equal so far, state 1 = dead."""
    d = digit_table(p, 2)
    same = d[:, 0] == d[:, 1]
    delta = np.stack([np.where(same, 0, 1), np.ones(p * p, dtype=np.int64)])
    return Automaton.dfa(p, 2, delta, 0, [True, False])


def _carry_automaton(p: int, k: int, carry_in: int) -> Automaton:
    # tracks 0..k-2 are summands, track k-1 the sum; states: carry 0, carry 1, dead
    d = digit_table(p, k)
    s = d[:, :-1].sum(axis=1)
    delta = np.full((3, p**k), 2, dtype=np.int64)
    for c in (0, 1):
        total = s + c
        ok = total % p == d[:, -1]
        delta[c] = np.where(ok, total // p, 2)
    return Automaton.dfa(p, k, delta, carry_in, [True, False, False])


def succ_automaton(p: int) -> Automaton:
    """{(n, n + 1)}: addition of the constant 1 as an initial carry."""
    return _carry_automaton(p, 2, carry_in=1)


def add_automaton(p: int) -> Automaton:
    """{(a, b, c) : a + b = c} by carry propagation."""
    return _carry_automaton(p, 3, carry_in=0)


def v_automaton(p: int) -> Automaton:
    """{(n, V_p(n))}.

    State 0 reads the common low zeros; the first nonzero digit of n must sit
    under the single digit 1 of V_p(n) (state 1), after which V_p(n) is all
    zeros.  State 2 is dead.
    """
    d = digit_table(p, 2)
    x, y = d[:, 0], d[:, 1]
    delta = np.full((3, p * p), 2, dtype=np.int64)
    delta[0, (x == 0) & (y == 0)] = 0
    delta[0, (x != 0) & (y == 1)] = 1
    delta[1, y == 0] = 1
    return Automaton.dfa(p, 2, delta, 0, [True, True, False])


BASE_AUTOMATA = {
    "eq": eq_automaton,
    "succ": succ_automaton,
    "add": add_automaton,
    "v": v_automaton,
}
