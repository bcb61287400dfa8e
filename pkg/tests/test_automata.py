import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from buchi import automata as fa
from buchi.automata import Automaton, ArityError, letter_index
from buchi.base_automata import add_automaton, eq_automaton, v_automaton
from buchi.encoding import DigitWord, v_p, value, zip_pad


def simulate(M, word):
    """Reference acceptance: plain set simulation over letter indices."""
    current = set(M.initial)
    succ = M._succ3()
    for a in word:
        current = {int(r) for q in current for r in succ[q, a] if r >= 0}
    return any(M.accepting[q] for q in current)


def words_of(p, k, rng, count=500, max_len=8):
    return [list(w) for batch in fa.random_words(p, k, count, max_len, rng) for w in batch]


@st.composite
def dfas(draw, max_states=5):
    p = draw(st.sampled_from([2, 3]))
    k = draw(st.integers(0, 2))
    n = draw(st.integers(1, max_states))
    delta = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=p**k, max_size=p**k), min_size=n, max_size=n))
    acc = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    return Automaton.dfa(p, k, delta, 0, acc)


@st.composite
def nfas(draw, max_states=4):
    p = draw(st.sampled_from([2, 3]))
    k = draw(st.integers(1, 2))
    n = draw(st.integers(1, max_states))
    letters = list(itertools.product(range(p), repeat=k))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.sampled_from(letters), st.integers(0, n - 1)), max_size=12))
    init = draw(st.sets(st.integers(0, n - 1), min_size=1))
    acc = draw(st.sets(st.integers(0, n - 1)))
    return Automaton.from_transitions(p, k, n, edges, init, acc)


def agree(M, reference, rng, count=500):
    for w in words_of(M.base, M.tracks, rng, count):
        assert fa.accepts(M, [fa.letter_tuple(a, M.base, M.tracks) for a in w]) == reference(w), w


@given(dfas())
@settings(max_examples=60, deadline=None)
def test_complement(M):
    rng = np.random.default_rng(0)
    C = fa.complement(M)
    agree(C, lambda w: not simulate(M, w), rng, 100)
    assert fa.is_empty(fa.intersect(M, C))


@given(dfas(), st.data())
@settings(max_examples=60, deadline=None)
def test_intersect_union(M0, data):
    M1 = data.draw(dfas().filter(lambda M: M.base == M0.base and M.tracks == M0.tracks))
    rng = np.random.default_rng(1)
    agree(fa.intersect(M0, M1), lambda w: simulate(M0, w) and simulate(M1, w), rng, 100)
    agree(fa.union(M0, M1), lambda w: simulate(M0, w) or simulate(M1, w), rng, 100)


@given(nfas())
@settings(max_examples=80, deadline=None)
def test_determinize(N):
    rng = np.random.default_rng(2)
    D = fa.determinize(N)
    assert D.deterministic and D.delta.ndim == 2
    assert (D.delta >= 0).all() and D.delta.max() < D.n_states
    assert D.n_states <= 2**N.n_states
    agree(D, lambda w: simulate(N, w), rng, 100)


@given(dfas())
@settings(max_examples=80, deadline=None)
def test_minimize(M):
    rng = np.random.default_rng(3)
    m = fa.minimize(M)
    agree(m, lambda w: simulate(M, w), rng, 100)
    assert m.n_states <= M.n_states
    mm = fa.minimize(m)
    assert mm.n_states == m.n_states and np.array_equal(mm.delta, m.delta)
    assert np.array_equal(mm.accepting, m.accepting)


@given(dfas(max_states=4))
@settings(max_examples=60, deadline=None)
def test_minimize_is_minimal(M):
    # Myhill-Nerode by brute force: states distinguished by some word of length < n
    m = fa.minimize(M)
    L = m.n_letters
    sigs = set()
    for q in range(m.n_states):
        sig = []
        for length in range(m.n_states + 1):
            for w in itertools.product(range(L), repeat=length):
                r = q
                for a in w:
                    r = m.delta[r, a]
                sig.append(bool(m.accepting[r]))
        sigs.add(tuple(sig))
    assert len(sigs) == m.n_states


def test_cylindrify_project_examples():
    eq = eq_automaton(2)
    C = fa.cylindrify(eq, [0, 1], 3)
    assert fa.accepts(C, [(1, 1, 0)]) == fa.accepts(eq, [(1, 1)])
    assert fa.accepts(C, [(1, 1, 1), (0, 0, 1)])
    assert not fa.accepts(C, [(1, 0, 0)])
    rng = np.random.default_rng(4)
    for _ in range(500):
        n, m, r = (int(v) for v in rng.integers(0, 50, size=3))
        assert fa.accepts(C, zip_pad((n, m, r), 2)) == (n == m)
    with pytest.raises(ValueError):
        fa.cylindrify(eq, [0, 0], 3)
    with pytest.raises(ValueError):
        fa.cylindrify(eq, [0, 3], 3)


def test_project_examples():
    E = fa.determinize(fa.zero_saturate(fa.project(eq_automaton(3), 1)))
    assert E.tracks == 1
    assert all(fa.accepts(E, digits) for digits in (zip_pad((n,), 3) for n in range(200)))
    for p in (2, 3, 5):
        R = fa.determinize(fa.zero_saturate(fa.project(v_automaton(p), 0)))
        for n in range(1001):
            assert fa.accepts(R, zip_pad((n,), p)) == (v_p(n, p) == n), (p, n)
    zero = fa.project(fa.determinize(fa.project(eq_automaton(2), 1)), 0)
    assert zero.tracks == 0 and zero.n_letters == 1


def test_project_add_is_total():
    rng = np.random.default_rng(5)
    D = fa.determinize(fa.zero_saturate(fa.project(add_automaton(2), 2)))
    for w in words_of(2, 2, rng):
        assert fa.accepts(D, [fa.letter_tuple(a, 2, 2) for a in w])


@given(nfas())
@settings(max_examples=60, deadline=None)
def test_project_relation(N):
    # (q, a without track t, q') exists iff some digit at track t gives (q, a, q')
    P = fa.project(N, 0)
    p, k = N.base, N.tracks
    for q in range(N.n_states):
        for rest in itertools.product(range(p), repeat=k - 1):
            want = set()
            for d in range(p):
                a = letter_index((d,) + rest, p)
                want |= {int(r) for r in N._succ3()[q, a] if r >= 0}
            got = {int(r) for r in P._succ3()[q, letter_index(rest, p)] if r >= 0}
            assert got == want


def test_zero_saturate_examples():
    # E y. x + x = y at p = 2: y needs one more digit than x
    raw = fa.project(_double(), 1)
    sat = fa.zero_saturate(raw)
    one = zip_pad((1,), 2)
    assert not fa.accepts(raw, one)
    assert fa.accepts(sat, one)
    again = fa.zero_saturate(sat)
    assert np.array_equal(again.accepting, sat.accepting)
    eq = eq_automaton(2)
    assert np.array_equal(fa.zero_saturate(eq).accepting, eq.accepting)


def _double():
    # {(x, y) : x + x = y}: the add automaton with its two summand tracks tied together
    A = add_automaton(2)
    tied = [letter_index((a, a, b), 2) for b in range(2) for a in range(2)]
    return Automaton.dfa(2, 2, A.delta[:, tied], 0, A.accepting)


def test_double_relation():
    D = _double()
    for x in range(64):
        for y in range(130):
            assert fa.accepts(D, zip_pad((x, y), 2)) == (2 * x == y)


@given(dfas())
@settings(max_examples=60, deadline=None)
def test_shortest_and_least(M):
    w = fa.shortest_accepted(M)
    if fa.is_empty(M):
        assert w is None and fa.least_accepted(M) is None
        return
    # pigeonhole: a shortest accepted word never repeats a state
    assert len(w) < M.n_states
    assert fa.accepts(M, w)
    # no accepted word is shorter, and w is lexicographically least among its length
    same = [u for u in fa.enumerate_words(M, len(w)) if len(u) <= len(w)]
    assert min(len(u) for u in same) == len(w)
    assert w.letters == min(u.letters for u in same if len(u) == len(w))
    least = fa.least_accepted(M)
    assert len(least) == len(w) and fa.accepts(M, least)
    msb = lambda u: tuple(reversed(u.letters))  # noqa: E731
    assert msb(least) == min(msb(u) for u in same if len(u) == len(w))


def test_shortest_examples():
    assert fa.shortest_accepted(eq_automaton(2)).letters == ()
    one = fa.determinize(fa.zero_saturate(fa.project(v_automaton(2), 0)))
    assert fa.shortest_accepted(one).letters == ()


def test_least_accepted_is_numeric_minimum():
    # {5, 6} at p = 2: 5 = (1,0,1), 6 = (0,1,1); lexicographic LSB-first order prefers 6
    words = [zip_pad((5,), 2), zip_pad((6,), 2)]
    trans = []
    n = 0
    for w in words:
        q = 0
        for i, a in enumerate(w.letters):
            n += 1
            trans.append((q, a, n))
            q = n
        trans.append((q, (0,), q))
    acc = {n, n - 3}
    N = Automaton.from_transitions(2, 1, n + 1, trans, [0], acc)
    assert value(fa.shortest_accepted(N)) == (6,)
    assert value(fa.least_accepted(N)) == (5,)


def test_enumerate_words():
    E = eq_automaton(2)
    words = fa.enumerate_words(E, 2)
    assert [w.letters for w in words] == [(), ((0, 0),), ((1, 1),), ((0, 0), (0, 0)), ((0, 0), (1, 1)), ((1, 1), (0, 0)), ((1, 1), (1, 1))]


def test_arity_errors():
    E = eq_automaton(2)
    with pytest.raises(ArityError):
        fa.accepts(E, DigitWord(2, 1, ((1,),)))
    with pytest.raises(ArityError):
        fa.accepts(E, [(0, 2)])
    with pytest.raises(ValueError):
        fa.intersect(E, add_automaton(2))
    with pytest.raises(ValueError):
        fa.minimize(fa.project(E, 0))


def test_accepts_tuples_matches_accepts():
    A = add_automaton(3)
    rng = np.random.default_rng(6)
    rows = rng.integers(0, 60, size=(300, 3))
    rows[:100, 2] = rows[:100, 0] + rows[:100, 1]
    got = fa.accepts_tuples(A, rows)
    assert list(got) == [fa.accepts(A, zip_pad(tuple(int(v) for v in r), 3)) for r in rows]


@given(dfas())
@settings(max_examples=40, deadline=None)
def test_serialization_roundtrip(M):
    text = fa.dumps(M)
    again = fa.loads(text)
    assert again.base == M.base and again.tracks == M.tracks
    assert np.array_equal(again.delta, M.delta) and np.array_equal(again.accepting, M.accepting)
    assert fa.dumps(again) == text


@given(nfas())
@settings(max_examples=40, deadline=None)
def test_serialization_roundtrip_nfa(N):
    again = fa.loads(fa.dumps(N))
    rng = np.random.default_rng(7)
    agree(again, lambda w: simulate(N, w), rng, 50)


def test_dot():
    E = eq_automaton(2)
    dot = fa.to_dot(E, track_names=("x", "y"))
    assert dot.startswith("digraph automaton {") and dot.rstrip().endswith("}")
    assert 'q0 [shape=doublecircle' in dot and "q1" not in dot
    assert 'q0 -> q0 [label="(0,0) (1,1)"]' in dot
    full = fa.to_dot(E, elide_dead=False)
    assert "q1 [shape=circle" in full
    assert fa.to_dot(E) == fa.to_dot(E)


def test_immutability():
    E = eq_automaton(2)
    with pytest.raises(ValueError):
        E.delta[0, 0] = 1
