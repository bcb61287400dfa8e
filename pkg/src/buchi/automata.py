"""Finite automata over the alphabet ``{0..p-1}**k`` of k-track digit letters.

A letter ``(d_0, ..., d_{k-1})`` is stored as the index ``sum(d_i * p**i)``.
Transition tables are numpy arrays:

* deterministic: ``delta[q, a]`` is the successor, shape ``(n, p**k)``, total;
* nondeterministic: ``delta[q, a, j]`` lists successors, shape ``(n, p**k, r)``,
  with ``-1`` marking an unused slot.

Automata are immutable; every operation returns a new one.
"""
from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence

import numpy as np

from .encoding import DigitWord


class ArityError(ValueError):
    """Base or track count of two operands (or of an automaton and a word) differ."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def digit_table(p: int, k: int) -> np.ndarray:
    """``table[a, i]`` is digit i of letter index a."""
    idx = np.arange(p**k, dtype=np.int64)
    cols = [(idx // p**i) % p for i in range(k)]
    table = np.stack(cols, axis=1) if cols else np.zeros((1, 0), dtype=np.int64)
    return _frozen(table)


def letter_index(letter: Sequence[int], p: int) -> int:
    return sum(int(d) * p**i for i, d in enumerate(letter))


def letter_tuple(a: int, p: int, k: int):
    return tuple(int(d) for d in digit_table(p, k)[a])


@lru_cache(maxsize=None)
def lex_order(p: int, k: int) -> np.ndarray:
    """Letter indices sorted by the tuple order (d_0 first)."""
    table = digit_table(p, k)
    if k == 0:
        return _frozen(np.zeros(1, dtype=np.int64))
    return _frozen(np.lexsort(table.T[::-1]))


class Automaton:
    """A k-track automaton over base-p digits (see module docstring for layout)."""

    __slots__ = ("base", "tracks", "delta", "initial", "accepting")

    def __init__(self, base: int, tracks: int, delta, initial: Iterable[int], accepting):
        delta = np.asarray(delta, dtype=np.int64)
        n = delta.shape[0]
        if base < 2:
            raise ValueError("base must be >= 2")
        if delta.ndim not in (2, 3) or delta.shape[1] != base**tracks:
            raise ValueError(f"transition table shape {delta.shape} does not fit {base}**{tracks} letters")
        if delta.size and (delta.max() >= n or delta.min() < (0 if delta.ndim == 2 else -1)):
            raise ValueError("transition target out of range")
        acc = np.zeros(n, dtype=bool)
        if isinstance(accepting, (set, frozenset)):
            accepting = sorted(accepting)
        accepting = np.asarray(accepting)
        if accepting.dtype == bool:
            acc[:] = accepting
        else:
            acc[accepting.astype(np.int64)] = True
        initial = frozenset(int(q) for q in initial)
        if any(q < 0 or q >= n for q in initial):
            raise ValueError("initial state out of range")
        if delta.ndim == 2 and len(initial) != 1:
            raise ValueError("a deterministic automaton has exactly one initial state")
        self.base = base
        self.tracks = tracks
        self.delta = _frozen(delta)
        self.initial = initial
        self.accepting = _frozen(acc)

    @classmethod
    def dfa(cls, base, tracks, delta, initial: int, accepting):
        return cls(base, tracks, delta, [initial], accepting)

    @classmethod
    def from_transitions(cls, base, tracks, n_states, transitions, initial, accepting):
        """Build a (possibly partial) FA from ``(q, letter_tuple, q')`` triples."""
        succ = [[[] for _ in range(base**tracks)] for _ in range(n_states)]
        for q, letter, r in transitions:
            succ[q][letter_index(letter, base)].append(r)
        width = max([1] + [len(s) for row in succ for s in row])
        delta = np.full((n_states, base**tracks, width), -1, dtype=np.int64)
        for q, row in enumerate(succ):
            for a, s in enumerate(row):
                delta[q, a, : len(s)] = sorted(s)
        return cls(base, tracks, delta, initial, accepting)

    # -- basic facts

    @property
    def deterministic(self) -> bool:
        return self.delta.ndim == 2

    @property
    def n_states(self) -> int:
        return self.delta.shape[0]

    @property
    def n_letters(self) -> int:
        return self.base**self.tracks

    @property
    def initial_state(self) -> int:
        if not self.deterministic:
            raise ValueError("a nondeterministic automaton has no single initial state")
        return next(iter(self.initial))

    def accepting_states(self) -> frozenset:
        return frozenset(int(q) for q in np.flatnonzero(self.accepting))

    def __repr__(self):
        kind = "DFA" if self.deterministic else "FA"
        return f"<{kind} base={self.base} tracks={self.tracks} states={self.n_states}>"

    def _succ3(self) -> np.ndarray:
        """Transition table in the nondeterministic layout."""
        return self.delta[:, :, None] if self.deterministic else self.delta


def _check_word(M: Automaton, word):
    if isinstance(word, DigitWord):
        if word.base != M.base or word.tracks != M.tracks:
            raise ArityError(f"word over base {word.base} with {word.tracks} tracks given to {M!r}")
        letters = word.letters
    else:
        letters = [tuple(a) for a in word]
        for a in letters:
            if len(a) != M.tracks or any(d < 0 or d >= M.base for d in a):
                raise ArityError(f"letter {a} does not fit {M!r}")
    return [letter_index(a, M.base) for a in letters]


def accepts(M: Automaton, word) -> bool:
    idx = _check_word(M, word)
    if M.deterministic:
        q = M.initial_state
        for a in idx:
            q = M.delta[q, a]
        return bool(M.accepting[q])
    current = set(M.initial)
    for a in idx:
        current = {int(r) for q in current for r in M.delta[q, a] if r >= 0}
    return any(M.accepting[q] for q in current)


def run_words(M: Automaton, words: np.ndarray) -> np.ndarray:
    """Acceptance of a batch of equal-length words given as letter indices, shape (N, L)."""
    words = np.asarray(words, dtype=np.int64)
    D = M if M.deterministic else determinize(M)
    states = np.full(words.shape[0], D.initial_state, dtype=np.int64)
    for i in range(words.shape[1]):
        states = D.delta[states, words[:, i]]
    return D.accepting[states]


def accepts_tuples(M: Automaton, tuples) -> np.ndarray:
    """``accepts(M, zip_pad(t))`` for every row t of an (N, k) array of naturals."""
    vals = np.asarray(tuples, dtype=np.int64).reshape(-1, M.tracks)
    D = M if M.deterministic else determinize(M)
    p = M.base
    lengths = np.zeros(vals.shape[0], dtype=np.int64)
    rest = vals.copy()
    for _ in range(64):
        nonzero = (rest > 0).any(axis=1)
        if not nonzero.any():
            break
        lengths += nonzero
        rest //= p
    out = np.zeros(vals.shape[0], dtype=bool)
    states = np.full(vals.shape[0], D.initial_state, dtype=np.int64)
    rest = vals.copy()
    weights = p ** np.arange(M.tracks, dtype=np.int64)
    for i in range(int(lengths.max(initial=0)) + 1):
        done = lengths == i
        out[done] = D.accepting[states[done]]
        letters = (rest % p) @ weights if M.tracks else np.zeros(len(rest), dtype=np.int64)
        states = D.delta[states, letters]
        rest //= p
    return out


# -- reachability ----------------------------------------------------------


def _explore(start: int, step):
    """Breadth-first closure of integer-coded states.

    ``step(codes)`` returns the successor codes, shape (len(codes), L).
    Returns (codes in discovery order, transition table over positions).
    """
    frontier = np.array([start], dtype=np.int64)
    seen = frontier.copy()
    order = [frontier]
    rows = []
    while frontier.size:
        nxt = step(frontier)
        rows.append(nxt)
        cand = np.unique(nxt)
        new = cand[~np.isin(cand, seen, assume_unique=True)]
        seen = np.union1d(seen, new)
        order.append(new)
        frontier = new
    codes = np.concatenate(order)
    table = np.concatenate(rows)
    sorter = np.argsort(codes)
    ids = sorter[np.searchsorted(codes, table, sorter=sorter)]
    return codes, ids


def trim(M: Automaton) -> Automaton:
    """Restrict a DFA to its reachable states."""
    _require_dfa(M, "trim")
    codes, delta = _explore(M.initial_state, lambda c: M.delta[c])
    return Automaton.dfa(M.base, M.tracks, delta, 0, M.accepting[codes])


def _require_dfa(M, what):
    if not M.deterministic:
        raise ValueError(f"{what} needs a deterministic automaton")


def _same_alphabet(M0, M1):
    if M0.base != M1.base or M0.tracks != M1.tracks:
        raise ArityError(f"alphabet mismatch: {M0!r} vs {M1!r}")


# -- Boolean operations ----------------------------------------------------


def complement(M: Automaton) -> Automaton:
    _require_dfa(M, "complement")
    return Automaton.dfa(M.base, M.tracks, M.delta, M.initial_state, ~M.accepting)


def intersect(M0: Automaton, M1: Automaton) -> Automaton:
    """Reachable part of the product automaton."""
    _require_dfa(M0, "intersect")
    _require_dfa(M1, "intersect")
    _same_alphabet(M0, M1)
    n1 = M1.n_states
    d0, d1 = M0.delta, M1.delta

    def step(codes):
        return d0[codes // n1] * n1 + d1[codes % n1]

    codes, delta = _explore(M0.initial_state * n1 + M1.initial_state, step)
    acc = M0.accepting[codes // n1] & M1.accepting[codes % n1]
    return Automaton.dfa(M0.base, M0.tracks, delta, 0, acc)


def union(M0: Automaton, M1: Automaton) -> Automaton:
    return complement(intersect(complement(M0), complement(M1)))


def determinize(M: Automaton, max_states: Optional[int] = None) -> Automaton:
    """Subset construction restricted to reachable subsets (the empty set is the dead state)."""
    n, L = M.n_states, M.n_letters
    succ = M._succ3()
    r = succ.shape[2]
    start = np.zeros(n, dtype=bool)
    start[list(M.initial)] = True
    subsets = [start]
    index = {np.packbits(start).tobytes(): 0}
    rows = []
    letter_rows = np.arange(L)[:, None]
    i = 0
    while i < len(subsets):
        members = np.flatnonzero(subsets[i])
        hit = np.zeros((L, n + 1), dtype=bool)
        if members.size:
            targets = succ[members].transpose(1, 0, 2).reshape(L, members.size * r)
            hit[letter_rows, np.where(targets < 0, n, targets)] = True
        hit = hit[:, :n]
        packed = np.packbits(hit, axis=1)
        uniq, inverse = np.unique(packed, axis=0, return_inverse=True)
        ids = np.empty(len(uniq), dtype=np.int64)
        for j, key in enumerate(uniq):
            b = key.tobytes()
            q = index.get(b)
            if q is None:
                q = index[b] = len(subsets)
                subsets.append(np.unpackbits(key, count=n).astype(bool))
                if max_states is not None and len(subsets) > max_states:
                    raise RuntimeError(f"subset construction exceeded {max_states} states")
            ids[j] = q
        rows.append(ids[inverse.reshape(-1)])
        i += 1
    delta = np.stack(rows)
    acc = np.array([bool((s & M.accepting).any()) for s in subsets])
    return Automaton.dfa(M.base, M.tracks, delta, 0, acc)


# -- track manipulation ----------------------------------------------------


def cylindrify(M: Automaton, track_map: Sequence[int], new_tracks: int) -> Automaton:
    """Extend to ``new_tracks`` tracks; old track i becomes new track ``track_map[i]``.

    The unmapped tracks are ignored by the result.
    """
    track_map = tuple(int(t) for t in track_map)
    if len(track_map) != M.tracks or len(set(track_map)) != len(track_map):
        raise ValueError(f"track map {track_map} is not an injection of {M.tracks} tracks")
    if any(t < 0 or t >= new_tracks for t in track_map):
        raise ValueError(f"track map {track_map} leaves range({new_tracks})")
    p = M.base
    table = digit_table(p, new_tracks)
    old = np.zeros(p**new_tracks, dtype=np.int64)
    for i, t in enumerate(track_map):
        old += table[:, t] * p**i
    delta = M.delta[:, old]
    return Automaton(p, new_tracks, delta, M.initial, M.accepting)


def project(M: Automaton, track: int) -> Automaton:
    """Erase one track from every transition; the result is nondeterministic."""
    if M.tracks < 1 or not 0 <= track < M.tracks:
        raise ValueError(f"cannot project track {track} of {M!r}")
    p, k = M.base, M.tracks
    low = p**track
    new = np.arange(p ** (k - 1), dtype=np.int64)
    digits = np.arange(p, dtype=np.int64)
    old = (new % low)[:, None] + digits[None, :] * low + (new // low)[:, None] * (low * p)
    succ = M._succ3()[:, old, :]  # (n, L', p, r)
    n = M.n_states
    delta = succ.reshape(n, p ** (k - 1), -1)
    return Automaton(p, k - 1, delta, M.initial, M.accepting)


def zero_saturate(M: Automaton) -> Automaton:
    """Accept also in every state that reaches acceptance on all-zero letters."""
    zero = M._succ3()[:, 0, :]
    acc = M.accepting.copy()
    while True:
        hit = np.where(zero >= 0, acc[np.where(zero >= 0, zero, 0)], False).any(axis=1)
        grown = acc | hit
        if (grown == acc).all():
            break
        acc = grown
    return Automaton(M.base, M.tracks, M.delta, M.initial, acc)


# -- minimization ----------------------------------------------------------


def canonical(M: Automaton) -> Automaton:
    """Renumber a DFA's reachable states in breadth-first, letter-index order."""
    _require_dfa(M, "canonical")
    order = {M.initial_state: 0}
    queue = deque([M.initial_state])
    while queue:
        q = queue.popleft()
        row = M.delta[q]
        _, first = np.unique(row, return_index=True)
        for j in np.sort(first):
            t = int(row[j])
            if t not in order:
                order[t] = len(order)
                queue.append(t)
    old = np.array(sorted(order, key=order.get), dtype=np.int64)
    remap = np.full(M.n_states, -1, dtype=np.int64)
    remap[old] = np.arange(len(old))
    return Automaton.dfa(M.base, M.tracks, remap[M.delta[old]], 0, M.accepting[old])


def minimize(M: Automaton) -> Automaton:
    """Minimal complete DFA by iterated partition refinement (Moore)."""
    _require_dfa(M, "minimize")
    M = trim(M)
    _, cls = np.unique(M.accepting, return_inverse=True)
    cls = cls.reshape(-1)
    count = cls.max() + 1
    while True:
        sig = np.concatenate([cls[:, None], cls[M.delta]], axis=1)
        _, new = np.unique(sig, axis=0, return_inverse=True)
        new = new.reshape(-1)
        new_count = new.max() + 1
        cls = new
        if new_count == count:
            break
        count = new_count
    reps = np.unique(cls, return_index=True)[1]
    delta = cls[M.delta[reps]]
    return canonical(Automaton.dfa(M.base, M.tracks, delta, cls[M.initial_state], M.accepting[reps]))


# -- queries ---------------------------------------------------------------


def _reachable_mask(M: Automaton) -> np.ndarray:
    succ = M._succ3()
    seen = np.zeros(M.n_states, dtype=bool)
    frontier = np.array(sorted(M.initial), dtype=np.int64)
    seen[frontier] = True
    while frontier.size:
        t = succ[frontier].reshape(-1)
        t = np.unique(t[t >= 0])
        frontier = t[~seen[t]]
        seen[frontier] = True
    return seen


def is_empty(M: Automaton) -> bool:
    return not (M.accepting & _reachable_mask(M)).any()


def coreachable(M: Automaton) -> np.ndarray:
    """Mask of states from which some accepting state is reachable."""
    succ = M._succ3().reshape(M.n_states, -1)
    live = M.accepting.copy()
    while True:
        safe = np.where(succ >= 0, succ, 0)
        grown = live | (live[safe] & (succ >= 0)).any(axis=1)
        if (grown == live).all():
            return live
        live = grown


def shortest_accepted(M: Automaton) -> Optional[DigitWord]:
    """Shortest accepted word; among those the least in letter-tuple lexicographic order."""
    D = M if M.deterministic else determinize(M)
    order = lex_order(D.base, D.tracks)
    start = D.initial_state
    parent = {start: None}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        if D.accepting[q]:
            letters = []
            while parent[q] is not None:
                q, a = parent[q]
                letters.append(letter_tuple(a, D.base, D.tracks))
            return DigitWord(D.base, D.tracks, tuple(reversed(letters)))
        for a in order:
            t = int(D.delta[q, a])
            if t not in parent:
                parent[t] = (q, int(a))
                queue.append(t)
    return None


def least_accepted(M: Automaton) -> Optional[DigitWord]:
    """Shortest accepted word that is least when read most significant letter first.

    For a padding-closed one-track automaton this encodes the least accepted
    number.
    """
    D = M if M.deterministic else determinize(M)
    order = lex_order(D.base, D.tracks)
    layers = [np.zeros(D.n_states, dtype=bool)]
    layers[0][D.initial_state] = True
    seen = layers[0].copy()
    while not (layers[-1] & D.accepting).any():
        nxt = np.zeros(D.n_states, dtype=bool)
        nxt[np.unique(D.delta[np.flatnonzero(layers[-1])])] = True
        if not (nxt & ~seen).any() and not (nxt & D.accepting).any():
            return None
        seen |= nxt
        layers.append(nxt)
    target = D.accepting.copy()
    letters = []
    for layer in reversed(layers[:-1]):
        members = np.flatnonzero(layer)
        for a in order:
            ok = target[D.delta[members, a]]
            if ok.any():
                letters.append(letter_tuple(int(a), D.base, D.tracks))
                target = np.zeros(D.n_states, dtype=bool)
                target[members[ok]] = True
                break
    return DigitWord(D.base, D.tracks, tuple(reversed(letters)))


def enumerate_words(M: Automaton, max_len: int) -> List[DigitWord]:
    """All accepted words of length <= max_len, by length then lexicographically."""
    D = M if M.deterministic else determinize(M)
    order = lex_order(D.base, D.tracks)
    live = coreachable(D)
    out = []
    layer = [((), D.initial_state)]
    for length in range(max_len + 1):
        out.extend(DigitWord(D.base, D.tracks, w) for w, q in layer if D.accepting[q])
        if length == max_len:
            break
        nxt = []
        for w, q in layer:
            for a in order:
                t = int(D.delta[q, a])
                if live[t]:
                    nxt.append((w + (letter_tuple(int(a), D.base, D.tracks),), t))
        layer = nxt
    return out


def equivalent_on(M0: Automaton, M1: Automaton, words: np.ndarray) -> bool:
    return bool((run_words(M0, words) == run_words(M1, words)).all())


def random_words(p: int, k: int, count: int, max_len: int, rng) -> List[np.ndarray]:
    """Random words grouped by length: a list of (count_i, length) letter-index arrays."""
    lengths = rng.integers(0, max_len + 1, size=count)
    return [rng.integers(0, p**k, size=(int((lengths == L).sum()), L)) for L in range(max_len + 1)]


# -- text formats ----------------------------------------------------------


def _label(letter) -> str:
    return "(" + ",".join(str(d) for d in letter) + ")"


def dead_states(M: Automaton) -> np.ndarray:
    return ~coreachable(M)


def to_dot(M: Automaton, name: str = "automaton", elide_dead: bool = True, track_names=None) -> str:
    """Graphviz text: one node per state, accepting states double-circled."""
    dead = dead_states(M) if elide_dead else np.zeros(M.n_states, dtype=bool)
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    if track_names:
        lines.append(f'  label="tracks: {", ".join(track_names)}";')
    for q in range(M.n_states):
        if dead[q]:
            continue
        shape = "doublecircle" if M.accepting[q] else "circle"
        lines.append(f'  q{q} [shape={shape}, label="{q}"];')
    for q in sorted(M.initial):
        lines.append(f"  __start -> q{q};")
    succ = M._succ3()
    for q in range(M.n_states):
        if dead[q]:
            continue
        edges = {}
        for a in lex_order(M.base, M.tracks):
            for t in succ[q, a]:
                if t >= 0 and not dead[t]:
                    edges.setdefault(int(t), []).append(_label(letter_tuple(int(a), M.base, M.tracks)))
        for t, labels in edges.items():
            lines.append(f'  q{q} -> q{t} [label="{" ".join(labels)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(M: Automaton) -> str:
    """Line-oriented serialization; stable across runs."""
    lines = [
        f"base {M.base}",
        f"tracks {M.tracks}",
        f"states {M.n_states}",
        f"deterministic {int(M.deterministic)}",
        "initial " + " ".join(str(q) for q in sorted(M.initial)),
        "accepting " + " ".join(str(int(q)) for q in np.flatnonzero(M.accepting)),
    ]
    succ = M._succ3()
    for q in range(M.n_states):
        for a in lex_order(M.base, M.tracks):
            for t in succ[q, a]:
                if t >= 0:
                    lines.append(f"{q} {_label(letter_tuple(int(a), M.base, M.tracks))} {int(t)}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> Automaton:
    header = {}
    triples = []
    for line in text.strip().splitlines():
        parts = line.split()
        if parts[0].isdigit():
            q, label, t = parts
            letter = tuple(int(d) for d in label.strip("()").split(",") if d != "")
            triples.append((int(q), letter, int(t)))
        else:
            header[parts[0]] = [int(x) for x in parts[1:]]
    p, k, n = header["base"][0], header["tracks"][0], header["states"][0]
    if header["deterministic"][0]:
        delta = np.full((n, p**k), -1, dtype=np.int64)
        for q, letter, t in triples:
            delta[q, letter_index(letter, p)] = t
        if (delta < 0).any():
            raise ValueError("deterministic automaton text has missing transitions")
        return Automaton.dfa(p, k, delta, header["initial"][0], header["accepting"])
    return Automaton.from_transitions(p, k, n, triples, header["initial"], header["accepting"])
